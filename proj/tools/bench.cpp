// bench: run incremental topological ordering experiments and write CSV.
//
//   bench run --source synth:1000,0.01 --algo ldfs --out ldfs.csv
//   bench sweep-noise --source snap:email-Eu-core-temporal.txt --c-values 0,0.5,1,2,4
//
// Options may also come from a key=value file passed with --config; flags on
// the command line win.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ltopo/bench.hpp"

namespace {

struct Options {
    std::string source = "synth:1000,0.01";
    std::string algo = "ldfs";
    double train_frac = 0.05;
    double test_frac = 0.5;
    double noise_c = 0.0;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::string out;
    std::string name;
};

constexpr int kCycleExit = 2;

std::filesystem::path data_dir() {
    const char* dir = std::getenv("BENCH_DATA_DIR");
    return dir ? std::filesystem::path(dir) : std::filesystem::path();
}

ltopo::ExperimentSpec make_spec(const Options& o, bool trials_given) {
    ltopo::ExperimentSpec spec;
    spec.source = ltopo::parse_source(o.source, o.seed, data_dir());
    spec.algo = ltopo::parse_algorithm(o.algo);
    spec.train_frac = o.train_frac;
    spec.test_frac = o.test_frac;
    spec.noise_c = o.noise_c;
    spec.trials = o.trials;
    // DFS II is randomized over its starting permutation; average 5 of them
    // unless told otherwise.
    if (spec.algo == ltopo::Algorithm::Dfs2 && !trials_given) {
        spec.trials = 5;
    }
    spec.rng_seed = o.seed;
    spec.output_path = o.out;
    spec.dataset_name = o.name;
    spec.validate();
    return spec;
}

// Writes rows to --out, or stdout. Returns the process exit code.
int finish(const std::vector<ltopo::ResultRow>& rows, const std::string& out) {
    if (out.empty()) {
        ltopo::write_csv(rows, std::cout);
    } else {
        ltopo::emit_csv(rows, out);
    }
    for (const auto& r : rows) {
        if (r.cycles_detected != 0) {
            std::cerr << "bench: " << r.algo << " reported a cycle on " << r.dataset
                      << " (trial " << r.trial << ")\n";
            return kCycleExit;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Incremental topological ordering benchmarks"};
    app.set_config("--config", "", "key=value defaults file");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--source", o.source, "snap:PATH or synth:N,P")->capture_default_str();
    app.add_option("--algo", o.algo, "ldfs, dfs1, dfs2 or ideal")
        ->check(CLI::IsMember({"ldfs", "dfs1", "dfs2", "ideal"}))
        ->capture_default_str();
    app.add_option("--train-frac", o.train_frac)->capture_default_str();
    app.add_option("--test-frac", o.test_frac)->capture_default_str();
    app.add_option("--noise-c", o.noise_c, "noise scale C")->capture_default_str();
    auto* trials_opt = app.add_option("--trials", o.trials, "trials (dfs2 defaults to 5)")
                           ->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "DAG-ification, noise and permutation seed")
        ->capture_default_str();
    app.add_option("--out", o.out, "CSV path (stdout if omitted)");
    app.add_option("--name", o.name, "dataset column override");

    auto* run = app.add_subcommand("run", "single experiment");

    auto* noise = app.add_subcommand("sweep-noise", "noise scale sweep");
    std::vector<double> c_values{0.0, 0.5, 1.0, 2.0, 4.0};
    std::size_t regenerations = 10;
    std::string summary_out;
    noise->add_option("--c-values", c_values)->delimiter(',')->capture_default_str();
    noise->add_option("--regenerations", regenerations)->check(CLI::PositiveNumber)
        ->capture_default_str();
    noise->add_option("--summary-out", summary_out, "mean/SD per C (stderr if omitted)");

    auto* train = app.add_subcommand("sweep-train", "training fraction sweep");
    std::vector<double> fractions{0.0, 0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
    train->add_option("--fractions", fractions)->delimiter(',')->capture_default_str();

    auto* density = app.add_subcommand("sweep-density", "synthetic density sweep");
    std::vector<double> p_values{0.01, 0.1, 0.5, 1.0};
    std::vector<std::string> algos{"ldfs", "dfs1", "dfs2"};
    density->add_option("--p-values", p_values)->delimiter(',')->capture_default_str();
    density->add_option("--algos", algos)->delimiter(',')->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        const bool trials_given = trials_opt->count() > 0;
        if (run->parsed()) {
            const auto spec = make_spec(o, trials_given);
            const auto stream = ltopo::prepare_stream(spec.source, spec.dataset_name);
            return finish(ltopo::run_on_stream(spec, stream), o.out);
        }
        if (noise->parsed()) {
            const auto spec = make_spec(o, true);
            const auto result = ltopo::run_noise_sweep(spec, c_values, regenerations);
            if (summary_out.empty()) {
                ltopo::write_summary_csv(result.summaries, std::cerr);
            } else {
                std::ofstream s(summary_out, std::ios::binary);
                if (!s) {
                    throw std::runtime_error("cannot write " + summary_out);
                }
                ltopo::write_summary_csv(result.summaries, s);
            }
            return finish(result.rows, o.out);
        }
        if (train->parsed()) {
            const auto spec = make_spec(o, trials_given);
            return finish(ltopo::run_training_sweep(spec, fractions), o.out);
        }
        if (density->parsed()) {
            auto spec = make_spec(o, trials_given);
            std::vector<ltopo::Algorithm> parsed;
            for (const auto& a : algos) {
                parsed.push_back(ltopo::parse_algorithm(a));
            }
            // Each algorithm gets its own trial count: dfs2 averages permutations.
            std::vector<ltopo::ResultRow> rows;
            for (auto a : parsed) {
                auto cell = spec;
                cell.algo = a;
                cell.trials = (a == ltopo::Algorithm::Dfs2 && !trials_given) ? 5 : o.trials;
                auto part = ltopo::run_density_sweep(cell, p_values, std::vector{a});
                rows.insert(rows.end(), part.begin(), part.end());
            }
            return finish(rows, o.out);
        }
    } catch (const std::exception& e) {
        std::cerr << "bench: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
