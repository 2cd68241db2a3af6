#include "ltopo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ltopo/baselines.hpp"
#include "ltopo/ideal.hpp"
#include "ltopo/ingest.hpp"
#include "ltopo/ldfs.hpp"
#include "ltopo/oracle.hpp"

namespace ltopo {

std::string_view to_string(Algorithm algo) {
    switch (algo) {
        case Algorithm::Ldfs: return "ldfs";
        case Algorithm::Dfs1: return "dfs1";
        case Algorithm::Dfs2: return "dfs2";
        case Algorithm::Ideal: return "ideal";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::Ldfs, Algorithm::Dfs1, Algorithm::Dfs2, Algorithm::Ideal}) {
        if (name == to_string(a)) {
            return a;
        }
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

StreamSource parse_source(std::string_view text, std::uint64_t seed,
                          const std::filesystem::path& data_dir) {
    if (text.starts_with("snap:")) {
        std::filesystem::path path(std::string(text.substr(5)));
        if (path.empty()) {
            throw std::invalid_argument("snap source needs a path");
        }
        if (path.is_relative() && !data_dir.empty()) {
            path = data_dir / path;
        }
        return SnapSource{path, seed};
    }
    if (text.starts_with("synth:")) {
        const std::string body(text.substr(6));
        const auto comma = body.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("synthetic source must look like synth:N,P");
        }
        SyntheticSource s;
        try {
            std::size_t used = 0;
            const std::string n_text = body.substr(0, comma);
            const std::string p_text = body.substr(comma + 1);
            s.n = std::stoul(n_text, &used);
            if (used != n_text.size()) {
                throw std::invalid_argument("n");
            }
            s.p = std::stod(p_text, &used);
            if (used != p_text.size()) {
                throw std::invalid_argument("p");
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("synthetic source must look like synth:N,P");
        }
        s.seed = seed;
        return s;
    }
    throw std::invalid_argument("source must start with snap: or synth:");
}

void ExperimentSpec::validate() const {
    if (trials == 0) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (train_frac < 0.0 || test_frac <= 0.0 || train_frac + test_frac > 1.0 + 1e-12) {
        throw std::invalid_argument("train/test fractions out of range");
    }
    if (noise_c < 0.0) {
        throw std::invalid_argument("noise_c must be nonnegative");
    }
    if (const auto* synth = std::get_if<SyntheticSource>(&source)) {
        if (synth->n == 0 || !(synth->p >= 0.0 && synth->p <= 1.0)) {
            throw std::invalid_argument("synthetic source needs n >= 1 and p in [0, 1]");
        }
    }
}

PreparedStream prepare_stream(const StreamSource& source, const std::string& name) {
    PreparedStream out;
    if (const auto* snap = std::get_if<SnapSource>(&source)) {
        Dataset d = dagify(parse_snap(snap->path), snap->seed, snap->path.stem().string());
        out.name = d.name;
        out.n = d.n;
        out.events = std::move(d.events);
    } else {
        const auto& synth = std::get<SyntheticSource>(source);
        std::ostringstream label;
        label << "synth-n" << synth.n << "-p" << synth.p << "-s" << synth.seed;
        out.name = label.str();
        out.n = synth.n;
        out.events = synthetic_dag_stream(synth.n, synth.p, synth.seed);
    }
    if (!name.empty()) {
        out.name = name;
    }
    return out;
}

namespace {

struct RunRecord {
    CostCounters costs;
    double wall_time_s = 0.0;
    std::uint64_t cycles = 0;
    std::uint64_t eta_hat = 0;
    std::uint64_t doublings = 0;
};

template <class Order>
RunRecord drive(Order& order, std::span<const EdgeEvent> edges) {
    RunRecord rec;
    const auto start = std::chrono::steady_clock::now();
    for (const EdgeEvent& e : edges) {
        if (order.insert(e.source, e.target) == InsertOutcome::CycleDetected) {
            rec.cycles = 1;
            break;
        }
    }
    const auto stop = std::chrono::steady_clock::now();
    rec.wall_time_s = std::chrono::duration<double>(stop - start).count();
    rec.costs = order.costs();
    return rec;
}

std::vector<std::int64_t> clamped(std::span<const std::int64_t> values, std::size_t cap) {
    std::vector<std::int64_t> out(values.begin(), values.end());
    for (auto& x : out) {
        x = std::min<std::int64_t>(x, static_cast<std::int64_t>(cap));
    }
    return out;
}

}  // namespace

std::vector<ResultRow> run_on_stream(const ExperimentSpec& spec, const PreparedStream& stream) {
    spec.validate();
    const std::string dataset = spec.dataset_name.empty() ? stream.name : spec.dataset_name;
    const std::size_t n = std::max<std::size_t>(stream.n, 1);

    const TrainTestSplit window = split(stream.events, spec.train_frac, spec.test_frac);
    const std::vector<EdgeEvent> test = deduplicate(window.test);
    const std::size_t capacity = std::max<std::size_t>(test.size(), 1);

    Digraph test_graph(n);
    for (const EdgeEvent& e : test) {
        test_graph.add_edge(e.source, e.target);
    }
    const auto alpha = ancestor_edge_counts(test_graph);
    const bool predicted = spec.algo == Algorithm::Ldfs || spec.algo == Algorithm::Ideal;
    const std::vector<std::uint64_t> delta =
        spec.algo == Algorithm::Ideal ? descendant_edge_counts(test_graph) : std::vector<std::uint64_t>{};
    const PredictionSet trained =
        predicted ? train_predictions(deduplicate(window.train), n) : PredictionSet::zeros(n);

    std::vector<ResultRow> rows;
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
        const std::uint64_t seed = spec.rng_seed + trial;
        PredictionSet preds = trained;
        if (predicted && spec.noise_c > 0.0) {
            preds = add_noise(trained, spec.noise_c, seed, alpha);
        }

        RunRecord rec;
        std::uint64_t eta = 0;
        switch (spec.algo) {
            case Algorithm::Ldfs: {
                LdfsOrder order(n, preds.alpha, capacity);
                rec = drive(order, test);
                eta = true_eta(clamped(preds.alpha, capacity), {}, alpha, {});
                break;
            }
            case Algorithm::Dfs1: {
                LdfsOrder order = make_dfs1(n, capacity);
                rec = drive(order, test);
                eta = true_eta(std::vector<std::int64_t>(n, 0), {}, alpha, {});
                break;
            }
            case Algorithm::Dfs2: {
                Dfs2Order order(n, seed);
                rec = drive(order, test);
                break;
            }
            case Algorithm::Ideal: {
                IdealOrder order(n, preds.alpha, preds.delta, capacity);
                rec = drive(order, test);
                rec.eta_hat = order.eta_hat();
                rec.doublings = order.stats().doublings;
                eta = true_eta(clamped(preds.alpha, capacity), clamped(preds.delta, capacity), alpha,
                               delta);
                break;
            }
        }

        ResultRow row;
        row.dataset = dataset;
        row.algo = std::string(to_string(spec.algo));
        row.train_frac = spec.train_frac;
        row.noise_c = spec.noise_c;
        row.trial = trial;
        row.cost_vertices = rec.costs.vertices_processed;
        row.cost_edges = rec.costs.edges_processed;
        row.cost_total = rec.costs.total();
        row.wall_time_s = rec.wall_time_s;
        row.cycles_detected = rec.cycles;
        row.distinct_edges = test.size();
        row.eta_true = eta;
        row.eta_hat_final = rec.eta_hat;
        row.doublings = rec.doublings;
        rows.push_back(std::move(row));
        if (rec.cycles != 0) {
            break;
        }
    }
    return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const PreparedStream stream = prepare_stream(spec.source, spec.dataset_name);
    std::vector<ResultRow> rows = run_on_stream(spec, stream);
    if (!spec.output_path.empty()) {
        emit_csv(rows, spec.output_path);
    }
    const bool cycled = std::any_of(rows.begin(), rows.end(),
                                    [](const ResultRow& r) { return r.cycles_detected != 0; });
    if (cycled) {
        throw ExperimentAborted("cycle reported on an acyclic stream (" + rows.back().dataset + ", " +
                                rows.back().algo + ")");
    }
    return rows;
}

std::vector<CostSummary> summarize(std::span<const ResultRow> rows) {
    std::vector<CostSummary> out;
    std::vector<std::vector<double>> samples;
    for (const ResultRow& r : rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const CostSummary& s) {
            return s.dataset == r.dataset && s.algo == r.algo && s.train_frac == r.train_frac &&
                   s.noise_c == r.noise_c;
        });
        if (it == out.end()) {
            out.push_back({r.dataset, r.algo, r.train_frac, r.noise_c, 0, 0.0, 0.0});
            samples.emplace_back();
            it = out.end() - 1;
        }
        samples[static_cast<std::size_t>(it - out.begin())].push_back(
            static_cast<double>(r.cost_total));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& xs = samples[i];
        double mean = 0.0;
        for (double x : xs) {
            mean += x;
        }
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs) {
            var += (x - mean) * (x - mean);
        }
        out[i].runs = xs.size();
        out[i].mean_cost_total = mean;
        out[i].sd_cost_total = std::sqrt(var / static_cast<double>(xs.size()));
    }
    return out;
}

SweepResult run_noise_sweep(ExperimentSpec spec, std::span<const double> c_values,
                            std::size_t regenerations) {
    spec.trials = regenerations;
    spec.validate();
    const PreparedStream stream = prepare_stream(spec.source, spec.dataset_name);
    SweepResult result;
    for (double c : c_values) {
        spec.noise_c = c;
        auto rows = run_on_stream(spec, stream);
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    result.summaries = summarize(result.rows);
    return result;
}

std::vector<ResultRow> run_training_sweep(ExperimentSpec spec, std::span<const double> fractions) {
    spec.validate();
    const PreparedStream stream = prepare_stream(spec.source, spec.dataset_name);
    std::vector<ResultRow> rows;
    for (double f : fractions) {
        spec.train_frac = f;
        auto part = run_on_stream(spec, stream);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

std::vector<ResultRow> run_density_sweep(ExperimentSpec spec, std::span<const double> p_values,
                                         std::span<const Algorithm> algos) {
    auto* synth = std::get_if<SyntheticSource>(&spec.source);
    if (synth == nullptr) {
        throw std::invalid_argument("density sweep needs a synthetic source");
    }
    std::vector<ResultRow> rows;
    for (double p : p_values) {
        synth->p = p;
        spec.validate();
        const PreparedStream stream = prepare_stream(spec.source, spec.dataset_name);
        for (Algorithm a : algos) {
            ExperimentSpec cell = spec;
            cell.algo = a;
            auto part = run_on_stream(cell, stream);
            rows.insert(rows.end(), part.begin(), part.end());
        }
    }
    return rows;
}

namespace {

std::string format_float(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

}  // namespace

void write_csv(std::span<const ResultRow> rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const ResultRow& r : rows) {
        out << r.dataset << ',' << r.algo << ',' << format_float(r.train_frac) << ','
            << format_float(r.noise_c) << ',' << r.trial << ',' << r.cost_vertices << ','
            << r.cost_edges << ',' << r.cost_total << ',' << format_float(r.wall_time_s) << ','
            << r.cycles_detected << ',' << r.distinct_edges << ',' << r.eta_true << ','
            << r.eta_hat_final << ',' << r.doublings << '\n';
    }
}

void emit_csv(std::span<const ResultRow> rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    write_csv(rows, out);
    if (!out) {
        throw std::runtime_error("error while writing " + path.string());
    }
}

std::vector<ResultRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("missing or unexpected CSV header");
    }
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 14) {
            throw std::runtime_error("CSV row has " + std::to_string(f.size()) + " fields: " + line);
        }
        ResultRow r;
        r.dataset = f[0];
        r.algo = f[1];
        r.train_frac = std::stod(f[2]);
        r.noise_c = std::stod(f[3]);
        r.trial = std::stoull(f[4]);
        r.cost_vertices = std::stoull(f[5]);
        r.cost_edges = std::stoull(f[6]);
        r.cost_total = std::stoull(f[7]);
        r.wall_time_s = std::stod(f[8]);
        r.cycles_detected = std::stoull(f[9]);
        r.distinct_edges = std::stoull(f[10]);
        r.eta_true = std::stoull(f[11]);
        r.eta_hat_final = std::stoull(f[12]);
        r.doublings = std::stoull(f[13]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_summary_csv(std::span<const CostSummary> summaries, std::ostream& out) {
    out << "dataset,algo,train_frac,noise_c,runs,mean_cost_total,sd_cost_total\n";
    for (const CostSummary& s : summaries) {
        out << s.dataset << ',' << s.algo << ',' << format_float(s.train_frac) << ','
            << format_float(s.noise_c) << ',' << s.runs << ',' << format_float(s.mean_cost_total)
            << ',' << format_float(s.sd_cost_total) << '\n';
    }
}

}  // namespace ltopo
