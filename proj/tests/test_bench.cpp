#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "ltopo/bench.hpp"

using namespace ltopo;

namespace {

ExperimentSpec synth_spec(Algorithm algo, double p = 0.05, std::size_t n = 200) {
    ExperimentSpec spec;
    spec.source = SyntheticSource{n, p, 3};
    spec.algo = algo;
    spec.train_frac = 0.05;
    spec.test_frac = 0.95;
    spec.rng_seed = 11;
    return spec;
}

ResultRow sample_row() {
    ResultRow r;
    r.dataset = "synth-n10-p0.5-s1";
    r.algo = "ideal";
    r.train_frac = 0.05;
    r.noise_c = 0.5;
    r.trial = 2;
    r.cost_vertices = 10;
    r.cost_edges = 32;
    r.cost_total = 42;
    r.wall_time_s = 0.00125;
    r.cycles_detected = 0;
    r.distinct_edges = 21;
    r.eta_true = 4;
    r.eta_hat_final = 8;
    r.doublings = 3;
    return r;
}

}  // namespace

TEST(ParseSource, Synthetic) {
    const auto s = parse_source("synth:300,0.1", 5);
    const auto& syn = std::get<SyntheticSource>(s);
    EXPECT_EQ(syn.n, 300u);
    EXPECT_DOUBLE_EQ(syn.p, 0.1);
    EXPECT_EQ(syn.seed, 5u);
}

TEST(ParseSource, SnapResolvesAgainstDataDir) {
    const auto s = parse_source("snap:email.txt", 1, "/data");
    EXPECT_EQ(std::get<SnapSource>(s).path, std::filesystem::path("/data/email.txt"));
    const auto abs = parse_source("snap:/x/email.txt", 1, "/data");
    EXPECT_EQ(std::get<SnapSource>(abs).path, std::filesystem::path("/x/email.txt"));
}

TEST(ParseSource, Malformed) {
    EXPECT_THROW(parse_source("synth:300", 0), std::invalid_argument);
    EXPECT_THROW(parse_source("synth:abc,0.1", 0), std::invalid_argument);
    EXPECT_THROW(parse_source("file:x", 0), std::invalid_argument);
}

TEST(ParseAlgorithm, RoundTrip) {
    for (Algorithm a : {Algorithm::Ldfs, Algorithm::Dfs1, Algorithm::Dfs2, Algorithm::Ideal}) {
        EXPECT_EQ(parse_algorithm(to_string(a)), a);
    }
    EXPECT_THROW(parse_algorithm("bfgt"), std::invalid_argument);
}

TEST(ExperimentSpec, Validation) {
    auto spec = synth_spec(Algorithm::Ldfs);
    spec.trials = 0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec = synth_spec(Algorithm::Ldfs);
    spec.train_frac = 0.6;
    spec.test_frac = 0.6;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec = synth_spec(Algorithm::Ldfs, 1.5);
    EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(RunExperiment, LdfsBeatsDfs1OnSparseSynthetic) {
    const auto ldfs = run_experiment(synth_spec(Algorithm::Ldfs, 0.01, 1000));
    const auto dfs1 = run_experiment(synth_spec(Algorithm::Dfs1, 0.01, 1000));
    ASSERT_EQ(ldfs.size(), 1u);
    ASSERT_EQ(dfs1.size(), 1u);
    EXPECT_LT(ldfs[0].cost_total, dfs1[0].cost_total);
    EXPECT_EQ(ldfs[0].cost_total, ldfs[0].cost_vertices + ldfs[0].cost_edges);
    EXPECT_EQ(ldfs[0].cycles_detected, 0u);
}

TEST(RunExperiment, NoTrainingEqualsDfs1) {
    auto spec = synth_spec(Algorithm::Ldfs);
    spec.train_frac = 0.0;
    const auto ldfs = run_experiment(spec);
    spec.algo = Algorithm::Dfs1;
    const auto dfs1 = run_experiment(spec);
    EXPECT_EQ(ldfs[0].cost_total, dfs1[0].cost_total);
}

TEST(RunExperiment, OneRowPerTrialAndDeterministic) {
    auto spec = synth_spec(Algorithm::Dfs2);
    spec.trials = 3;
    auto a = run_experiment(spec);
    auto b = run_experiment(spec);
    ASSERT_EQ(a.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(a[i].trial, i);
        a[i].wall_time_s = b[i].wall_time_s = 0.0;
    }
    EXPECT_EQ(a, b);
}

TEST(RunExperiment, DeterministicAlgorithmsIgnoreTrialSeed) {
    for (Algorithm algo : {Algorithm::Ldfs, Algorithm::Dfs1, Algorithm::Ideal}) {
        auto spec = synth_spec(algo);
        spec.trials = 2;
        const auto rows = run_experiment(spec);
        EXPECT_EQ(rows[0].cost_total, rows[1].cost_total) << to_string(algo);
    }
}

TEST(RunExperiment, IdealReportsEstimate) {
    const auto rows = run_experiment(synth_spec(Algorithm::Ideal));
    EXPECT_GE(rows[0].eta_hat_final, 1u);
    EXPECT_EQ(rows[0].cycles_detected, 0u);
    EXPECT_EQ(rows[0].eta_hat_final, std::uint64_t{1} << rows[0].doublings);
}

TEST(RunExperiment, WritesCsvWhenAsked) {
    auto spec = synth_spec(Algorithm::Ldfs);
    spec.output_path = (std::filesystem::temp_directory_path() / "ltopo_bench_test.csv").string();
    const auto rows = run_experiment(spec);
    std::ifstream in(spec.output_path);
    const auto back = parse_csv(in);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].cost_total, rows[0].cost_total);
    std::filesystem::remove(spec.output_path);
}

TEST(RunExperiment, SnapFixture) {
    ExperimentSpec spec;
    spec.source = SnapSource{std::filesystem::path(LTOPO_FIXTURE_DIR) / "tiny-temporal.txt", 4};
    spec.algo = Algorithm::Ldfs;
    spec.test_frac = 0.5;
    const auto rows = run_experiment(spec);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].dataset, "tiny-temporal");
}

TEST(RunExperiment, MissingDatasetIsAnError) {
    ExperimentSpec spec;
    spec.source = SnapSource{"/nonexistent/data.txt", 0};
    EXPECT_THROW(run_experiment(spec), std::runtime_error);
}

TEST(NoiseSweep, ZeroScaleEqualsNoNoiseRun) {
    auto spec = synth_spec(Algorithm::Ldfs);
    const std::vector<double> cs{0.0, 1.0};
    const auto sweep = run_noise_sweep(spec, cs, 3);
    ASSERT_EQ(sweep.rows.size(), 6u);
    const auto plain = run_experiment(spec);
    EXPECT_EQ(sweep.rows[0].cost_total, plain[0].cost_total);
    ASSERT_EQ(sweep.summaries.size(), 2u);
    EXPECT_EQ(sweep.summaries[0].runs, 3u);
    EXPECT_DOUBLE_EQ(sweep.summaries[0].sd_cost_total, 0.0);
}

TEST(TrainingSweep, ZeroFractionMatchesDfs1) {
    auto spec = synth_spec(Algorithm::Ldfs);
    const std::vector<double> fr{0.0, 0.05};
    const auto rows = run_training_sweep(spec, fr);
    ASSERT_EQ(rows.size(), 2u);
    spec.algo = Algorithm::Dfs1;
    const auto dfs1 = run_experiment(spec);
    EXPECT_EQ(rows[0].cost_total, dfs1[0].cost_total);
    EXPECT_DOUBLE_EQ(rows[1].train_frac, 0.05);
}

TEST(TrainingSweep, MoreTrainingDoesNotHurtMedianCost) {
    const std::vector<double> fr{0.0, 0.01, 0.02, 0.05};
    std::vector<std::vector<std::uint64_t>> costs(fr.size());
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto spec = synth_spec(Algorithm::Ldfs, 0.05, 300);
        std::get<SyntheticSource>(spec.source).seed = seed;
        const auto rows = run_training_sweep(spec, fr);
        for (std::size_t i = 0; i < fr.size(); ++i) {
            costs[i].push_back(rows[i].cost_total);
        }
    }
    std::vector<std::uint64_t> medians;
    for (auto& c : costs) {
        std::sort(c.begin(), c.end());
        medians.push_back(c[1]);
    }
    for (std::size_t i = 1; i < medians.size(); ++i) {
        EXPECT_LE(medians[i], medians[i - 1]) << "fraction " << fr[i];
    }
}

TEST(DensitySweep, EveryCell) {
    auto spec = synth_spec(Algorithm::Ldfs, 0.1, 60);
    const std::vector<double> ps{0.1, 0.5};
    const std::vector<Algorithm> algos{Algorithm::Ldfs, Algorithm::Dfs1};
    const auto rows = run_density_sweep(spec, ps, algos);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].algo, "ldfs");
    EXPECT_EQ(rows[1].algo, "dfs1");
    EXPECT_NE(rows[0].dataset, rows[2].dataset);
}

TEST(Summarize, MeanAndPopulationSd) {
    std::vector<ResultRow> rows(2, sample_row());
    rows[0].cost_total = 10;
    rows[1].cost_total = 20;
    const auto s = summarize(rows);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_DOUBLE_EQ(s[0].mean_cost_total, 15.0);
    EXPECT_DOUBLE_EQ(s[0].sd_cost_total, 5.0);
}

TEST(Csv, EmptyRowsWriteHeaderOnly) {
    std::ostringstream out;
    write_csv({}, out);
    EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n");
}

TEST(Csv, OneRowIsTwoLines) {
    std::ostringstream out;
    const std::vector<ResultRow> rows{sample_row()};
    write_csv(rows, out);
    EXPECT_EQ(out.str(), std::string(kCsvHeader) +
                             "\nsynth-n10-p0.5-s1,ideal,0.05,0.5,2,10,32,42,0.00125,0,21,4,8,3\n");
}

TEST(Csv, RoundTrip) {
    std::vector<ResultRow> rows{sample_row(), sample_row()};
    rows[1].algo = "dfs2";
    rows[1].noise_c = 4.0;
    rows[1].wall_time_s = 1.5;
    std::stringstream buf;
    write_csv(rows, buf);
    EXPECT_EQ(parse_csv(buf), rows);
}

TEST(Csv, FloatsUseSixSignificantDigits) {
    ResultRow r = sample_row();
    r.wall_time_s = 1.0 / 3.0;
    std::ostringstream out;
    write_csv(std::vector<ResultRow>{r}, out);
    EXPECT_NE(out.str().find(",0.333333,"), std::string::npos);
}

TEST(Csv, RejectsWrongHeader) {
    std::istringstream in("a,b,c\n");
    EXPECT_THROW(parse_csv(in), std::runtime_error);
}
