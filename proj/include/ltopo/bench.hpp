#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ltopo/graph.hpp"
#include "ltopo/predictor.hpp"

namespace ltopo {

enum class Algorithm { Ldfs, Dfs1, Dfs2, Ideal };

std::string_view to_string(Algorithm algo);
/// Accepts "ldfs", "dfs1", "dfs2", "ideal".
Algorithm parse_algorithm(std::string_view name);

struct SnapSource {
    std::filesystem::path path;
    std::uint64_t seed = 0;  // DAG-ification permutation
};

struct SyntheticSource {
    std::size_t n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

using StreamSource = std::variant<SnapSource, SyntheticSource>;

/// "snap:PATH" or "synth:N,P". Relative snap paths resolve against `data_dir`
/// when it is non-empty.
StreamSource parse_source(std::string_view text, std::uint64_t seed,
                          const std::filesystem::path& data_dir = {});

struct ExperimentSpec {
    StreamSource source;
    Algorithm algo = Algorithm::Ldfs;
    double train_frac = 0.05;
    double test_frac = 0.5;
    double noise_c = 0.0;
    std::size_t trials = 1;
    std::uint64_t rng_seed = 0;
    std::string output_path;   // empty: no CSV written
    std::string dataset_name;  // empty: derived from the source

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// One CSV row. cost_total = cost_vertices + cost_edges.
struct ResultRow {
    std::string dataset;
    std::string algo;
    double train_frac = 0.0;
    double noise_c = 0.0;
    std::size_t trial = 0;
    std::uint64_t cost_vertices = 0;
    std::uint64_t cost_edges = 0;
    std::uint64_t cost_total = 0;
    double wall_time_s = 0.0;
    std::uint64_t cycles_detected = 0;
    std::uint64_t distinct_edges = 0;
    std::uint64_t eta_true = 0;
    std::uint64_t eta_hat_final = 0;
    std::uint64_t doublings = 0;

    bool operator==(const ResultRow&) const = default;
};

/// A timestamp-ordered, acyclic event stream ready to be split.
struct PreparedStream {
    std::string name;
    std::size_t n = 0;
    std::vector<EdgeEvent> events;
};

PreparedStream prepare_stream(const StreamSource& source, const std::string& name = {});

/// Thrown when an algorithm reports a cycle on a stream that should be acyclic.
class ExperimentAborted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Runs `spec.trials` trials on an already prepared stream. Trial t uses seed
/// rng_seed + t for noise and for the DFS II starting permutation.
std::vector<ResultRow> run_on_stream(const ExperimentSpec& spec, const PreparedStream& stream);

/// Prepares the stream, runs every trial and, if output_path is set, writes the CSV.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

struct CostSummary {
    std::string dataset;
    std::string algo;
    double train_frac = 0.0;
    double noise_c = 0.0;
    std::size_t runs = 0;
    double mean_cost_total = 0.0;
    double sd_cost_total = 0.0;
};

/// Groups rows by (dataset, algo, train_frac, noise_c), in first-seen order.
std::vector<CostSummary> summarize(std::span<const ResultRow> rows);

struct SweepResult {
    std::vector<ResultRow> rows;
    std::vector<CostSummary> summaries;
};

/// For each C, `regenerations` noisy trials of spec.algo.
SweepResult run_noise_sweep(ExperimentSpec spec, std::span<const double> c_values,
                            std::size_t regenerations);

/// Fixed test window; one run per training fraction.
std::vector<ResultRow> run_training_sweep(ExperimentSpec spec, std::span<const double> fractions);

/// Synthetic streams at each edge probability, every listed algorithm.
/// spec.source must be a SyntheticSource; its p is overridden.
std::vector<ResultRow> run_density_sweep(ExperimentSpec spec, std::span<const double> p_values,
                                         std::span<const Algorithm> algos);

inline constexpr std::string_view kCsvHeader =
    "dataset,algo,train_frac,noise_c,trial,cost_vertices,cost_edges,cost_total,wall_time_s,"
    "cycles_detected,distinct_edges,eta_true,eta_hat_final,doublings";

void write_csv(std::span<const ResultRow> rows, std::ostream& out);
void emit_csv(std::span<const ResultRow> rows, const std::filesystem::path& path);
std::vector<ResultRow> parse_csv(std::istream& in);

void write_summary_csv(std::span<const CostSummary> summaries, std::ostream& out);

}  // namespace ltopo
