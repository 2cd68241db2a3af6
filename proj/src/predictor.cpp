#include "ltopo/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ltopo/oracle.hpp"

namespace ltopo {

namespace {

std::vector<std::int64_t> to_signed(const std::vector<std::uint64_t>& counts) {
    return {counts.begin(), counts.end()};
}

}  // namespace

PredictionSet PredictionSet::zeros(std::size_t n) {
    return {std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0), "zero"};
}

PredictionSet PredictionSet::exact(const Digraph& g) {
    return {to_signed(ancestor_edge_counts(g)), to_signed(descendant_edge_counts(g)), "exact"};
}

PredictionSet train_predictions(std::span<const EdgeEvent> training, std::size_t n) {
    Digraph g(n);
    for (const EdgeEvent& e : training) {
        if (e.source != e.target) {
            g.add_edge(e.source, e.target);
        }
    }
    PredictionSet preds = PredictionSet::exact(g);
    std::ostringstream name;
    name << "trained(" << training.size() << " events)";
    preds.provenance = name.str();
    return preds;
}

double prediction_error_sd(const PredictionSet& preds, std::span<const std::uint64_t> alpha) {
    const std::size_t n = preds.alpha.size();
    if (n == 0) {
        return 0.0;
    }
    double mean = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        mean += static_cast<double>(preds.alpha[v]) - static_cast<double>(alpha[v]);
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        const double d =
            static_cast<double>(preds.alpha[v]) - static_cast<double>(alpha[v]) - mean;
        var += d * d;
    }
    return std::sqrt(var / static_cast<double>(n));
}

PredictionSet add_noise(const PredictionSet& preds, double c, std::uint64_t seed,
                        const Digraph& g_final) {
    if (preds.size() != g_final.vertex_count()) {
        throw std::invalid_argument("prediction count does not match vertex count");
    }
    return add_noise(preds, c, seed, ancestor_edge_counts(g_final));
}

PredictionSet add_noise(const PredictionSet& preds, double c, std::uint64_t seed,
                        std::span<const std::uint64_t> alpha) {
    if (c < 0.0) {
        throw std::invalid_argument("noise scale must be nonnegative");
    }
    if (preds.size() != alpha.size()) {
        throw std::invalid_argument("prediction count does not match vertex count");
    }
    PredictionSet out = preds;
    std::ostringstream name;
    name << "noisy(C=" << c << ",seed=" << seed << ")";
    out.provenance = name.str();

    const double sd = c * prediction_error_sd(preds, alpha);
    if (sd <= 0.0) {
        return out;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sd);
    for (auto& a : out.alpha) {
        const double shifted = static_cast<double>(a) + noise(rng);
        a = std::max<std::int64_t>(0, std::llround(shifted));
    }
    return out;
}

std::uint64_t true_eta(const PredictionSet& preds, const Digraph& g_final) {
    return true_eta(preds.alpha, preds.delta, g_final);
}

std::vector<EdgeEvent> synthetic_dag_stream(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("edge probability must lie in [0, 1]");
    }
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(p);
    std::vector<EdgeEvent> events;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
            if (keep(rng)) {
                events.push_back({u, v, 0});
            }
        }
    }
    std::shuffle(events.begin(), events.end(), rng);
    for (std::size_t i = 0; i < events.size(); ++i) {
        events[i].timestamp = static_cast<std::int64_t>(i);
    }
    return events;
}

}  // namespace ltopo
