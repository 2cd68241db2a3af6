#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltopo/graph.hpp"

namespace ltopo {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Temporal edge list with ids densified in order of first appearance.
/// `original_ids[dense]` recovers the id from the file.
struct EdgeList {
    std::vector<EdgeEvent> events;
    std::vector<std::int64_t> original_ids;

    std::size_t vertex_count() const { return original_ids.size(); }
};

/// Reads "SRC DST TIMESTAMP" lines (space or tab separated). Lines starting
/// with '#' and blank lines are skipped; anything else malformed throws
/// ParseError carrying the 1-based line number.
EdgeList parse_snap(std::istream& in);
EdgeList parse_snap(const std::filesystem::path& path);

/// A DAG-ified, timestamp-sorted event stream. Duplicates are retained.
struct Dataset {
    std::string name;
    std::size_t n = 0;
    std::vector<EdgeEvent> events;
    std::vector<std::int64_t> original_ids;
};

/// Draws a uniform vertex permutation from `seed` and keeps only the events
/// going from a smaller to a larger position (self-loops dropped), then
/// stable-sorts by timestamp.
Dataset dagify(const EdgeList& edges, std::uint64_t seed, std::string name = {});

struct TrainTestSplit {
    std::vector<EdgeEvent> train;
    std::vector<EdgeEvent> test;
};

/// test = the last ceil(test_frac * N) events; train = the ceil(train_frac * N)
/// events right before it (truncated at the start of the stream).
TrainTestSplit split(std::span<const EdgeEvent> events, double train_frac, double test_frac);
TrainTestSplit split(const Dataset& d, double train_frac, double test_frac);

/// Distinct (source, target) pairs in order of first appearance; self-loops kept.
std::vector<EdgeEvent> deduplicate(std::span<const EdgeEvent> events);

}  // namespace ltopo
