#include "ltopo/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace ltopo {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_blank(line[i])) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && !is_blank(line[i])) {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

std::int64_t parse_int(std::string_view token, std::size_t line) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
    }
    return value;
}

std::size_t fraction_count(double frac, std::size_t total) {
    // Tolerate representation error so 0.05 * 100 is 5, not 6.
    const double raw = frac * static_cast<double>(total);
    return std::min(total, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
}

}  // namespace

EdgeList parse_snap(std::istream& in) {
    EdgeList out;
    std::unordered_map<std::int64_t, VertexId> dense;
    auto densify = [&](std::int64_t id) {
        auto [it, inserted] = dense.try_emplace(id, static_cast<VertexId>(out.original_ids.size()));
        if (inserted) {
            out.original_ids.push_back(id);
        }
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty() || tokens.front().front() == '#') {
            continue;
        }
        if (tokens.size() != 3) {
            throw ParseError(line_no, "expected 'SRC DST TIMESTAMP'");
        }
        const std::int64_t src = parse_int(tokens[0], line_no);
        const std::int64_t dst = parse_int(tokens[1], line_no);
        const std::int64_t t = parse_int(tokens[2], line_no);
        const VertexId s = densify(src);
        const VertexId d = densify(dst);
        out.events.push_back({s, d, t});
    }
    return out;
}

EdgeList parse_snap(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return parse_snap(in);
}

Dataset dagify(const EdgeList& edges, std::uint64_t seed, std::string name) {
    const std::size_t n = edges.vertex_count();
    std::vector<std::size_t> position(n);
    std::iota(position.begin(), position.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(position.begin(), position.end(), rng);

    Dataset d;
    d.name = std::move(name);
    d.n = n;
    d.original_ids = edges.original_ids;
    for (const EdgeEvent& e : edges.events) {
        if (position[e.source] < position[e.target]) {
            d.events.push_back(e);
        }
    }
    std::stable_sort(d.events.begin(), d.events.end(),
                     [](const EdgeEvent& a, const EdgeEvent& b) { return a.timestamp < b.timestamp; });
    return d;
}

TrainTestSplit split(std::span<const EdgeEvent> events, double train_frac, double test_frac) {
    if (train_frac < 0.0 || test_frac < 0.0 || train_frac + test_frac > 1.0 + 1e-12) {
        throw std::invalid_argument("train/test fractions must be nonnegative and sum to at most 1");
    }
    const std::size_t total = events.size();
    const std::size_t test_size = fraction_count(test_frac, total);
    const std::size_t test_begin = total - test_size;
    const std::size_t train_size = std::min(fraction_count(train_frac, total), test_begin);
    TrainTestSplit s;
    s.train.assign(events.begin() + static_cast<std::ptrdiff_t>(test_begin - train_size),
                   events.begin() + static_cast<std::ptrdiff_t>(test_begin));
    s.test.assign(events.begin() + static_cast<std::ptrdiff_t>(test_begin), events.end());
    return s;
}

TrainTestSplit split(const Dataset& d, double train_frac, double test_frac) {
    return split(std::span<const EdgeEvent>(d.events), train_frac, test_frac);
}

std::vector<EdgeEvent> deduplicate(std::span<const EdgeEvent> events) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<EdgeEvent> out;
    for (const EdgeEvent& e : events) {
        const std::uint64_t key = (static_cast<std::uint64_t>(e.source) << 32) | e.target;
        if (seen.insert(key).second) {
            out.push_back(e);
        }
    }
    return out;
}

}  // namespace ltopo
