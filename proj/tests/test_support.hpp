#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dpc/graph.hpp"

// Deterministic instance generators shared by the unit tests and the
// acceptance suite.  Everything is seeded splitmix64 so failures reproduce
// exactly across platforms and thread counts.
namespace testsupport {

struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9E3779B97F4A7C15ULL) { next(); }

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /** Uniform integer in [0, n). */
    long long below(long long n) { return static_cast<long long>(next() % static_cast<std::uint64_t>(n)); }

    /** Uniform integer in [lo, hi]. */
    long long range(long long lo, long long hi) { return lo + below(hi - lo + 1); }
};

/** Path on vertices 1..n (in order) with integer weights in [w_lo, w_hi]. */
inline dpc::WeightedGraph random_path(Rng& rng, int n, long long w_lo, long long w_hi) {
    std::vector<dpc::WeightedGraph::EdgeInput> edges;
    for (int i = 1; i < n; ++i)
        edges.push_back({i, i + 1, dpc::Rational(rng.range(w_lo, w_hi)), 0});
    return dpc::WeightedGraph::build(edges);
}

/**
 * Tree with central edge (1, 2) listed first (edge id 0) and one subtree of
 * the stated size per entry hanging off each endpoint.  Subtree shapes are
 * random, weights are integers in [1, 9], and each subtree's edges appear
 * consecutively (root edge first), so the profile lists sides in the given
 * order.  Vertex labels: 1, 2, then 10, 11, ... in creation order.
 */
inline dpc::WeightedGraph broom_tree(Rng& rng, const std::vector<long long>& left_sizes,
                                     const std::vector<long long>& right_sizes,
                                     const dpc::Rational& w_star) {
    std::vector<dpc::WeightedGraph::EdgeInput> edges;
    edges.push_back({1, 2, w_star, 0});
    long long next_label = 10;
    auto attach = [&](dpc::VertexId anchor, long long size) {
        std::vector<dpc::VertexId> members;
        for (long long t = 0; t < size; ++t) {
            dpc::VertexId parent =
                members.empty() ? anchor : members[rng.below(static_cast<long long>(members.size()))];
            dpc::VertexId child = next_label++;
            edges.push_back({parent, child, dpc::Rational(rng.range(1, 9)), 0});
            members.push_back(child);
        }
    };
    for (long long s : left_sizes) attach(1, s);
    for (long long s : right_sizes) attach(2, s);
    return dpc::WeightedGraph::build(edges);
}

/** The worked tree example: left subtree sizes (2,2,3), right sizes (20,1). */
inline dpc::WeightedGraph example_tree(Rng& rng, const dpc::Rational& w_star) {
    return broom_tree(rng, {2, 2, 3}, {20, 1}, w_star);
}

/** Random subtree-size lists with the given side counts and a size cap. */
inline std::pair<std::vector<long long>, std::vector<long long>> random_side_sizes(
    Rng& rng, int n_left, int n_right, long long max_size) {
    std::vector<long long> left, right;
    for (int i = 0; i < n_left; ++i) left.push_back(rng.range(1, max_size));
    for (int j = 0; j < n_right; ++j) right.push_back(rng.range(1, max_size));
    return {left, right};
}

}  // namespace testsupport
