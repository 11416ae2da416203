#pragma once

#include <vector>

#include "dpc/error_metrics.hpp"
#include "dpc/graph.hpp"

namespace dpc {

enum class PathCase { SingleEdge, SupernodePair, Subpath, IndependentSet };

const char* path_case_name(PathCase c);

/** An optimal redistribution for a path contraction, with its exact error. */
struct PathMergePlan {
    PathCase merge_case = PathCase::SingleEdge;
    Redistribution redistribution;  // deltas on surviving edges
    Rational predicted_error;       // provably minimal objective value
};

/**
 * Contract one edge of a plain path.  The left neighbor edge (toward the
 * path head) absorbs the contracted weight when it exists; otherwise no
 * weight changes.  Error achieved: (n - 2) * w_star.
 */
PathMergePlan merge_single_edge(const WeightedGraph& p, EdgeId e_star);

/**
 * Contract the edge joining two supernodes of cardinalities k (left) and
 * k' (right); the stated cardinalities must match the graph.  The outer
 * neighbor edge adjacent to the smaller supernode absorbs the weight (ties
 * mark the left side).  Error achieved: min(k,k') * w_star * (n - k - k').
 */
PathMergePlan merge_supernode_pair(const WeightedGraph& p, EdgeId e_star,
                                   long long card_left, long long card_right);

/**
 * Contract a contiguous run of k edges on a plain path.  The run's weight is
 * split at index h = ceil(k/2): the left boundary edge absorbs the first h
 * run weights, the right boundary edge the rest (odd k behaves as if a
 * zero-weight edge were appended to the run, which only shifts the split).
 * Missing boundary edges degrade gracefully: only the existing side is set.
 */
PathMergePlan merge_subpath(const WeightedGraph& p, const std::vector<EdgeId>& targets);

/**
 * Error table for splitting a contracted run against the left outside block.
 * `weights` is w0..w(k+1): left boundary edge, k run weights (k even, k >= 2),
 * right boundary edge.  Entry i is the left-side error when the left boundary
 * absorbs the first i run weights:
 *     n_left * ( sum_{j<=i} j*w_j  +  sum_{j>i} (k+1-j)*w_j ),
 * minimized at i = k/2.
 */
std::vector<Rational> eL_table(const std::vector<Rational>& weights, long long n_left);

/**
 * Contract a matching (pairwise vertex-disjoint target edges) on a plain
 * path.  Each target's left neighbor edge absorbs that target's weight; the
 * leftmost target lacking a left neighbor changes nothing.  The resulting
 * error is (n - 2k) * sum of target weights, independent of target order.
 */
PathMergePlan merge_independent(const WeightedGraph& p, const std::vector<EdgeId>& targets);

}  // namespace dpc
