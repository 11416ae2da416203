#pragma once

#include <cstddef>
#include <vector>

#include "dpc/error_metrics.hpp"
#include "dpc/graph.hpp"

namespace dpc {

/**
 * The neighborhood of a tree target edge (v1, v2): the neighbor edges on
 * each side in adjacency-list order, each with the cardinality of the
 * subtree hanging off it.  "Left" is the v1 side (first endpoint on the
 * edge's input line).
 */
struct NeighborProfile {
    EdgeId e_star = 0;
    VertexId v1 = 0, v2 = 0;
    std::vector<EdgeId> left_edges;
    std::vector<long long> left_cards;
    std::vector<EdgeId> right_edges;
    std::vector<long long> right_cards;
    long long sum_left = 0;   // S_L
    long long sum_right = 0;  // S_R

    std::size_t left_count() const { return left_edges.size(); }
    std::size_t right_count() const { return right_edges.size(); }

    /** All-unmarked marking over exactly the neighbor edges. */
    Marking empty_marking() const;
};

/** Compute the profile; the tree must be uncontracted (unit cardinalities). */
NeighborProfile profile(const WeightedGraph& tree, EdgeId e_star);

enum class MarkOpKind { MarkLeft, MarkRight, UnmarkLeft, UnmarkRight };

struct MarkOp {
    MarkOpKind kind;
    std::size_t index;  // position within the profile's side list
};

/**
 * Exact change in unit error if `op` were applied to integral marking `m`
 * (which must cover exactly the profile's neighbor edges).  Marking a marked
 * edge or unmarking an unmarked one is a WrongState error.  All sums below
 * are taken over `m` before the operation.
 */
long long marking_delta(const NeighborProfile& pr, const Marking& m, const MarkOp& op);

enum class Side { Left, Right };

/**
 * Best marking that touches only one side: mark exactly the edges whose
 * subtree cardinality c satisfies S_side - S_other <= c.
 */
Marking optimal_partial(const NeighborProfile& pr, Side side);

struct OptimalMarking {
    Marking marking;
    long long unit_count = 0;          // outside-pair error in units of w_star
    Side chosen = Side::Left;          // which one-sided candidate won
    long long left_partial_units = 0;  // unit error of the left candidate
    long long right_partial_units = 0; // unit error of the right candidate
};

/**
 * Provably optimal integral marking for contracting e_star: the better of
 * the two one-sided candidates (ties prefer left).  Runs in O(|V|).
 */
OptimalMarking optimal_marking(const WeightedGraph& tree, EdgeId e_star);

/**
 * Unit error of an integral marking evaluated from profile sums in
 * O(left_count + right_count); used by the linear-time optimizer and the
 * parallel enumeration kernel.  Agrees with marking_unit_error everywhere.
 */
long long unit_error_from_profile(const NeighborProfile& pr, const Marking& m);

}  // namespace dpc
