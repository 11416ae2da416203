#pragma once

#include <optional>
#include <utility>

#include "dpc/graph.hpp"

namespace dpc {

/** Exact breakdown of the distance-error objective. */
struct ErrorReport {
    Rational total;          // outside_pairs + cross_pairs
    Rational outside_pairs;  // both endpoints outside the merged set
    Rational cross_pairs;    // exactly one endpoint inside the merged set
    std::optional<long long> unit_count;  // tree marking error in units of w*
};

/**
 * The objective: sum of |d_G(u,v) - d_G'(u,v)| over all vertex pairs with at
 * least one endpoint outside the merged set.  Pairs are weighted by the
 * product of endpoint cardinalities, so every original vertex inside a
 * supernode contributes its own term; pairs entirely inside the merged set
 * are not scored.  Computed by brute force from exact distances.
 */
ErrorReport total_error(const WeightedGraph& g, const ContractionRequest& req,
                        const Redistribution& redist);

enum class MarkState { Unmarked, Marked, Fractional };

/**
 * Assignment of a mark fraction to every neighbor edge of a tree target
 * edge: 0 = unmarked, 1 = marked (the edge absorbs the full contracted
 * weight), strictly between = fractional.
 */
class Marking {
public:
    void set(EdgeId e, const Rational& c);  // requires 0 <= c <= 1
    void set_marked(EdgeId e) { set(e, Rational(1)); }
    void set_unmarked(EdgeId e) { set(e, Rational(0)); }

    bool has(EdgeId e) const { return c_.count(e) != 0; }
    const Rational& fraction(EdgeId e) const;
    MarkState state(EdgeId e) const;
    bool is_integral() const;
    std::size_t size() const { return c_.size(); }
    const std::map<EdgeId, Rational>& fractions() const { return c_; }

    /** Weight deltas realizing this marking: +c*w_star per nonzero edge. */
    Redistribution to_redistribution(const Rational& w_star) const;

    bool operator==(const Marking& other) const { return c_ == other.c_; }

private:
    std::map<EdgeId, Rational> c_;
};

/**
 * Outside-pair error of an integral marking, in units of the contracted
 * weight.  Scored pair by pair over the subtrees hanging off the two
 * endpoints: same-side pairs pay 2 units per vertex pair when both subtrees
 * are marked and 1 when exactly one is; cross-side pairs pay 1 unit when the
 * subtrees agree (both marked or both unmarked) and 0 otherwise.
 * The marking must cover exactly the neighbor edges and be integral.
 */
long long marking_unit_error(const WeightedGraph& tree, EdgeId e_star, const Marking& m);

/**
 * The two halves of the per-vertex lower bound:
 *   alpha1 = |x - A| + |x - A - B|,  alpha2 = |y - C| + |y - B - C|.
 * Both are >= B for every x, y; equality holds exactly on [A, A+B] and
 * [C, B+C].  A, B, C must be nonnegative.
 */
std::pair<Rational, Rational> abs_pair_bound_check(const Rational& A, const Rational& B,
                                                   const Rational& C, const Rational& x,
                                                   const Rational& y);

}  // namespace dpc
