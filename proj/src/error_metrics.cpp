#include "dpc/error_metrics.hpp"

#include <set>

namespace dpc {

ErrorReport total_error(const WeightedGraph& g, const ContractionRequest& req,
                        const Redistribution& redist) {
    ContractedGraph cg = contract(g, req, redist);

    const std::size_t n = g.vertex_count();
    std::vector<bool> in_merged(n, false);
    for (EdgeId e : req.targets) {
        in_merged[g.vertex_index(g.edge(e).u)] = true;
        in_merged[g.vertex_index(g.edge(e).v)] = true;
    }

    // Image of every original vertex in the contracted graph, as dense index.
    std::vector<int> image(n);
    for (std::size_t i = 0; i < n; ++i)
        image[i] = cg.base.vertex_index(cg.origin.at(g.vertices()[i]));

    // All contracted-graph distances up front: one traversal per vertex.
    std::vector<std::vector<Rational>> base_dist(cg.base.vertex_count());
    for (std::size_t i = 0; i < cg.base.vertex_count(); ++i)
        base_dist[i] = cg.base.distances_from(cg.base.vertices()[i]);

    ErrorReport report;
    report.total = report.outside_pairs = report.cross_pairs = Rational(0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> d_orig = g.distances_from(g.vertices()[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (in_merged[i] && in_merged[j]) continue;  // both inside: not scored
            Rational diff = rat_abs(d_orig[j] - base_dist[image[i]][image[j]]);
            if (diff == Rational(0)) continue;
            // Each original vertex inside a supernode contributes its own term.
            long long mult = g.cardinality_at(static_cast<int>(i)) *
                             g.cardinality_at(static_cast<int>(j));
            Rational term = diff * Rational(mult);
            if (in_merged[i] || in_merged[j])
                report.cross_pairs += term;
            else
                report.outside_pairs += term;
        }
    }
    report.total = report.outside_pairs + report.cross_pairs;
    return report;
}

void Marking::set(EdgeId e, const Rational& c) {
    if (c < Rational(0) || c > Rational(1))
        throw ValidationError(Fault::WrongState, "mark fraction " + format_rational(c) +
                                                     " outside [0, 1] on edge " +
                                                     std::to_string(e));
    c_[e] = c;
}

const Rational& Marking::fraction(EdgeId e) const {
    auto it = c_.find(e);
    if (it == c_.end())
        throw ValidationError(Fault::NoSuchEdge,
                              "edge " + std::to_string(e) + " is not part of the marking");
    return it->second;
}

MarkState Marking::state(EdgeId e) const {
    const Rational& c = fraction(e);
    if (c == Rational(0)) return MarkState::Unmarked;
    if (c == Rational(1)) return MarkState::Marked;
    return MarkState::Fractional;
}

bool Marking::is_integral() const {
    for (const auto& [e, c] : c_)
        if (c != Rational(0) && c != Rational(1)) return false;
    return true;
}

Redistribution Marking::to_redistribution(const Rational& w_star) const {
    Redistribution r;
    for (const auto& [e, c] : c_)
        if (c != Rational(0)) r[e] = c * w_star;
    return r;
}

namespace {

struct SideLists {
    std::vector<EdgeId> left, right;
    std::vector<long long> left_cards, right_cards;
};

SideLists neighbor_subtrees(const WeightedGraph& tree, EdgeId e_star) {
    const Edge& star = tree.edge(e_star);
    SideLists s;
    for (EdgeId e : tree.incident_edges(star.u)) {
        if (e == e_star) continue;
        s.left.push_back(e);
        s.left_cards.push_back(
            tree.component_cardinality_beyond(e, tree.opposite(e, star.u)));
    }
    for (EdgeId e : tree.incident_edges(star.v)) {
        if (e == e_star) continue;
        s.right.push_back(e);
        s.right_cards.push_back(
            tree.component_cardinality_beyond(e, tree.opposite(e, star.v)));
    }
    return s;
}

}  // namespace

long long marking_unit_error(const WeightedGraph& tree, EdgeId e_star, const Marking& m) {
    if (tree.has_supernodes())
        throw ValidationError(Fault::NotATreeEdge,
                              "marking error is defined on uncontracted trees");
    SideLists s = neighbor_subtrees(tree, e_star);

    if (m.size() != s.left.size() + s.right.size())
        throw ValidationError(Fault::BadRequest,
                              "marking must cover exactly the neighbor edges");
    std::vector<bool> lm(s.left.size()), rm(s.right.size());
    auto classify = [&m](EdgeId e) {
        MarkState st = m.state(e);  // NoSuchEdge if not covered
        if (st == MarkState::Fractional)
            throw ValidationError(Fault::WrongState,
                                  "unit error requires an integral marking");
        return st == MarkState::Marked;
    };
    for (std::size_t i = 0; i < s.left.size(); ++i) lm[i] = classify(s.left[i]);
    for (std::size_t j = 0; j < s.right.size(); ++j) rm[j] = classify(s.right[j]);

    // Pairwise over distinct subtrees.  Same side: both marked costs 2 units
    // per vertex pair, exactly one marked costs 1, neither costs 0.  Across
    // the contracted edge: agreeing subtrees cost 1 unit per pair (both
    // shifted or both stranded), disagreeing subtrees cost 0.
    long long units = 0;
    for (std::size_t i = 0; i < s.left.size(); ++i)
        for (std::size_t j = i + 1; j < s.left.size(); ++j) {
            int marks = (lm[i] ? 1 : 0) + (lm[j] ? 1 : 0);
            units += marks * s.left_cards[i] * s.left_cards[j];
        }
    for (std::size_t i = 0; i < s.right.size(); ++i)
        for (std::size_t j = i + 1; j < s.right.size(); ++j) {
            int marks = (rm[i] ? 1 : 0) + (rm[j] ? 1 : 0);
            units += marks * s.right_cards[i] * s.right_cards[j];
        }
    for (std::size_t i = 0; i < s.left.size(); ++i)
        for (std::size_t j = 0; j < s.right.size(); ++j)
            if (lm[i] == rm[j]) units += s.left_cards[i] * s.right_cards[j];
    return units;
}

std::pair<Rational, Rational> abs_pair_bound_check(const Rational& A, const Rational& B,
                                                   const Rational& C, const Rational& x,
                                                   const Rational& y) {
    if (A < Rational(0) || B < Rational(0) || C < Rational(0))
        throw ValidationError(Fault::NegativeWeight, "A, B, C must be nonnegative");
    Rational alpha1 = rat_abs(x - A) + rat_abs(x - A - B);
    Rational alpha2 = rat_abs(y - C) + rat_abs(y - B - C);
    return {alpha1, alpha2};
}

}  // namespace dpc
