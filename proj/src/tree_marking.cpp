#include "dpc/tree_marking.hpp"

namespace dpc {

Marking NeighborProfile::empty_marking() const {
    Marking m;
    for (EdgeId e : left_edges) m.set_unmarked(e);
    for (EdgeId e : right_edges) m.set_unmarked(e);
    return m;
}

NeighborProfile profile(const WeightedGraph& tree, EdgeId e_star) {
    if (tree.has_supernodes())
        throw ValidationError(Fault::NotATreeEdge,
                              "marking profiles are defined on uncontracted trees");
    const Edge& star = tree.edge(e_star);

    NeighborProfile pr;
    pr.e_star = e_star;
    pr.v1 = star.u;
    pr.v2 = star.v;
    for (EdgeId e : tree.incident_edges(star.u)) {
        if (e == e_star) continue;
        pr.left_edges.push_back(e);
        pr.left_cards.push_back(
            tree.component_cardinality_beyond(e, tree.opposite(e, star.u)));
        pr.sum_left += pr.left_cards.back();
    }
    for (EdgeId e : tree.incident_edges(star.v)) {
        if (e == e_star) continue;
        pr.right_edges.push_back(e);
        pr.right_cards.push_back(
            tree.component_cardinality_beyond(e, tree.opposite(e, star.v)));
        pr.sum_right += pr.right_cards.back();
    }
    return pr;
}

namespace {

struct MarkSums {
    long long marked_left = 0, unmarked_left = 0;    // S_LM, S_LU
    long long marked_right = 0, unmarked_right = 0;  // S_RM, S_RU
    long long sq_marked_left = 0, sq_marked_right = 0;
};

bool integral_marked(const Marking& m, EdgeId e) {
    MarkState st = m.state(e);
    if (st == MarkState::Fractional)
        throw ValidationError(Fault::WrongState, "operation requires an integral marking");
    return st == MarkState::Marked;
}

MarkSums side_sums(const NeighborProfile& pr, const Marking& m) {
    if (m.size() != pr.left_count() + pr.right_count())
        throw ValidationError(Fault::BadRequest,
                              "marking must cover exactly the neighbor edges");
    MarkSums s;
    for (std::size_t i = 0; i < pr.left_count(); ++i) {
        long long c = pr.left_cards[i];
        if (integral_marked(m, pr.left_edges[i])) {
            s.marked_left += c;
            s.sq_marked_left += c * c;
        } else {
            s.unmarked_left += c;
        }
    }
    for (std::size_t j = 0; j < pr.right_count(); ++j) {
        long long c = pr.right_cards[j];
        if (integral_marked(m, pr.right_edges[j])) {
            s.marked_right += c;
            s.sq_marked_right += c * c;
        } else {
            s.unmarked_right += c;
        }
    }
    return s;
}

}  // namespace

long long unit_error_from_profile(const NeighborProfile& pr, const Marking& m) {
    MarkSums s = side_sums(pr, m);
    // Same-side marked pairs pay 2 units each: expand (sum of marked)^2.
    long long units = s.marked_left * s.marked_left - s.sq_marked_left;
    units += s.marked_left * s.unmarked_left;
    units += s.marked_right * s.marked_right - s.sq_marked_right;
    units += s.marked_right * s.unmarked_right;
    units += s.marked_left * s.marked_right;      // cross, both shifted
    units += s.unmarked_left * s.unmarked_right;  // cross, both stranded
    return units;
}

long long marking_delta(const NeighborProfile& pr, const Marking& m, const MarkOp& op) {
    MarkSums s = side_sums(pr, m);

    const bool left_side = op.kind == MarkOpKind::MarkLeft || op.kind == MarkOpKind::UnmarkLeft;
    const auto& edges = left_side ? pr.left_edges : pr.right_edges;
    const auto& cards = left_side ? pr.left_cards : pr.right_cards;
    if (op.index >= edges.size())
        throw ValidationError(Fault::BadRequest,
                              "no neighbor edge at index " + std::to_string(op.index));
    const bool marking = op.kind == MarkOpKind::MarkLeft || op.kind == MarkOpKind::MarkRight;
    if (integral_marked(m, edges[op.index]) == marking)
        throw ValidationError(Fault::WrongState,
                              marking ? "edge is already marked" : "edge is already unmarked");

    const long long c = cards[op.index];
    switch (op.kind) {
        case MarkOpKind::MarkLeft:
            return c * (s.marked_left + (s.unmarked_left - c) + s.marked_right - s.unmarked_right);
        case MarkOpKind::UnmarkLeft:
            return c * (-(s.marked_left - c) - s.unmarked_left - s.marked_right + s.unmarked_right);
        case MarkOpKind::MarkRight:
            return c * (s.marked_right + (s.unmarked_right - c) + s.marked_left - s.unmarked_left);
        case MarkOpKind::UnmarkRight:
            return c * (-(s.marked_right - c) - s.unmarked_right - s.marked_left + s.unmarked_left);
    }
    throw std::logic_error("unreachable mark op");
}

Marking optimal_partial(const NeighborProfile& pr, Side side) {
    Marking m = pr.empty_marking();
    // Marking a subtree of cardinality c on the chosen side pays against the
    // rest of its own side but wins the whole other side; it helps exactly
    // when S_side - S_other <= c.
    if (side == Side::Left) {
        for (std::size_t i = 0; i < pr.left_count(); ++i)
            if (pr.sum_left - pr.sum_right <= pr.left_cards[i]) m.set_marked(pr.left_edges[i]);
    } else {
        for (std::size_t j = 0; j < pr.right_count(); ++j)
            if (pr.sum_right - pr.sum_left <= pr.right_cards[j]) m.set_marked(pr.right_edges[j]);
    }
    return m;
}

OptimalMarking optimal_marking(const WeightedGraph& tree, EdgeId e_star) {
    NeighborProfile pr = profile(tree, e_star);
    Marking left = optimal_partial(pr, Side::Left);
    Marking right = optimal_partial(pr, Side::Right);

    OptimalMarking result;
    result.left_partial_units = unit_error_from_profile(pr, left);
    result.right_partial_units = unit_error_from_profile(pr, right);
    if (result.left_partial_units <= result.right_partial_units) {
        result.marking = std::move(left);
        result.unit_count = result.left_partial_units;
        result.chosen = Side::Left;
    } else {
        result.marking = std::move(right);
        result.unit_count = result.right_partial_units;
        result.chosen = Side::Right;
    }
    return result;
}

}  // namespace dpc
