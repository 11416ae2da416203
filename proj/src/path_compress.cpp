#include "dpc/path_compress.hpp"

#include <algorithm>
#include <set>

namespace dpc {

namespace {

void require_plain_path(const WeightedGraph& p, const char* op) {
    if (!p.is_path())
        throw ValidationError(Fault::NotAPath, std::string(op) + " requires a path");
    if (p.has_supernodes())
        throw ValidationError(Fault::BadRequest,
                              std::string(op) + " requires an uncontracted path; "
                                                "use merge_supernode_pair after contractions");
}

void add_delta(Redistribution& r, EdgeId e, const Rational& delta) {
    if (delta == Rational(0)) return;
    auto [it, fresh] = r.emplace(e, delta);
    if (!fresh) it->second += delta;
}

/**
 * Left-block error of splitting a contracted run at index i: the first i run
 * weights shift onto the left boundary, the rest move right.  Every vertex in
 * the left outside block then misses each run vertex by the same offsets:
 *     n_left * ( sum_{j<=i} j*w_j + sum_{j>i} (k+1-j)*w_j ).
 */
Rational split_error_left(const std::vector<Rational>& run, long long n_left, std::size_t i) {
    const std::size_t k = run.size();
    Rational acc(0);
    for (std::size_t j = 1; j <= k; ++j) {
        long long coeff = j <= i ? static_cast<long long>(j) : static_cast<long long>(k + 1 - j);
        acc += run[j - 1] * Rational(coeff);
    }
    return acc * Rational(n_left);
}

Rational split_error_right(const std::vector<Rational>& run, long long n_right, std::size_t i) {
    std::vector<Rational> mirrored(run.rbegin(), run.rend());
    return split_error_left(mirrored, n_right, i);
}

}  // namespace

const char* path_case_name(PathCase c) {
    switch (c) {
        case PathCase::SingleEdge: return "single-edge";
        case PathCase::SupernodePair: return "supernode-pair";
        case PathCase::Subpath: return "subpath";
        case PathCase::IndependentSet: return "independent-set";
    }
    return "?";
}

PathMergePlan merge_single_edge(const WeightedGraph& p, EdgeId e_star) {
    require_plain_path(p, "merge_single_edge");
    const Rational B = p.edge(e_star).w;
    const long long n = p.total_cardinality();

    PathMergePlan plan;
    plan.merge_case = PathCase::SingleEdge;
    plan.predicted_error = Rational(n - 2) * B;
    // The left neighbor absorbs the contracted weight; with no left neighbor
    // the unchanged weights are already optimal.
    if (auto left = p.left_neighbor(e_star))
        add_delta(plan.redistribution, *left, B);
    return plan;
}

PathMergePlan merge_supernode_pair(const WeightedGraph& p, EdgeId e_star, long long card_left,
                                   long long card_right) {
    if (!p.is_path())
        throw ValidationError(Fault::NotAPath, "merge_supernode_pair requires a path");
    const Edge& star = p.edge(e_star);
    const int pos = p.edge_position(e_star);
    const VertexId left_v = p.path_order()[pos];
    const VertexId right_v = p.path_order()[pos + 1];
    if (p.cardinality(left_v) != card_left || p.cardinality(right_v) != card_right)
        throw ValidationError(Fault::NotAdjacentSupernodes,
                              "edge " + std::to_string(e_star) +
                                  " does not join supernodes of cardinalities " +
                                  std::to_string(card_left) + " and " +
                                  std::to_string(card_right));

    const Rational B = star.w;
    const long long n = p.total_cardinality();
    const long long outside = n - card_left - card_right;

    PathMergePlan plan;
    plan.merge_case = PathCase::SupernodePair;
    plan.predicted_error = Rational(std::min(card_left, card_right)) * B * Rational(outside);
    // The neighbor edge next to the smaller supernode absorbs the weight;
    // equal cardinalities mark the left side.  A missing neighbor means that
    // side has no outside vertices, and unchanged weights already achieve
    // the bound.
    if (card_left <= card_right) {
        if (auto left = p.left_neighbor(e_star)) add_delta(plan.redistribution, *left, B);
    } else {
        if (auto right = p.right_neighbor(e_star)) add_delta(plan.redistribution, *right, B);
    }
    return plan;
}

PathMergePlan merge_subpath(const WeightedGraph& p, const std::vector<EdgeId>& targets) {
    require_plain_path(p, "merge_subpath");
    if (targets.empty())
        throw ValidationError(Fault::EmptyTargets, "no target edges given");

    std::vector<int> pos;
    pos.reserve(targets.size());
    for (EdgeId e : targets) pos.push_back(p.edge_position(e));
    std::sort(pos.begin(), pos.end());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (i > 0 && pos[i] == pos[i - 1])
            throw ValidationError(Fault::BadRequest, "target edge listed twice");
        if (i > 0 && pos[i] != pos[i - 1] + 1)
            throw ValidationError(Fault::NotContiguous, "targets do not form a contiguous run");
    }

    const std::size_t k = pos.size();
    const std::size_t m = p.edge_count();
    const int first = pos.front();
    std::vector<Rational> run;
    run.reserve(k);
    for (std::size_t i = 0; i < k; ++i) run.push_back(p.edge(p.edge_at_position(first + i)).w);

    const long long n_left = first;
    const long long n_right = static_cast<long long>(m) - first - static_cast<long long>(k);

    // Split point: h = ceil(k/2).  An odd run behaves as if a zero-weight
    // edge were appended on the right, which only shifts the split index.
    const std::size_t h = (k + 1) / 2;
    Rational to_left(0), to_right(0);
    for (std::size_t j = 1; j <= h; ++j) to_left += run[j - 1];
    for (std::size_t j = h + 1; j <= k; ++j) to_right += run[j - 1];

    PathMergePlan plan;
    plan.merge_case = PathCase::Subpath;
    // Sides without outside vertices contribute zero (their factor is 0), so
    // the sum below covers the missing-boundary fallbacks as well.
    plan.predicted_error =
        split_error_left(run, n_left, h) + split_error_right(run, n_right, k - h);
    if (first > 0) add_delta(plan.redistribution, p.edge_at_position(first - 1), to_left);
    if (first + k < m) add_delta(plan.redistribution, p.edge_at_position(first + k), to_right);
    return plan;
}

std::vector<Rational> eL_table(const std::vector<Rational>& weights, long long n_left) {
    if (weights.size() < 4 || weights.size() % 2 != 0)
        throw ValidationError(Fault::BadRequest,
                              "eL_table expects w0..w(k+1) with k even and positive");
    std::vector<Rational> run(weights.begin() + 1, weights.end() - 1);
    std::vector<Rational> table;
    table.reserve(run.size() + 1);
    for (std::size_t i = 0; i <= run.size(); ++i)
        table.push_back(split_error_left(run, n_left, i));
    return table;
}

PathMergePlan merge_independent(const WeightedGraph& p, const std::vector<EdgeId>& targets) {
    require_plain_path(p, "merge_independent");
    if (targets.empty())
        throw ValidationError(Fault::EmptyTargets, "no target edges given");

    std::set<VertexId> used;
    std::set<EdgeId> seen;
    for (EdgeId e : targets) {
        const Edge& ed = p.edge(e);
        if (!seen.insert(e).second)
            throw ValidationError(Fault::BadRequest,
                                  "target edge " + std::to_string(e) + " listed twice");
        if (!used.insert(ed.u).second || !used.insert(ed.v).second)
            throw ValidationError(Fault::NotAMatching, "targets share an endpoint");
    }

    const long long n = p.total_cardinality();
    const long long k = static_cast<long long>(targets.size());

    PathMergePlan plan;
    plan.merge_case = PathCase::IndependentSet;
    Rational sum_w(0);
    for (EdgeId e : targets) {
        const Rational& w = p.edge(e).w;
        sum_w += w;
        // Matching targets never neighbor each other, so every left neighbor
        // below survives contraction; a missing one (leftmost edge) is skipped.
        if (auto left = p.left_neighbor(e)) add_delta(plan.redistribution, *left, w);
    }
    plan.predicted_error = Rational(n - 2 * k) * sum_w;
    return plan;
}

}  // namespace dpc
