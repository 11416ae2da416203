#include "dpc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <numeric>
#include <set>

namespace dpc {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// One independent, thread-safe random stream per (seed, index); results never
// depend on how samples are scheduled across workers.
struct SampleRng {
    std::uint64_t state;
    SampleRng(std::uint64_t seed, std::uint64_t index)
        : state(seed ^ (0xD1B54A32D192ED03ULL * (index + 1))) {
        splitmix64(state);
    }
    std::uint64_t next() { return splitmix64(state); }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

Marking marking_from_subset(const NeighborProfile& pr, std::uint64_t subset) {
    Marking m;
    for (std::size_t i = 0; i < pr.left_count(); ++i)
        m.set(pr.left_edges[i], Rational((subset >> i) & 1));
    for (std::size_t j = 0; j < pr.right_count(); ++j)
        m.set(pr.right_edges[j], Rational((subset >> (pr.left_count() + j)) & 1));
    return m;
}

long long subset_unit_error(const NeighborProfile& pr, std::uint64_t subset) {
    long long marked_left = 0, sq_left = 0, marked_right = 0, sq_right = 0;
    for (std::size_t i = 0; i < pr.left_count(); ++i) {
        if ((subset >> i) & 1) {
            marked_left += pr.left_cards[i];
            sq_left += pr.left_cards[i] * pr.left_cards[i];
        }
    }
    for (std::size_t j = 0; j < pr.right_count(); ++j) {
        if ((subset >> (pr.left_count() + j)) & 1) {
            marked_right += pr.right_cards[j];
            sq_right += pr.right_cards[j] * pr.right_cards[j];
        }
    }
    const long long unmarked_left = pr.sum_left - marked_left;
    const long long unmarked_right = pr.sum_right - marked_right;
    return marked_left * marked_left - sq_left + marked_left * unmarked_left +
           marked_right * marked_right - sq_right + marked_right * unmarked_right +
           marked_left * marked_right + unmarked_left * unmarked_right;
}

}  // namespace

OracleVerdict enumerate_markings(const WeightedGraph& tree, EdgeId e_star,
                                 const Marking& claimed, long long claimed_units,
                                 int max_neighbors, Exec exec) {
    NeighborProfile pr = profile(tree, e_star);
    const int width = static_cast<int>(pr.left_count() + pr.right_count());
    const int cap = std::min(max_neighbors, kEnumerationCap);
    if (width > cap)
        throw TooLargeError("marking enumeration over " + std::to_string(width) +
                            " neighbor edges exceeds the cap of " + std::to_string(cap));
    unit_error_from_profile(pr, claimed);  // validates coverage and integrality

    const std::uint64_t total = 1ULL << width;
    long long best_units = LLONG_MAX;
    std::uint64_t best_subset = 0;

    if (exec == Exec::Serial) {
        // Reference: score every subset with the pairwise metric itself.
        for (std::uint64_t s = 0; s < total; ++s) {
            long long units = marking_unit_error(tree, e_star, marking_from_subset(pr, s));
            if (units < best_units) {
                best_units = units;
                best_subset = s;
            }
        }
    } else {
#pragma omp parallel
        {
            long long local_units = LLONG_MAX;
            std::uint64_t local_subset = 0;
#pragma omp for schedule(static) nowait
            for (long long s = 0; s < static_cast<long long>(total); ++s) {
                long long units = subset_unit_error(pr, static_cast<std::uint64_t>(s));
                if (units < local_units) {  // ascending s: first hit is the smallest
                    local_units = units;
                    local_subset = static_cast<std::uint64_t>(s);
                }
            }
#pragma omp critical
            {
                if (local_units < best_units ||
                    (local_units == best_units && local_subset < best_subset)) {
                    best_units = local_units;
                    best_subset = local_subset;
                }
            }
        }
    }

    OracleVerdict verdict;
    verdict.best_value = Rational(best_units);
    verdict.claimed_value = Rational(claimed_units);
    verdict.best_marking = marking_from_subset(pr, best_subset);
    verdict.points_examined = total;
    if (best_units >= claimed_units) {
        verdict.verdict = Verdict::Confirmed;
        verdict.gap = Rational(0);
    } else {
        verdict.verdict = Verdict::Refuted;
        verdict.gap = Rational(claimed_units - best_units);
    }
    return verdict;
}

namespace {

// diff(pair) = sum of varied-edge values on the pair's path + offset; pairs
// collapse into groups sharing (mask, offset).
struct PairGroup {
    std::uint64_t mask;
    Rational offset;
    long long mult;
};

struct GridAxes {
    std::vector<EdgeId> edges;
    std::vector<Rational> lo, step;
    std::vector<long long> ticks;          // grid points per axis
    unsigned long long cells = 1;
    std::vector<unsigned long long> stride;
};

Rational rat_ceil(const Rational& r) {
    long long q = r.numerator() / r.denominator();
    if (Rational(q) < r) ++q;
    return Rational(q);
}

GridAxes make_axes(const WeightedGraph& p, const ContractionRequest& req,
                   const GridSpec& spec, const std::vector<EdgeId>& vary,
                   unsigned long long max_cells) {
    if (spec.step <= Rational(0))
        throw ValidationError(Fault::BadRequest, "grid step must be positive");
    if (!spec.ranges.empty() && spec.ranges.size() != vary.size())
        throw ValidationError(Fault::BadRequest,
                              "grid ranges must match the varied edges one to one");
    if (vary.size() > 62)
        throw ValidationError(Fault::BadRequest, "too many varied edges for a grid");

    std::set<EdgeId> targets(req.targets.begin(), req.targets.end());
    std::set<EdgeId> seen;
    for (EdgeId e : vary) {
        p.edge(e);
        if (targets.count(e))
            throw ValidationError(Fault::BadRequest,
                                  "cannot vary contracted edge " + std::to_string(e));
        if (!seen.insert(e).second)
            throw ValidationError(Fault::BadRequest,
                                  "edge " + std::to_string(e) + " varied twice");
    }

    // Maximal runs of consecutive contracted positions, for automatic bounds.
    std::vector<std::pair<int, int>> runs;
    {
        std::vector<int> pos;
        for (EdgeId e : targets) pos.push_back(p.edge_position(e));
        std::sort(pos.begin(), pos.end());
        for (std::size_t i = 0; i < pos.size(); ++i) {
            if (!runs.empty() && runs.back().second + 1 == pos[i])
                runs.back().second = pos[i];
            else
                runs.emplace_back(pos[i], pos[i]);
        }
    }
    std::set<int> vary_pos;
    for (EdgeId e : vary) vary_pos.insert(p.edge_position(e));

    GridAxes axes;
    axes.edges = vary;
    for (std::size_t a = 0; a < vary.size(); ++a) {
        Rational lo(0), hi(0);
        if (!spec.ranges.empty()) {
            lo = spec.ranges[a].first;
            hi = spec.ranges[a].second;
            if (lo < Rational(0))
                throw ValidationError(Fault::BadRequest, "grid range must be nonnegative");
            if (hi < lo)
                throw ValidationError(Fault::BadRequest, "grid range is empty");
            if (((hi - lo) / spec.step).denominator() != 1)
                throw ValidationError(Fault::BadRequest,
                                      "grid step does not divide the range");
        } else {
            // Span of the touched region: this edge, every adjacent contracted
            // run, and each run's other varied boundary edge.
            const int my_pos = p.edge_position(vary[a]);
            Rational span = p.edge(vary[a]).w;
            for (const auto& [lo_pos, hi_pos] : runs) {
                int other = -1;
                if (hi_pos + 1 == my_pos)
                    other = lo_pos - 1;
                else if (my_pos + 1 == lo_pos)
                    other = hi_pos + 1;
                else
                    continue;
                for (int q = lo_pos; q <= hi_pos; ++q)
                    span += p.edge(p.edge_at_position(q)).w;
                if (other >= 0 && static_cast<std::size_t>(other) < p.edge_count() &&
                    vary_pos.count(other))
                    span += p.edge(p.edge_at_position(other)).w;
            }
            hi = spec.step * rat_ceil(span / spec.step);  // snap up to the grid
        }
        axes.lo.push_back(lo);
        axes.step.push_back(spec.step);
        Rational ticks = (hi - lo) / spec.step;
        axes.ticks.push_back(ticks.numerator() / ticks.denominator() + 1);
    }

    const unsigned long long cap = std::min(max_cells, kGridCellCap);
    for (long long t : axes.ticks) {
        if (axes.cells > cap / static_cast<unsigned long long>(t))
            throw TooLargeError("grid of more than " + std::to_string(cap) + " cells");
        axes.cells *= static_cast<unsigned long long>(t);
    }
    axes.stride.assign(vary.size(), 1);
    for (std::size_t a = vary.size(); a-- > 1;)
        axes.stride[a - 1] = axes.stride[a] * static_cast<unsigned long long>(axes.ticks[a]);
    return axes;
}

// Mechanical pair decomposition of the objective: for every scored pair,
// which varied edges lie on its path and what constant the rest contribute.
std::pair<std::vector<PairGroup>, Rational> make_groups(const WeightedGraph& p,
                                                        const ContractionRequest& req,
                                                        const GridAxes& axes) {
    std::vector<int> axis_of(p.edge_count(), -1);
    for (std::size_t a = 0; a < axes.edges.size(); ++a)
        axis_of[p.edge_position(axes.edges[a])] = static_cast<int>(a);
    std::vector<bool> contracted(p.edge_count(), false);
    for (EdgeId e : req.targets) contracted[p.edge_position(e)] = true;
    std::vector<Rational> pos_weight(p.edge_count());
    for (std::size_t q = 0; q < p.edge_count(); ++q)
        pos_weight[q] = p.edge(p.edge_at_position(static_cast<int>(q))).w;

    std::vector<bool> in_merged(p.vertex_count(), false);
    for (EdgeId e : req.targets) {
        in_merged[p.vertex_index(p.edge(e).u)] = true;
        in_merged[p.vertex_index(p.edge(e).v)] = true;
    }

    const auto& order = p.path_order();
    std::map<std::pair<std::uint64_t, Rational>, long long> grouped;
    Rational fixed_error(0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const int vi = p.vertex_index(order[i]), vj = p.vertex_index(order[j]);
            if (in_merged[vi] && in_merged[vj]) continue;
            std::uint64_t mask = 0;
            Rational offset(0);
            bool touched = false;
            for (std::size_t q = i; q < j; ++q) {  // edges on the i..j subpath
                if (axis_of[q] >= 0) {
                    mask |= 1ULL << axis_of[q];
                    offset -= pos_weight[q];
                    touched = true;
                } else if (contracted[q]) {
                    offset -= pos_weight[q];
                    touched = true;
                }
            }
            if (!touched) continue;  // distance cannot change
            long long mult = p.cardinality_at(vi) * p.cardinality_at(vj);
            if (mask == 0)
                fixed_error += rat_abs(offset) * Rational(mult);
            else
                grouped[{mask, offset}] += mult;
        }
    }
    std::vector<PairGroup> groups;
    groups.reserve(grouped.size());
    for (const auto& [key, mult] : grouped)
        groups.push_back(PairGroup{key.first, key.second, mult});
    return {std::move(groups), fixed_error};
}

Redistribution cell_redistribution(const WeightedGraph& p, const GridAxes& axes,
                                   unsigned long long flat) {
    Redistribution r;
    for (std::size_t a = 0; a < axes.edges.size(); ++a) {
        long long t = static_cast<long long>((flat / axes.stride[a]) %
                                             static_cast<unsigned long long>(axes.ticks[a]));
        Rational value = axes.lo[a] + axes.step[a] * Rational(t);
        Rational delta = value - p.edge(axes.edges[a]).w;
        if (delta != Rational(0)) r[axes.edges[a]] = delta;
    }
    return r;
}

long long checked_lcm(long long a, long long b) {
    long long g = std::gcd(a, b);
    long long l = a / g;
    if (l > (1LL << 21) / b) return -1;  // too big for the scaled fast path
    return l * b;
}

}  // namespace

OracleVerdict grid_search_path(const WeightedGraph& p, const ContractionRequest& req,
                               const Redistribution& claimed, const GridSpec& spec,
                               const std::vector<EdgeId>& edges_to_vary,
                               unsigned long long max_cells, Exec exec) {
    if (!p.is_path())
        throw ValidationError(Fault::NotAPath, "grid search requires a path");

    const Rational claimed_value = total_error(p, req, claimed).total;
    GridAxes axes = make_axes(p, req, spec, edges_to_vary, max_cells);

    OracleVerdict verdict;
    verdict.claimed_value = claimed_value;
    verdict.points_examined = axes.cells;

    unsigned long long best_flat = 0;
    Rational best_value;

    if (exec == Exec::Serial) {
        // Reference: score every cell with the full objective.
        bool first = true;
        for (unsigned long long flat = 0; flat < axes.cells; ++flat) {
            Rational value = total_error(p, req, cell_redistribution(p, axes, flat)).total;
            if (first || value < best_value) {
                best_value = value;
                best_flat = flat;
                first = false;
            }
        }
    } else {
        auto [groups, fixed_error] = make_groups(p, req, axes);

        // Try to scale everything to int64; fall back to exact rationals when
        // denominators or magnitudes grow past the comfortable range.
        long long den = fixed_error.denominator();
        for (std::size_t a = 0; a < axes.edges.size() && den > 0; ++a) {
            den = checked_lcm(den, axes.lo[a].denominator());
            if (den > 0) den = checked_lcm(den, axes.step[a].denominator());
        }
        for (const PairGroup& g : groups) {
            if (den <= 0) break;
            den = checked_lcm(den, g.offset.denominator());
        }

        bool scaled_ok = den > 0;
        std::vector<std::vector<long long>> axis_vals;  // [axis][tick], scaled
        std::vector<long long> offsets;
        long long fixed_scaled = 0;
        if (scaled_ok) {
            __int128 magnitude = 0;
            auto to_scaled = [den](const Rational& r) {
                return r.numerator() * (den / r.denominator());
            };
            fixed_scaled = to_scaled(fixed_error);
            magnitude = fixed_scaled;
            axis_vals.resize(axes.edges.size());
            for (std::size_t a = 0; a < axes.edges.size(); ++a) {
                axis_vals[a].resize(axes.ticks[a]);
                for (long long t = 0; t < axes.ticks[a]; ++t)
                    axis_vals[a][t] = to_scaled(axes.lo[a] + axes.step[a] * Rational(t));
            }
            for (const PairGroup& g : groups) {
                offsets.push_back(to_scaled(g.offset));
                __int128 worst = offsets.back() < 0 ? -__int128(offsets.back())
                                                    : __int128(offsets.back());
                for (std::size_t a = 0; a < axes.edges.size(); ++a)
                    if ((g.mask >> a) & 1) worst += axis_vals[a].back();
                magnitude += __int128(g.mult) * worst;
            }
            if (magnitude > (__int128(1) << 62)) scaled_ok = false;
        }

        if (scaled_ok) {
            long long global_best = LLONG_MAX;
            unsigned long long global_flat = 0;
#pragma omp parallel
            {
                long long local_best = LLONG_MAX;
                unsigned long long local_flat = 0;
                std::vector<long long> tick(axes.edges.size());
#pragma omp for schedule(static) nowait
                for (long long flat = 0; flat < static_cast<long long>(axes.cells); ++flat) {
                    for (std::size_t a = 0; a < axes.edges.size(); ++a)
                        tick[a] = static_cast<long long>(
                            (static_cast<unsigned long long>(flat) / axes.stride[a]) %
                            static_cast<unsigned long long>(axes.ticks[a]));
                    long long value = fixed_scaled;
                    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
                        long long sum = offsets[gi];
                        std::uint64_t mask = groups[gi].mask;
                        while (mask) {
                            int a = std::countr_zero(mask);
                            sum += axis_vals[a][tick[a]];
                            mask &= mask - 1;
                        }
                        value += groups[gi].mult * (sum < 0 ? -sum : sum);
                    }
                    if (value < local_best) {  // ascending flat keeps the first witness
                        local_best = value;
                        local_flat = static_cast<unsigned long long>(flat);
                    }
                }
#pragma omp critical
                {
                    if (local_best < global_best ||
                        (local_best == global_best && local_flat < global_flat)) {
                        global_best = local_best;
                        global_flat = local_flat;
                    }
                }
            }
            best_value = Rational(global_best, den);
            best_flat = global_flat;
        } else {
            // Exact fallback: same grouped evaluation in rational arithmetic.
            bool first = true;
            for (unsigned long long flat = 0; flat < axes.cells; ++flat) {
                Rational value = fixed_error;
                for (const PairGroup& g : groups) {
                    Rational sum = g.offset;
                    for (std::size_t a = 0; a < axes.edges.size(); ++a)
                        if ((g.mask >> a) & 1) {
                            long long t = static_cast<long long>(
                                (flat / axes.stride[a]) %
                                static_cast<unsigned long long>(axes.ticks[a]));
                            sum += axes.lo[a] + axes.step[a] * Rational(t);
                        }
                    value += rat_abs(sum) * Rational(g.mult);
                }
                if (first || value < best_value) {
                    best_value = value;
                    best_flat = flat;
                    first = false;
                }
            }
        }
    }

    verdict.best_value = best_value;
    verdict.best_redistribution = cell_redistribution(p, axes, best_flat);
    if (best_value >= claimed_value) {
        verdict.verdict = Verdict::Confirmed;
        verdict.gap = Rational(0);
    } else {
        verdict.verdict = Verdict::Refuted;
        verdict.gap = claimed_value - best_value;
    }
    return verdict;
}

namespace {

Redistribution draw_sample(const WeightedGraph& g, const std::vector<EdgeId>& surviving,
                           const Rational& w_max, std::uint64_t seed, std::uint64_t index) {
    SampleRng rng(seed, index);
    Redistribution r;
    for (EdgeId e : surviving) {
        if (rng.next() & 1) continue;  // leave this edge alone
        long long j = static_cast<long long>(rng.below(8193)) - 4096;
        Rational delta = w_max * Rational(j, 4096);
        if (delta < -g.edge(e).w) delta = -g.edge(e).w;  // keep weights nonnegative
        if (delta != Rational(0)) r[e] = delta;
    }
    return r;
}

}  // namespace

OracleVerdict sample_redistributions(const WeightedGraph& g, const ContractionRequest& req,
                                     const Redistribution& claimed, long long n_samples,
                                     std::uint64_t seed, bool include_claimed, Exec exec) {
    if (n_samples < 0)
        throw ValidationError(Fault::BadRequest, "sample count must be nonnegative");

    const Rational claimed_value = total_error(g, req, claimed).total;

    std::set<EdgeId> targets(req.targets.begin(), req.targets.end());
    std::vector<EdgeId> surviving;
    for (const Edge& e : g.edges())
        if (!targets.count(e.id)) surviving.push_back(e.id);
    Rational w_max(0);
    for (const Edge& e : g.edges()) w_max = std::max(w_max, e.w);

    OracleVerdict verdict;
    verdict.claimed_value = claimed_value;
    verdict.points_examined = static_cast<unsigned long long>(n_samples);

    const long long first_random = include_claimed ? 1 : 0;
    bool have_best = false;
    Rational best_value;
    long long best_index = 0;
    if (include_claimed && n_samples >= 1) {
        best_value = claimed_value;
        best_index = 0;
        have_best = true;
    }

    auto score = [&](long long s) {
        return total_error(g, req, draw_sample(g, surviving, w_max, seed, s)).total;
    };

    if (exec == Exec::Serial) {
        for (long long s = first_random; s < n_samples; ++s) {
            Rational value = score(s);
            if (!have_best || value < best_value) {
                best_value = value;
                best_index = s;
                have_best = true;
            }
        }
    } else {
#pragma omp parallel
        {
            bool local_have = false;
            Rational local_value;
            long long local_index = 0;
#pragma omp for schedule(static) nowait
            for (long long s = first_random; s < n_samples; ++s) {
                Rational value = score(s);
                if (!local_have || value < local_value) {
                    local_value = value;
                    local_index = s;
                    local_have = true;
                }
            }
#pragma omp critical
            {
                if (local_have &&
                    (!have_best || local_value < best_value ||
                     (local_value == best_value && local_index < best_index))) {
                    best_value = local_value;
                    best_index = local_index;
                    have_best = true;
                }
            }
        }
    }

    if (!have_best) {  // zero samples: nothing examined, nothing refuted
        verdict.best_value = claimed_value;
        verdict.verdict = Verdict::Confirmed;
        verdict.gap = Rational(0);
        return verdict;
    }

    verdict.best_value = best_value;
    verdict.best_redistribution =
        best_index == 0 && include_claimed
            ? claimed
            : draw_sample(g, surviving, w_max, seed, best_index);
    if (best_value >= claimed_value) {
        verdict.verdict = Verdict::Confirmed;
        verdict.gap = Rational(0);
    } else {
        verdict.verdict = Verdict::Refuted;
        verdict.gap = claimed_value - best_value;
    }
    return verdict;
}

}  // namespace dpc
