#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dpc/error_metrics.hpp"
#include "dpc/graph.hpp"
#include "dpc/tree_marking.hpp"

namespace dpc {

// Every oracle has a plain serial reference implementation and an OpenMP
// kernel.  Both produce bit-identical results (ties break by lexicographic
// witness order, independent of worker count); tests assert the equivalence
// and bench/ compares their throughput.
enum class Exec { Serial, Parallel };

/** Uniform search grid over the varied edges' weights. */
struct GridSpec {
    Rational step;  // > 0
    // Per varied edge [lo, hi]; empty means automatic bounds [0, span of the
    // touched region], with hi snapped up so that step divides hi - lo.
    std::vector<std::pair<Rational, Rational>> ranges;
};

enum class Verdict { Confirmed, Refuted };

struct OracleVerdict {
    Verdict verdict = Verdict::Confirmed;  // Confirmed iff best >= claimed
    Rational best_value;
    Rational claimed_value;
    Rational gap;  // claimed - best when refuted, else 0
    std::optional<Redistribution> best_redistribution;
    std::optional<Marking> best_marking;
    unsigned long long points_examined = 0;
};

inline constexpr int kEnumerationCap = 20;                    // neighbor edges
inline constexpr unsigned long long kGridCellCap = 100000000; // grid cells

/**
 * Exhaustively score all 2^(L+R) integral markings of e_star's neighbor
 * edges against a claimed optimum (in units of w_star).  Subsets are indexed
 * left side first, in profile order; ties keep the smallest index.
 */
OracleVerdict enumerate_markings(const WeightedGraph& tree, EdgeId e_star,
                                 const Marking& claimed, long long claimed_units,
                                 int max_neighbors = kEnumerationCap,
                                 Exec exec = Exec::Parallel);

/**
 * Exhaustive grid search over the weights of `edges_to_vary` (all other
 * surviving edges stay put), scoring the full objective against the claimed
 * redistribution.  The claimed grid point need not lie on the grid; the
 * verdict only reports whether any grid point beats the claim.
 */
OracleVerdict grid_search_path(const WeightedGraph& p, const ContractionRequest& req,
                               const Redistribution& claimed, const GridSpec& spec,
                               const std::vector<EdgeId>& edges_to_vary,
                               unsigned long long max_cells = kGridCellCap,
                               Exec exec = Exec::Parallel);

/**
 * Random falsification probe: draw `n_samples` redistributions (independent
 * coin per surviving edge, delta uniform on [-w_max, +w_max] with
 * denominator 4096, clipped so weights stay nonnegative) and score them
 * against the claim.  Sample 0 is the claimed redistribution itself when
 * `include_claimed` is set.  Fully deterministic in (seed, sample index).
 */
OracleVerdict sample_redistributions(const WeightedGraph& g, const ContractionRequest& req,
                                     const Redistribution& claimed, long long n_samples,
                                     std::uint64_t seed, bool include_claimed = true,
                                     Exec exec = Exec::Parallel);

}  // namespace dpc
