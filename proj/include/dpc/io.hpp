#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dpc/error_metrics.hpp"
#include "dpc/graph.hpp"
#include "dpc/oracle.hpp"
#include "dpc/path_compress.hpp"
#include "dpc/tree_marking.hpp"

namespace dpc {

/**
 * A contraction plan: lines of "contract u v" (an edge by its endpoint
 * labels, either order) plus an optional "mode single|independent|subpath|tree"
 * line.  `#` comments and blank lines are ignored.
 */
struct PlanFile {
    struct Target {
        VertexId u, v;
        int line;  // 1-based, for diagnostics
    };
    std::vector<Target> targets;
    std::optional<Mode> mode;
};

PlanFile parse_plan(std::istream& in);
PlanFile parse_plan_text(const std::string& text);
PlanFile parse_plan_file(const std::string& path);

/** Map plan targets onto edge ids; unknown endpoint pairs are NoSuchEdge. */
std::vector<EdgeId> resolve_plan_edges(const WeightedGraph& g, const PlanFile& plan);

enum class OutputFormat { Table, Records };

/** Everything cmd_compress reports; rendering is deterministic. */
struct CompressReport {
    Mode mode;
    ContractionRequest request;
    ContractedGraph contracted;
    Redistribution redistribution;
    Rational predicted_error;
    ErrorReport recomputed;  // always re-derived from the emitted graph
    // Tree route only:
    std::optional<NeighborProfile> tree_profile;
    std::optional<OptimalMarking> tree_marking;
};

std::string render_compress_report(const WeightedGraph& g, const CompressReport& r,
                                   OutputFormat format);

struct VerifyReport {
    Mode mode;
    Rational claimed_error;
    std::vector<std::pair<std::string, OracleVerdict>> oracles;  // label + verdict
    bool confirmed = true;  // all oracles confirmed
};

std::string render_verify_report(const VerifyReport& r, OutputFormat format);

std::string render_profile_report(const WeightedGraph& g, const NeighborProfile& pr,
                                  OutputFormat format);

/** Derive the request and optimal plan for a loaded graph + plan file. */
struct PlannedContraction {
    ContractionRequest request;
    PathMergePlan path_plan;  // valid for path modes
    std::optional<NeighborProfile> tree_profile;
    std::optional<OptimalMarking> tree_marking;
    Redistribution redistribution;
    Rational predicted_error;  // full objective value
};

PlannedContraction plan_contraction(const WeightedGraph& g, const PlanFile& plan,
                                    std::optional<Mode> forced_mode);

struct VerifyOptions {
    std::optional<Rational> grid_step;
    long long samples = 0;
    std::uint64_t seed = 0;
    int max_oracle_size = kEnumerationCap;
};

/**
 * CLI entry points.  Both write the rendered report to `out` and return the
 * process exit code: 0 ok/Confirmed, 1 parse error, 2 validation error,
 * 3 internal inconsistency, 4 oracle too large, 5 Refuted.  Error text goes
 * to `err`.
 */
int cmd_compress(const std::string& graph_path, const std::string& plan_path,
                 std::optional<Mode> forced_mode, OutputFormat format, bool inject_fault,
                 std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& graph_path, const std::string& plan_path,
               std::optional<Mode> forced_mode, OutputFormat format,
               const VerifyOptions& options, std::ostream& out, std::ostream& err);

int cmd_profile(const std::string& graph_path, const std::string& plan_path,
                OutputFormat format, std::ostream& out, std::ostream& err);

}  // namespace dpc
