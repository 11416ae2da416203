#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpc/errors.hpp"
#include "dpc/rational.hpp"

namespace dpc {

// Vertex labels come straight from the input file; edge ids are positional
// (input order), which keeps plan and report references stable.
using VertexId = long long;
using EdgeId = int;

struct Edge {
    EdgeId id;
    VertexId u, v;  // endpoint order as listed in the input
    Rational w;
};

enum class GraphKind { Path, Tree };

// A weight delta per surviving edge; absent means the edge keeps its weight.
using Redistribution = std::map<EdgeId, Rational>;

/**
 * Immutable weighted path or tree.
 *
 * Vertices may carry a cardinality > 1, meaning the vertex stands for that
 * many fused original vertices (the result of earlier contractions).  Plain
 * graphs loaded from disk always have cardinality 1 everywhere.
 */
class WeightedGraph {
public:
    struct EdgeInput {
        VertexId u, v;
        Rational w;
        int line = 0;  // 1-based input line for diagnostics, 0 if synthetic
    };

    /** Empty placeholder; assign a built graph before use. */
    WeightedGraph() = default;

    /** Validating factory: weights >= 0, connected, acyclic. */
    static WeightedGraph build(const std::vector<EdgeInput>& edges,
                               const std::map<VertexId, long long>& cardinalities = {});

    /** Degenerate graph of a single (possibly fused) vertex, no edges. */
    static WeightedGraph single_vertex(VertexId v, long long cardinality = 1);

    GraphKind kind() const { return kind_; }
    bool is_path() const { return kind_ == GraphKind::Path; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const;  // throws NoSuchEdge
    bool has_edge(EdgeId e) const { return e >= 0 && static_cast<std::size_t>(e) < edges_.size(); }

    /** Vertices in order of first appearance in the input. */
    const std::vector<VertexId>& vertices() const { return vertices_; }
    bool has_vertex(VertexId v) const { return index_.count(v) != 0; }
    int vertex_index(VertexId v) const;  // dense index into vertices()

    long long cardinality(VertexId v) const { return cards_[vertex_index(v)]; }
    long long cardinality_at(int idx) const { return cards_[idx]; }
    /** n in all error formulas: the number of original vertices represented. */
    long long total_cardinality() const { return total_card_; }
    bool has_supernodes() const { return total_card_ != static_cast<long long>(vertices_.size()); }

    /** Incident edge ids of v in input order (the adjacency-list order). */
    const std::vector<EdgeId>& incident_edges(VertexId v) const;
    int degree(VertexId v) const { return static_cast<int>(incident_edges(v).size()); }

    /** Other endpoint of e as seen from vertex `from`. */
    VertexId opposite(EdgeId e, VertexId from) const;

    // --- path structure (kind() == Path only; throws NotAPath otherwise) ---

    /** Head = the degree<=1 endpoint that appears first in the input file. */
    VertexId path_head() const;
    /** Vertices in order from head to tail. */
    const std::vector<VertexId>& path_order() const;
    /** Position of e along the path: edge i joins path_order()[i] and [i+1]. */
    int edge_position(EdgeId e) const;
    /** Edge at a path position. */
    EdgeId edge_at_position(int pos) const;
    std::optional<EdgeId> left_neighbor(EdgeId e) const;
    std::optional<EdgeId> right_neighbor(EdgeId e) const;

    // --- metric helpers ---

    /** Exact distances from src to every vertex, indexed like vertices(). */
    std::vector<Rational> distances_from(VertexId src) const;
    Rational distance(VertexId a, VertexId b) const;

    /** Total cardinality of the component of G - e containing `side`. */
    long long component_cardinality_beyond(EdgeId e, VertexId side) const;

private:
    std::vector<Edge> edges_;
    std::vector<VertexId> vertices_;       // first-appearance order
    std::map<VertexId, int> index_;        // label -> dense index
    std::vector<long long> cards_;         // by dense index
    long long total_card_ = 0;
    std::vector<std::vector<EdgeId>> adjacency_;  // by dense index, input order
    GraphKind kind_ = GraphKind::Path;

    // populated only for paths
    std::vector<VertexId> path_order_;
    std::vector<int> edge_pos_;   // edge id -> position
    std::vector<EdgeId> pos_edge_;

    void require_path() const;
};

/**
 * Parse a whitespace edge list: one "u v w" triple per line, `#` starts a
 * comment, blank lines ignored.  Weights are decimals or p/q fractions,
 * parsed exactly.  Errors (ParseError, NegativeWeight, HasCycle,
 * Disconnected) name the offending 1-based line.
 */
WeightedGraph load_graph(std::istream& in);
WeightedGraph load_graph_text(const std::string& text);
WeightedGraph load_graph_file(const std::string& path);

/** Serialize as a loadable edge list; exact round-trip of every weight. */
std::string emit_edge_list(const WeightedGraph& g);

enum class Mode { SingleEdge, IndependentSet, Subpath, TreeSingleEdge };

const char* mode_name(Mode m);

/** Edges to contract plus the validated interpretation of the set. */
struct ContractionRequest {
    std::vector<EdgeId> targets;  // nonempty, all distinct
    Mode mode;
};

/**
 * Validate targets against g and derive the mode (a lone edge on a path is
 * SingleEdge; contiguous runs are Subpath; matchings are IndependentSet;
 * trees allow exactly one target).  `forced` overrides the derivation but is
 * still validated against the target topology.
 */
ContractionRequest make_request(const WeightedGraph& g, std::vector<EdgeId> targets,
                                std::optional<Mode> forced = std::nullopt);

/** (Vm, Vm_bar): endpoints of target edges, and everything else; sorted. */
std::pair<std::vector<VertexId>, std::vector<VertexId>> derive_merged_sets(
    const WeightedGraph& g, const ContractionRequest& req);

/** A maximal group of vertices fused by contraction. */
struct Supernode {
    VertexId representative;        // smallest member label; its label in base
    std::vector<VertexId> members;  // sorted, size >= 2
    long long cardinality = 0;      // sum of member cardinalities

    long long size() const { return static_cast<long long>(members.size()); }
};

/** Result of contracting target edges under a redistribution. */
struct ContractedGraph {
    WeightedGraph base;                   // the surviving topology
    std::vector<Supernode> supernodes;    // sorted by representative
    std::map<VertexId, VertexId> origin;  // original vertex -> base vertex
    std::vector<EdgeId> original_edge_id; // base edge index -> original edge id
};

/**
 * Remove the target edges, fuse their endpoints (transitively for adjacent
 * targets) and apply the weight deltas to surviving edges.  Deltas on
 * contracted or unknown edges are rejected; a resulting negative weight
 * raises NegativeResultWeight naming the edge.
 */
ContractedGraph contract(const WeightedGraph& g, const ContractionRequest& req,
                         const Redistribution& redist);

}  // namespace dpc
