#include "dpc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace dpc {

namespace {

// Minimal union-find over dense vertex indices.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

std::string edge_place(const WeightedGraph::EdgeInput& e, std::size_t index) {
    if (e.line > 0) return "line " + std::to_string(e.line);
    return "edge " + std::to_string(index);
}

long long parse_vertex_label(const std::string& token, int line) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(line, "bad vertex label '" + token + "'");
    return value;
}

}  // namespace

WeightedGraph WeightedGraph::build(const std::vector<EdgeInput>& edges,
                                   const std::map<VertexId, long long>& cardinalities) {
    if (edges.empty())
        throw ValidationError(Fault::BadRequest, "a graph needs at least one edge");

    WeightedGraph g;
    g.edges_.reserve(edges.size());

    auto intern = [&g](VertexId v) {
        auto it = g.index_.find(v);
        if (it != g.index_.end()) return it->second;
        int idx = static_cast<int>(g.vertices_.size());
        g.index_.emplace(v, idx);
        g.vertices_.push_back(v);
        return idx;
    };

    for (std::size_t i = 0; i < edges.size(); ++i) {
        const EdgeInput& e = edges[i];
        if (e.w < Rational(0))
            throw ValidationError(Fault::NegativeWeight,
                                  edge_place(e, i) + ": negative weight " + format_rational(e.w));
        if (e.u == e.v)
            throw ValidationError(Fault::HasCycle, edge_place(e, i) + ": self-loop on vertex " +
                                                       std::to_string(e.u));
        intern(e.u);
        intern(e.v);
        g.edges_.push_back(Edge{static_cast<EdgeId>(i), e.u, e.v, e.w});
    }

    Dsu dsu(g.vertices_.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!dsu.unite(g.index_.at(edges[i].u), g.index_.at(edges[i].v)))
            throw ValidationError(Fault::HasCycle,
                                  edge_place(edges[i], i) + ": edge closes a cycle");
    }
    int root0 = dsu.find(g.index_.at(edges[0].u));
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (dsu.find(g.index_.at(edges[i].u)) != root0)
            throw ValidationError(Fault::Disconnected,
                                  edge_place(edges[i], i) +
                                      ": edge lies in a component separate from the first edge");
    }

    g.cards_.assign(g.vertices_.size(), 1);
    for (const auto& [v, card] : cardinalities) {
        auto it = g.index_.find(v);
        if (it == g.index_.end())
            throw ValidationError(Fault::BadRequest,
                                  "cardinality given for unknown vertex " + std::to_string(v));
        if (card < 1)
            throw ValidationError(Fault::BadRequest, "cardinality of vertex " + std::to_string(v) +
                                                         " must be positive");
        g.cards_[it->second] = card;
    }
    g.total_card_ = std::accumulate(g.cards_.begin(), g.cards_.end(), 0LL);

    g.adjacency_.assign(g.vertices_.size(), {});
    for (const Edge& e : g.edges_) {
        g.adjacency_[g.index_.at(e.u)].push_back(e.id);
        g.adjacency_[g.index_.at(e.v)].push_back(e.id);
    }

    std::size_t max_degree = 0;
    for (const auto& adj : g.adjacency_) max_degree = std::max(max_degree, adj.size());
    g.kind_ = max_degree <= 2 ? GraphKind::Path : GraphKind::Tree;

    if (g.kind_ == GraphKind::Path) {
        VertexId head = 0;
        bool found = false;
        for (VertexId v : g.vertices_) {
            if (g.adjacency_[g.index_.at(v)].size() <= 1) {
                head = v;
                found = true;
                break;
            }
        }
        if (!found)  // cannot happen on a validated tree
            throw ValidationError(Fault::HasCycle, "path has no endpoint");

        g.path_order_.reserve(g.vertices_.size());
        g.edge_pos_.assign(g.edges_.size(), -1);
        g.pos_edge_.reserve(g.edges_.size());
        VertexId prev = head, cur = head;  // no self-loops, so prev=head is a safe sentinel
        g.path_order_.push_back(head);
        while (g.path_order_.size() < g.vertices_.size()) {
            bool stepped = false;
            for (EdgeId eid : g.adjacency_[g.index_.at(cur)]) {
                VertexId other = g.opposite(eid, cur);
                if (other == prev) continue;  // the edge we arrived on
                g.edge_pos_[eid] = static_cast<int>(g.pos_edge_.size());
                g.pos_edge_.push_back(eid);
                g.path_order_.push_back(other);
                prev = cur;
                cur = other;
                stepped = true;
                break;
            }
            if (!stepped)  // cannot happen on a validated tree
                throw std::logic_error("path walk stalled");
        }
    }
    return g;
}

WeightedGraph WeightedGraph::single_vertex(VertexId v, long long cardinality) {
    if (cardinality < 1)
        throw ValidationError(Fault::BadRequest, "cardinality must be positive");
    WeightedGraph g;
    g.vertices_.push_back(v);
    g.index_.emplace(v, 0);
    g.cards_.push_back(cardinality);
    g.total_card_ = cardinality;
    g.adjacency_.assign(1, {});
    g.kind_ = GraphKind::Path;
    g.path_order_.push_back(v);
    return g;
}

const Edge& WeightedGraph::edge(EdgeId e) const {
    if (!has_edge(e))
        throw ValidationError(Fault::NoSuchEdge, "no edge with id " + std::to_string(e));
    return edges_[e];
}

int WeightedGraph::vertex_index(VertexId v) const {
    auto it = index_.find(v);
    if (it == index_.end())
        throw ValidationError(Fault::BadRequest, "unknown vertex " + std::to_string(v));
    return it->second;
}

const std::vector<EdgeId>& WeightedGraph::incident_edges(VertexId v) const {
    return adjacency_[vertex_index(v)];
}

VertexId WeightedGraph::opposite(EdgeId e, VertexId from) const {
    const Edge& ed = edge(e);
    if (ed.u == from) return ed.v;
    if (ed.v == from) return ed.u;
    throw ValidationError(Fault::BadRequest, "vertex " + std::to_string(from) +
                                                 " is not an endpoint of edge " + std::to_string(e));
}

void WeightedGraph::require_path() const {
    if (kind_ != GraphKind::Path)
        throw ValidationError(Fault::NotAPath, "operation requires a path-shaped graph");
}

VertexId WeightedGraph::path_head() const {
    require_path();
    return path_order_.front();
}

const std::vector<VertexId>& WeightedGraph::path_order() const {
    require_path();
    return path_order_;
}

int WeightedGraph::edge_position(EdgeId e) const {
    require_path();
    edge(e);  // bounds check
    return edge_pos_[e];
}

EdgeId WeightedGraph::edge_at_position(int pos) const {
    require_path();
    if (pos < 0 || static_cast<std::size_t>(pos) >= pos_edge_.size())
        throw ValidationError(Fault::NoSuchEdge, "no edge at path position " + std::to_string(pos));
    return pos_edge_[pos];
}

std::optional<EdgeId> WeightedGraph::left_neighbor(EdgeId e) const {
    int pos = edge_position(e);
    if (pos == 0) return std::nullopt;
    return pos_edge_[pos - 1];
}

std::optional<EdgeId> WeightedGraph::right_neighbor(EdgeId e) const {
    int pos = edge_position(e);
    if (static_cast<std::size_t>(pos + 1) >= pos_edge_.size()) return std::nullopt;
    return pos_edge_[pos + 1];
}

std::vector<Rational> WeightedGraph::distances_from(VertexId src) const {
    std::vector<Rational> dist(vertices_.size(), Rational(0));
    std::vector<bool> seen(vertices_.size(), false);
    std::vector<int> stack{vertex_index(src)};
    seen[vertex_index(src)] = true;
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (EdgeId eid : adjacency_[cur]) {
            int next = vertex_index(opposite(eid, vertices_[cur]));
            if (seen[next]) continue;
            seen[next] = true;
            dist[next] = dist[cur] + edges_[eid].w;
            stack.push_back(next);
        }
    }
    return dist;
}

Rational WeightedGraph::distance(VertexId a, VertexId b) const {
    return distances_from(a)[vertex_index(b)];
}

long long WeightedGraph::component_cardinality_beyond(EdgeId e, VertexId side) const {
    edge(e);  // bounds check
    long long total = 0;
    std::vector<bool> seen(vertices_.size(), false);
    std::vector<int> stack{vertex_index(side)};
    seen[vertex_index(side)] = true;
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        total += cards_[cur];
        for (EdgeId eid : adjacency_[cur]) {
            if (eid == e) continue;
            int next = vertex_index(opposite(eid, vertices_[cur]));
            if (seen[next]) continue;
            seen[next] = true;
            stack.push_back(next);
        }
    }
    return total;
}

WeightedGraph load_graph(std::istream& in) {
    std::vector<WeightedGraph::EdgeInput> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream tokens(line);
        std::vector<std::string> parts;
        std::string tok;
        while (tokens >> tok) parts.push_back(tok);
        if (parts.empty()) continue;
        if (parts.size() != 3)
            throw ParseError(line_no, "expected 'u v w', got " + std::to_string(parts.size()) +
                                          " fields");
        WeightedGraph::EdgeInput e;
        e.u = parse_vertex_label(parts[0], line_no);
        e.v = parse_vertex_label(parts[1], line_no);
        try {
            e.w = parse_rational(parts[2]);
        } catch (const std::invalid_argument& ex) {
            throw ParseError(line_no, ex.what());
        }
        e.line = line_no;
        edges.push_back(e);
    }
    if (edges.empty()) throw ParseError(line_no, "input contains no edges");
    return WeightedGraph::build(edges);
}

WeightedGraph load_graph_text(const std::string& text) {
    std::istringstream in(text);
    return load_graph(in);
}

WeightedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open graph file '" + path + "'");
    return load_graph(in);
}

std::string emit_edge_list(const WeightedGraph& g) {
    std::string out;
    for (const Edge& e : g.edges()) {
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += ' ';
        out += format_rational(e.w);
        out += '\n';
    }
    return out;
}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::SingleEdge: return "single";
        case Mode::IndependentSet: return "independent";
        case Mode::Subpath: return "subpath";
        case Mode::TreeSingleEdge: return "tree";
    }
    return "?";
}

namespace {

bool targets_contiguous(const WeightedGraph& g, const std::vector<EdgeId>& targets) {
    if (!g.is_path()) return false;
    std::vector<int> pos;
    pos.reserve(targets.size());
    for (EdgeId e : targets) pos.push_back(g.edge_position(e));
    std::sort(pos.begin(), pos.end());
    for (std::size_t i = 1; i < pos.size(); ++i)
        if (pos[i] != pos[i - 1] + 1) return false;
    return true;
}

bool targets_matching(const WeightedGraph& g, const std::vector<EdgeId>& targets) {
    std::set<VertexId> used;
    for (EdgeId e : targets) {
        const Edge& ed = g.edge(e);
        if (!used.insert(ed.u).second) return false;
        if (!used.insert(ed.v).second) return false;
    }
    return true;
}

}  // namespace

ContractionRequest make_request(const WeightedGraph& g, std::vector<EdgeId> targets,
                                std::optional<Mode> forced) {
    if (targets.empty())
        throw ValidationError(Fault::EmptyTargets, "no target edges given");
    std::set<EdgeId> distinct;
    for (EdgeId e : targets) {
        g.edge(e);  // NoSuchEdge on bad ids
        if (!distinct.insert(e).second)
            throw ValidationError(Fault::BadRequest,
                                  "target edge " + std::to_string(e) + " listed twice");
    }

    Mode mode;
    if (forced) {
        mode = *forced;
        switch (mode) {
            case Mode::SingleEdge:
                if (!g.is_path())
                    throw ValidationError(Fault::NotAPath, "single-edge mode requires a path");
                if (targets.size() != 1)
                    throw ValidationError(Fault::BadRequest,
                                          "single-edge mode takes exactly one target");
                break;
            case Mode::Subpath:
                if (!g.is_path())
                    throw ValidationError(Fault::NotAPath, "subpath mode requires a path");
                if (!targets_contiguous(g, targets))
                    throw ValidationError(Fault::NotContiguous,
                                          "targets do not form a contiguous run");
                break;
            case Mode::IndependentSet:
                if (!g.is_path())
                    throw ValidationError(Fault::NotAPath, "independent mode requires a path");
                if (!targets_matching(g, targets))
                    throw ValidationError(Fault::NotAMatching, "targets share an endpoint");
                break;
            case Mode::TreeSingleEdge:
                if (targets.size() != 1)
                    throw ValidationError(Fault::BadRequest,
                                          "tree mode takes exactly one target");
                break;
        }
    } else if (!g.is_path()) {
        if (targets.size() != 1)
            throw ValidationError(Fault::BadRequest,
                                  "trees support contracting a single edge only");
        mode = Mode::TreeSingleEdge;
    } else if (targets.size() == 1) {
        mode = Mode::SingleEdge;
    } else if (targets_contiguous(g, targets)) {
        mode = Mode::Subpath;
    } else if (targets_matching(g, targets)) {
        mode = Mode::IndependentSet;
    } else {
        throw ValidationError(Fault::NotAMatching,
                              "targets are neither a contiguous run nor a matching");
    }
    return ContractionRequest{std::move(targets), mode};
}

std::pair<std::vector<VertexId>, std::vector<VertexId>> derive_merged_sets(
    const WeightedGraph& g, const ContractionRequest& req) {
    std::set<VertexId> merged;
    for (EdgeId e : req.targets) {
        merged.insert(g.edge(e).u);
        merged.insert(g.edge(e).v);
    }
    std::vector<VertexId> vm(merged.begin(), merged.end());
    std::vector<VertexId> vm_bar;
    for (VertexId v : g.vertices())
        if (!merged.count(v)) vm_bar.push_back(v);
    std::sort(vm_bar.begin(), vm_bar.end());
    return {std::move(vm), std::move(vm_bar)};
}

ContractedGraph contract(const WeightedGraph& g, const ContractionRequest& req,
                         const Redistribution& redist) {
    std::set<EdgeId> targets(req.targets.begin(), req.targets.end());
    for (EdgeId e : targets) g.edge(e);

    for (const auto& [e, delta] : redist) {
        g.edge(e);
        if (targets.count(e))
            throw ValidationError(Fault::BadRequest, "delta assigned to contracted edge " +
                                                         std::to_string(e));
        (void)delta;
    }

    // Fuse target endpoints, transitively.
    Dsu dsu(g.vertex_count());
    for (EdgeId e : targets)
        dsu.unite(g.vertex_index(g.edge(e).u), g.vertex_index(g.edge(e).v));

    std::map<int, std::vector<VertexId>> groups;  // dsu root -> members
    for (VertexId v : g.vertices()) {
        int root = dsu.find(g.vertex_index(v));
        groups[root].push_back(v);
    }

    std::map<VertexId, VertexId> origin;
    std::map<VertexId, long long> base_cards;
    std::vector<Supernode> supernodes;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        VertexId repr = members.front();
        long long card = 0;
        for (VertexId v : members) {
            origin[v] = repr;
            card += g.cardinality(v);
        }
        base_cards[repr] = card;
        if (members.size() >= 2)
            supernodes.push_back(Supernode{repr, members, card});
    }
    std::sort(supernodes.begin(), supernodes.end(),
              [](const Supernode& a, const Supernode& b) {
                  return a.representative < b.representative;
              });

    std::vector<WeightedGraph::EdgeInput> surviving;
    std::vector<EdgeId> original_ids;
    for (const Edge& e : g.edges()) {
        if (targets.count(e.id)) continue;
        Rational delta(0);
        auto it = redist.find(e.id);
        if (it != redist.end()) delta = it->second;
        Rational w = e.w + delta;
        if (w < Rational(0))
            throw ValidationError(Fault::NegativeResultWeight,
                                  "edge " + std::to_string(e.id) + ": weight " +
                                      format_rational(e.w) + " with delta " +
                                      format_rational(delta) + " goes negative");
        VertexId mu = origin.at(e.u), mv = origin.at(e.v);
        if (mu == mv)
            throw std::logic_error("contraction fused endpoints of a surviving edge");
        surviving.push_back(WeightedGraph::EdgeInput{mu, mv, w, 0});
        original_ids.push_back(e.id);
    }

    ContractedGraph result;
    if (surviving.empty()) {
        VertexId repr = origin.begin()->second;
        result.base = WeightedGraph::single_vertex(repr, g.total_cardinality());
    } else {
        result.base = WeightedGraph::build(surviving, base_cards);
    }
    result.supernodes = std::move(supernodes);
    result.origin = std::move(origin);
    result.original_edge_id = std::move(original_ids);
    return result;
}

}  // namespace dpc
