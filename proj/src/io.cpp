#include "dpc/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace dpc {

namespace {

std::vector<std::string> tokenize(const std::string& raw) {
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

VertexId parse_vertex(const std::string& tok, int line_no) {
    VertexId v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line_no, "bad vertex label '" + tok + "'");
    return v;
}

Mode parse_mode_token(const std::string& tok, int line_no) {
    if (tok == "single") return Mode::SingleEdge;
    if (tok == "independent") return Mode::IndependentSet;
    if (tok == "subpath") return Mode::Subpath;
    if (tok == "tree") return Mode::TreeSingleEdge;
    throw ParseError(line_no, "unknown mode '" + tok +
                                  "' (expected single, independent, subpath or tree)");
}

}  // namespace

PlanFile parse_plan(std::istream& in) {
    PlanFile plan;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::vector<std::string> toks = tokenize(raw);
        if (toks.empty()) continue;
        if (toks[0] == "contract") {
            if (toks.size() != 3)
                throw ParseError(line_no, "expected: contract <u> <v>");
            plan.targets.push_back(
                {parse_vertex(toks[1], line_no), parse_vertex(toks[2], line_no), line_no});
        } else if (toks[0] == "mode") {
            if (toks.size() != 2) throw ParseError(line_no, "expected: mode <name>");
            if (plan.mode) throw ParseError(line_no, "duplicate mode line");
            plan.mode = parse_mode_token(toks[1], line_no);
        } else {
            throw ParseError(line_no, "unknown directive '" + toks[0] + "'");
        }
    }
    return plan;
}

PlanFile parse_plan_text(const std::string& text) {
    std::istringstream ss(text);
    return parse_plan(ss);
}

PlanFile parse_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open plan file: " + path);
    return parse_plan(in);
}

std::vector<EdgeId> resolve_plan_edges(const WeightedGraph& g, const PlanFile& plan) {
    std::map<std::pair<VertexId, VertexId>, EdgeId> lookup;
    for (const Edge& e : g.edges())
        lookup[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.id;
    std::vector<EdgeId> out;
    out.reserve(plan.targets.size());
    for (const auto& t : plan.targets) {
        auto it = lookup.find({std::min(t.u, t.v), std::max(t.u, t.v)});
        if (it == lookup.end())
            throw ValidationError(Fault::NoSuchEdge,
                                  "no edge " + std::to_string(t.u) + " -- " +
                                      std::to_string(t.v) + " (plan line " +
                                      std::to_string(t.line) + ")");
        out.push_back(it->second);
    }
    return out;
}

PlannedContraction plan_contraction(const WeightedGraph& g, const PlanFile& plan,
                                    std::optional<Mode> forced_mode) {
    std::vector<EdgeId> targets = resolve_plan_edges(g, plan);
    // A --mode flag wins over a mode line inside the plan file.
    std::optional<Mode> forced = forced_mode ? forced_mode : plan.mode;
    ContractionRequest req = make_request(g, std::move(targets), forced);

    PlannedContraction pc;
    pc.request = req;
    switch (req.mode) {
        case Mode::SingleEdge: {
            const EdgeId e = req.targets[0];
            if (g.has_supernodes()) {
                const int pos = g.edge_position(e);
                pc.path_plan = merge_supernode_pair(g, e,
                                                    g.cardinality(g.path_order()[pos]),
                                                    g.cardinality(g.path_order()[pos + 1]));
            } else {
                pc.path_plan = merge_single_edge(g, e);
            }
            break;
        }
        case Mode::Subpath:
            pc.path_plan = merge_subpath(g, req.targets);
            break;
        case Mode::IndependentSet:
            pc.path_plan = merge_independent(g, req.targets);
            break;
        case Mode::TreeSingleEdge: {
            const EdgeId e = req.targets[0];
            pc.tree_profile = profile(g, e);
            pc.tree_marking = optimal_marking(g, e);
            const Rational w_star = g.edge(e).w;
            pc.redistribution = pc.tree_marking->marking.to_redistribution(w_star);
            const long long n = g.total_cardinality();
            pc.predicted_error = Rational(pc.tree_marking->unit_count + n - 2) * w_star;
            return pc;
        }
    }
    pc.redistribution = pc.path_plan.redistribution;
    pc.predicted_error = pc.path_plan.predicted_error;
    return pc;
}

namespace {

std::string edge_str(const WeightedGraph& g, EdgeId id) {
    const Edge& e = g.edge(id);
    return "e" + std::to_string(id) + " (" + std::to_string(e.u) + " -- " +
           std::to_string(e.v) + ", w = " + format_rational(e.w) + ")";
}

template <typename T>
std::string join(const std::vector<T>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(xs[i]);
    }
    return s;
}

std::vector<EdgeId> marked_edges(const Marking& m) {
    std::vector<EdgeId> ids;
    for (const auto& [e, c] : m.fractions())
        if (c == Rational(1)) ids.push_back(e);
    return ids;
}

std::string indent_lines(const std::string& block) {
    std::string out;
    std::istringstream ss(block);
    std::string line;
    while (std::getline(ss, line)) out += "  " + line + "\n";
    return out;
}

const char* verdict_name(Verdict v) {
    return v == Verdict::Confirmed ? "Confirmed" : "Refuted";
}

std::string witness_deltas(const Redistribution& r) {
    std::string s;
    for (const auto& [e, delta] : r) {
        if (!s.empty()) s += ",";
        s += std::to_string(e) + ":" + format_rational(delta);
    }
    return s;
}

}  // namespace

std::string render_compress_report(const WeightedGraph& g, const CompressReport& r,
                                   OutputFormat format) {
    std::ostringstream os;
    const auto merged = derive_merged_sets(g, r.request).first;

    if (format == OutputFormat::Table) {
        os << "mode: " << mode_name(r.mode) << "\n";
        os << "targets:\n";
        for (EdgeId e : r.request.targets) os << "  " << edge_str(g, e) << "\n";
        os << "merged: {" << join(merged) << "}\n";
        if (r.redistribution.empty()) {
            os << "redistribution: (none)\n";
        } else {
            os << "redistribution:\n";
            for (const auto& [e, delta] : r.redistribution)
                os << "  " << edge_str(g, e) << ": " << format_rational(g.edge(e).w)
                   << " -> " << format_rational(g.edge(e).w + delta) << " (delta "
                   << format_rational(delta) << ")\n";
        }
        os << "predicted-error: " << format_rational(r.predicted_error) << "\n";
        os << "recomputed-error: " << format_rational(r.recomputed.total) << " (outside "
           << format_rational(r.recomputed.outside_pairs) << ", cross "
           << format_rational(r.recomputed.cross_pairs) << ")\n";
        if (r.tree_marking) {
            os << "unit-count: " << r.tree_marking->unit_count << "\n";
            os << "marking:\n";
            for (const auto& [e, c] : r.tree_marking->marking.fractions())
                os << "  " << edge_str(g, e) << ": "
                   << (c == Rational(1) ? "marked" : "unmarked") << "\n";
            os << "left-candidate-units: " << r.tree_marking->left_partial_units << "\n";
            os << "right-candidate-units: " << r.tree_marking->right_partial_units
               << "\n";
        }
        os << "contracted-vertices: " << r.contracted.base.vertex_count() << "\n";
        os << "contracted-edges: " << r.contracted.base.edge_count() << "\n";
        if (!r.contracted.supernodes.empty()) {
            os << "supernodes:\n";
            for (const Supernode& s : r.contracted.supernodes)
                os << "  " << s.representative << " = {" << join(s.members)
                   << "} (cardinality " << s.cardinality << ")\n";
        }
        if (r.contracted.base.edge_count() > 0) {
            os << "edges:\n" << indent_lines(emit_edge_list(r.contracted.base));
        }
        return os.str();
    }

    os << "mode=" << mode_name(r.mode) << "\n";
    os << "target.count=" << r.request.targets.size() << "\n";
    for (std::size_t i = 0; i < r.request.targets.size(); ++i)
        os << "target." << i << "=" << r.request.targets[i] << "\n";
    os << "merged=" << join(merged) << "\n";
    os << "delta.count=" << r.redistribution.size() << "\n";
    {
        std::size_t i = 0;
        for (const auto& [e, delta] : r.redistribution) {
            os << "delta." << i << ".edge=" << e << "\n";
            os << "delta." << i << ".value=" << format_rational(delta) << "\n";
            ++i;
        }
    }
    os << "predicted=" << format_rational(r.predicted_error) << "\n";
    os << "recomputed=" << format_rational(r.recomputed.total) << "\n";
    os << "outside=" << format_rational(r.recomputed.outside_pairs) << "\n";
    os << "cross=" << format_rational(r.recomputed.cross_pairs) << "\n";
    if (r.tree_marking) {
        os << "units=" << r.tree_marking->unit_count << "\n";
        os << "marking=" << join(marked_edges(r.tree_marking->marking)) << "\n";
        os << "candidate.left.units=" << r.tree_marking->left_partial_units << "\n";
        os << "candidate.right.units=" << r.tree_marking->right_partial_units << "\n";
    }
    os << "graph.vertices=" << r.contracted.base.vertex_count() << "\n";
    os << "graph.edges=" << r.contracted.base.edge_count() << "\n";
    os << "supernode.count=" << r.contracted.supernodes.size() << "\n";
    for (std::size_t i = 0; i < r.contracted.supernodes.size(); ++i) {
        const Supernode& s = r.contracted.supernodes[i];
        os << "supernode." << i << ".representative=" << s.representative << "\n";
        os << "supernode." << i << ".members=" << join(s.members) << "\n";
        os << "supernode." << i << ".cardinality=" << s.cardinality << "\n";
    }
    for (std::size_t i = 0; i < r.contracted.base.edge_count(); ++i) {
        const Edge& e = r.contracted.base.edges()[i];
        os << "edge." << i << "=" << e.u << " " << e.v << " " << format_rational(e.w)
           << "\n";
    }
    return os.str();
}

std::string render_verify_report(const VerifyReport& r, OutputFormat format) {
    std::ostringstream os;
    if (format == OutputFormat::Table) {
        os << "mode: " << mode_name(r.mode) << "\n";
        os << "claimed-error: " << format_rational(r.claimed_error) << "\n";
        for (const auto& [name, v] : r.oracles) {
            os << "oracle " << name << ": " << verdict_name(v.verdict) << " (best "
               << format_rational(v.best_value) << ", claimed "
               << format_rational(v.claimed_value) << ", gap " << format_rational(v.gap)
               << ", points " << v.points_examined << ")\n";
            if (v.best_marking) {
                const auto ids = marked_edges(*v.best_marking);
                os << "  witness-marking:";
                if (ids.empty()) os << " (empty)";
                for (EdgeId e : ids) os << " e" << e;
                os << "\n";
            }
            if (v.best_redistribution) {
                os << "  witness-deltas:";
                if (v.best_redistribution->empty()) os << " (none)";
                for (const auto& [e, delta] : *v.best_redistribution)
                    os << " e" << e << " " << format_rational(delta);
                os << "\n";
            }
        }
        os << "verdict: " << (r.confirmed ? "Confirmed" : "Refuted") << "\n";
        return os.str();
    }
    os << "mode=" << mode_name(r.mode) << "\n";
    os << "claimed=" << format_rational(r.claimed_error) << "\n";
    os << "oracle.count=" << r.oracles.size() << "\n";
    for (std::size_t i = 0; i < r.oracles.size(); ++i) {
        const auto& [name, v] = r.oracles[i];
        os << "oracle." << i << ".name=" << name << "\n";
        os << "oracle." << i << ".verdict=" << verdict_name(v.verdict) << "\n";
        os << "oracle." << i << ".best=" << format_rational(v.best_value) << "\n";
        os << "oracle." << i << ".claimed=" << format_rational(v.claimed_value) << "\n";
        os << "oracle." << i << ".gap=" << format_rational(v.gap) << "\n";
        os << "oracle." << i << ".points=" << v.points_examined << "\n";
        if (v.best_marking)
            os << "oracle." << i << ".witness.marks=" << join(marked_edges(*v.best_marking))
               << "\n";
        if (v.best_redistribution)
            os << "oracle." << i << ".witness.deltas=" << witness_deltas(*v.best_redistribution)
               << "\n";
    }
    os << "verdict=" << (r.confirmed ? "Confirmed" : "Refuted") << "\n";
    return os.str();
}

std::string render_profile_report(const WeightedGraph& g, const NeighborProfile& pr,
                                  OutputFormat format) {
    const Marking left_m = optimal_partial(pr, Side::Left);
    const Marking right_m = optimal_partial(pr, Side::Right);
    const long long left_units = unit_error_from_profile(pr, left_m);
    const long long right_units = unit_error_from_profile(pr, right_m);
    const bool left_wins = left_units <= right_units;
    const Marking& best = left_wins ? left_m : right_m;
    const long long best_units = left_wins ? left_units : right_units;

    std::ostringstream os;
    if (format == OutputFormat::Table) {
        os << "edge: " << edge_str(g, pr.e_star) << "\n";
        os << "left-vertex: " << pr.v1 << "\n";
        os << "right-vertex: " << pr.v2 << "\n";
        os << "left:";
        if (pr.left_count() == 0) os << " (none)";
        for (std::size_t i = 0; i < pr.left_count(); ++i)
            os << " e" << pr.left_edges[i] << " (cardinality " << pr.left_cards[i] << ")";
        os << "\n";
        os << "right:";
        if (pr.right_count() == 0) os << " (none)";
        for (std::size_t i = 0; i < pr.right_count(); ++i)
            os << " e" << pr.right_edges[i] << " (cardinality " << pr.right_cards[i]
               << ")";
        os << "\n";
        os << "sum-left: " << pr.sum_left << "\n";
        os << "sum-right: " << pr.sum_right << "\n";
        const auto ids = marked_edges(best);
        os << "optimal-marking:";
        if (ids.empty()) os << " (empty)";
        for (EdgeId e : ids) os << " e" << e;
        os << "\n";
        os << "optimal-units: " << best_units << "\n";
        os << "left-candidate-units: " << left_units << "\n";
        os << "right-candidate-units: " << right_units << "\n";
        os << "chosen-side: " << (left_wins ? "left" : "right") << "\n";
        return os.str();
    }
    os << "edge=" << pr.e_star << "\n";
    os << "v1=" << pr.v1 << "\n";
    os << "v2=" << pr.v2 << "\n";
    os << "left.count=" << pr.left_count() << "\n";
    for (std::size_t i = 0; i < pr.left_count(); ++i) {
        os << "left." << i << ".edge=" << pr.left_edges[i] << "\n";
        os << "left." << i << ".cardinality=" << pr.left_cards[i] << "\n";
    }
    os << "right.count=" << pr.right_count() << "\n";
    for (std::size_t i = 0; i < pr.right_count(); ++i) {
        os << "right." << i << ".edge=" << pr.right_edges[i] << "\n";
        os << "right." << i << ".cardinality=" << pr.right_cards[i] << "\n";
    }
    os << "sum.left=" << pr.sum_left << "\n";
    os << "sum.right=" << pr.sum_right << "\n";
    os << "optimal.units=" << best_units << "\n";
    os << "optimal.side=" << (left_wins ? "left" : "right") << "\n";
    os << "optimal.marked=" << join(marked_edges(best)) << "\n";
    os << "candidate.left.units=" << left_units << "\n";
    os << "candidate.right.units=" << right_units << "\n";
    return os.str();
}

namespace {

template <typename F>
int run_command(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const TooLargeError& e) {
        err << e.what() << "\n";
        return 4;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

/** Surviving edges adjacent to a contracted run, ascending by edge id. */
std::vector<EdgeId> grid_axes_for(const WeightedGraph& p, const ContractionRequest& req) {
    std::set<int> tpos;
    for (EdgeId e : req.targets) tpos.insert(p.edge_position(e));
    std::set<EdgeId> vary;
    for (int pos : tpos) {
        for (int side : {pos - 1, pos + 1}) {
            if (side < 0 || side >= static_cast<int>(p.edge_count())) continue;
            if (tpos.count(side)) continue;
            vary.insert(p.edge_at_position(side));
        }
    }
    return {vary.begin(), vary.end()};
}

}  // namespace

int cmd_compress(const std::string& graph_path, const std::string& plan_path,
                 std::optional<Mode> forced_mode, OutputFormat format, bool inject_fault,
                 std::ostream& out, std::ostream& err) {
    return run_command(err, [&]() -> int {
        const WeightedGraph g = load_graph_file(graph_path);
        const PlanFile plan = parse_plan_file(plan_path);
        const PlannedContraction pc = plan_contraction(g, plan, forced_mode);

        CompressReport report;
        report.mode = pc.request.mode;
        report.request = pc.request;
        report.redistribution = pc.redistribution;
        report.predicted_error = pc.predicted_error;
        report.contracted = contract(g, pc.request, pc.redistribution);
        report.recomputed = total_error(g, pc.request, pc.redistribution);
        report.tree_profile = pc.tree_profile;
        report.tree_marking = pc.tree_marking;

        Rational predicted = pc.predicted_error;
        if (inject_fault) predicted += Rational(1);
        if (predicted != report.recomputed.total) {
            err << "internal inconsistency: predicted error " << format_rational(predicted)
                << " but brute-force recomputation gives "
                << format_rational(report.recomputed.total) << "\n";
            return 3;
        }
        if (pc.tree_marking) {
            report.recomputed.unit_count = pc.tree_marking->unit_count;
            const Rational w_star = g.edge(pc.request.targets[0]).w;
            const Rational units(pc.tree_marking->unit_count);
            const Rational crossing(g.total_cardinality() - 2);
            if (report.recomputed.outside_pairs != units * w_star ||
                report.recomputed.cross_pairs != crossing * w_star) {
                err << "internal inconsistency: unit accounting does not match the "
                       "recomputed error split\n";
                return 3;
            }
        }

        out << render_compress_report(g, report, format);
        return 0;
    });
}

int cmd_verify(const std::string& graph_path, const std::string& plan_path,
               std::optional<Mode> forced_mode, OutputFormat format,
               const VerifyOptions& options, std::ostream& out, std::ostream& err) {
    return run_command(err, [&]() -> int {
        const WeightedGraph g = load_graph_file(graph_path);
        const PlanFile plan = parse_plan_file(plan_path);
        const PlannedContraction pc = plan_contraction(g, plan, forced_mode);

        VerifyReport report;
        report.mode = pc.request.mode;
        report.claimed_error = pc.predicted_error;

        if (pc.request.mode == Mode::TreeSingleEdge) {
            report.oracles.emplace_back(
                "marking-enumeration",
                enumerate_markings(g, pc.request.targets[0], pc.tree_marking->marking,
                                   pc.tree_marking->unit_count, options.max_oracle_size));
        }
        if (options.grid_step) {
            GridSpec spec;
            spec.step = *options.grid_step;
            report.oracles.emplace_back(
                "grid", grid_search_path(g, pc.request, pc.redistribution, spec,
                                         grid_axes_for(g, pc.request)));
        }
        if (options.samples > 0) {
            report.oracles.emplace_back(
                "sampling", sample_redistributions(g, pc.request, pc.redistribution,
                                                   options.samples, options.seed));
        }
        if (report.oracles.empty())
            throw ValidationError(Fault::BadRequest,
                                  "no oracle selected: pass --grid-step and/or --samples");

        report.confirmed = true;
        for (const auto& [name, v] : report.oracles)
            if (v.verdict == Verdict::Refuted) report.confirmed = false;

        out << render_verify_report(report, format);
        return report.confirmed ? 0 : 5;
    });
}

int cmd_profile(const std::string& graph_path, const std::string& plan_path,
                OutputFormat format, std::ostream& out, std::ostream& err) {
    return run_command(err, [&]() -> int {
        const WeightedGraph g = load_graph_file(graph_path);
        const PlanFile plan = parse_plan_file(plan_path);
        const std::vector<EdgeId> targets = resolve_plan_edges(g, plan);
        if (targets.size() != 1)
            throw ValidationError(Fault::BadRequest,
                                  "profile takes exactly one target edge");
        out << render_profile_report(g, profile(g, targets[0]), format);
        return 0;
    });
}

}  // namespace dpc
