#include "statecycle/stategraph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace statecycle {

const char* to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::full: return "full";
        case GraphKind::one_block: return "one_block";
        case GraphKind::one_tracing: return "one_tracing";
    }
    return "?";
}

TraceGraph::TraceGraph(GraphKind kind, std::vector<int> vertices, std::vector<GraphEdge> edges)
    : kind_(kind), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end());
    for (int v : vertices_) incident_[v];
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        incident_.at(e.u).push_back(static_cast<int>(i));
        if (e.v != e.u) incident_.at(e.v).push_back(static_cast<int>(i));
    }
}

bool TraceGraph::has_vertex(int loop) const { return incident_.count(loop) != 0; }

const std::vector<int>& TraceGraph::incident(int loop) const { return incident_.at(loop); }

LoopRoles loop_roles(const State& st) {
    LoopRoles r;
    r.zero_tracing.assign(static_cast<std::size_t>(st.loop_count()), false);
    r.one_tracing.assign(static_cast<std::size_t>(st.loop_count()), false);
    for (const auto& t : st.traces()) {
        auto& side = t.bit ? r.one_tracing : r.zero_tracing;
        side[static_cast<std::size_t>(t.loop_a)] = true;
        side[static_cast<std::size_t>(t.loop_b)] = true;
    }
    return r;
}

TraceGraph build_graph(const State& st, GraphKind kind) {
    LoopRoles roles = loop_roles(st);
    std::vector<int> vertices;
    for (int l = 0; l < st.loop_count(); ++l) {
        bool keep = kind == GraphKind::full || (kind == GraphKind::one_tracing && roles.one_tracing[static_cast<std::size_t>(l)]) ||
                    (kind == GraphKind::one_block && roles.in_one_block(l));
        if (keep) vertices.push_back(l);
    }
    std::vector<GraphEdge> edges;
    for (const auto& t : st.traces()) {
        switch (kind) {
            case GraphKind::full:
                edges.push_back({t.loop_a, t.loop_b, t.crossing});
                break;
            case GraphKind::one_tracing:
                if (t.bit) edges.push_back({t.loop_a, t.loop_b, t.crossing});
                break;
            case GraphKind::one_block:
                if (t.bit && roles.in_one_block(t.loop_a) && roles.in_one_block(t.loop_b)) {
                    edges.push_back({t.loop_a, t.loop_b, t.crossing});
                }
                break;
        }
    }
    return TraceGraph(kind, std::move(vertices), std::move(edges));
}

EvennessReport evenness(const TraceGraph& g) {
    std::map<int, int> color;
    std::map<int, int> parent_edge;
    std::map<int, int> depth;
    for (int root : g.vertices()) {
        if (color.count(root)) continue;
        color[root] = 1;
        parent_edge[root] = -1;
        depth[root] = 0;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (int ei : g.incident(x)) {
                const GraphEdge& e = g.edges()[static_cast<std::size_t>(ei)];
                int y = e.other(x);
                auto it = color.find(y);
                if (it == color.end()) {
                    color[y] = -color[x];
                    parent_edge[y] = ei;
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                    continue;
                }
                if (it->second != color[x]) continue;

                // Same colour at both ends: close the two tree paths.
                std::vector<GraphEdge> up_x, up_y;
                int a = x, b = y;
                while (a != b) {
                    if (depth[a] >= depth[b]) {
                        const GraphEdge& pe = g.edges()[static_cast<std::size_t>(parent_edge[a])];
                        up_x.push_back(pe);
                        a = pe.other(a);
                    } else {
                        const GraphEdge& pe = g.edges()[static_cast<std::size_t>(parent_edge[b])];
                        up_y.push_back(pe);
                        b = pe.other(b);
                    }
                }
                std::vector<GraphEdge> walk(up_x.rbegin(), up_x.rend());
                walk.push_back(e);
                walk.insert(walk.end(), up_y.begin(), up_y.end());
                EvennessReport r;
                r.even = false;
                r.witness = std::move(walk);
                return r;
            }
        }
    }
    EvennessReport r;
    r.even = true;
    r.coloring = std::move(color);
    return r;
}

bool verify_report(const TraceGraph& g, const EvennessReport& r) {
    if (r.coloring.has_value() == r.witness.has_value()) return false;
    if (r.even) {
        if (!r.coloring) return false;
        const auto& c = *r.coloring;
        for (int v : g.vertices()) {
            auto it = c.find(v);
            if (it == c.end() || (it->second != 1 && it->second != -1)) return false;
        }
        for (const auto& e : g.edges()) {
            if (c.at(e.u) == c.at(e.v)) return false;
        }
        return c.size() == g.vertices().size();
    }
    if (!r.witness || r.witness->empty() || r.witness->size() % 2 == 0) return false;
    const auto& w = *r.witness;
    // Every witness edge must be an edge of g, used at most once.
    std::vector<bool> used(g.edges().size(), false);
    for (const auto& e : w) {
        bool found = false;
        for (std::size_t i = 0; i < g.edges().size(); ++i) {
            if (!used[i] && g.edges()[i] == e) {
                used[i] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    // Walk it: each edge must share the current endpoint; the walk closes.
    auto closes_from = [&](int start) {
        int at = start;
        for (const auto& e : w) {
            if (e.u == at) at = e.v;
            else if (e.v == at) at = e.u;
            else return false;
        }
        return at == start;
    };
    return closes_from(w.front().u) || closes_from(w.front().v);
}

std::vector<std::vector<int>> components(const TraceGraph& g) {
    std::vector<std::vector<int>> out;
    std::map<int, bool> seen;
    for (int root : g.vertices()) {
        if (seen[root]) continue;
        std::vector<int> comp;
        std::vector<int> stack{root};
        seen[root] = true;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (int ei : g.incident(x)) {
                int y = g.edges()[static_cast<std::size_t>(ei)].other(x);
                if (!seen[y]) {
                    seen[y] = true;
                    stack.push_back(y);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

TraceGraph induced(const TraceGraph& g, const std::vector<int>& vertices) {
    std::vector<int> keep;
    for (int v : vertices) {
        if (g.has_vertex(v)) keep.push_back(v);
    }
    std::vector<GraphEdge> edges;
    for (const auto& e : g.edges()) {
        bool in_u = std::find(keep.begin(), keep.end(), e.u) != keep.end();
        bool in_v = std::find(keep.begin(), keep.end(), e.v) != keep.end();
        if (in_u && in_v) edges.push_back(e);
    }
    return TraceGraph(g.kind(), std::move(keep), std::move(edges));
}

StateFlags state_flags(const State& st) {
    StateFlags f;
    f.zero_merging = true;
    f.one_merging = true;
    for (const auto& t : st.traces()) {
        if (t.kind() == TraceKind::pinch) (t.bit ? f.one_merging : f.zero_merging) = false;
    }
    f.adequate = f.zero_merging && f.one_merging;
    f.even = evenness(build_graph(st, GraphKind::full)).even;
    f.one_even = evenness(build_graph(st, GraphKind::one_tracing)).even;
    return f;
}

Adequacy diagram_adequacy(const Diagram& d) {
    int n = d.crossing_count();
    return {state_flags(resolve(d, Smoothing::all0(n))).adequate, state_flags(resolve(d, Smoothing::all1(n))).adequate};
}

std::string to_dot(const TraceGraph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    out << "  // kind: " << to_string(g.kind()) << "\n";
    for (int v : g.vertices()) out << "  L" << v << ";\n";
    for (const auto& e : g.edges()) out << "  L" << e.u << " -- L" << e.v << " [label=\"c" << e.crossing << "\"];\n";
    out << "}\n";
    return out.str();
}

nlohmann::json to_json(const StateFlags& f) {
    return {{"schema", "statecycle.flags/1"},
            {"zero_merging", f.zero_merging},
            {"one_merging", f.one_merging},
            {"adequate", f.adequate},
            {"even", f.even},
            {"one_even", f.one_even}};
}

nlohmann::json to_json(const EvennessReport& r) {
    nlohmann::json j{{"even", r.even}};
    if (r.coloring) {
        nlohmann::json c = nlohmann::json::object();
        for (const auto& [loop, sign] : *r.coloring) c[std::to_string(loop)] = sign;
        j["coloring"] = c;
    }
    if (r.witness) {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& e : *r.witness) w.push_back({{"loops", {e.u, e.v}}, {"crossing", e.crossing}});
        j["witness"] = w;
    }
    return j;
}

}  // namespace statecycle
