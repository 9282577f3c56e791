#ifndef STATECYCLE_STATEGRAPH_HPP
#define STATECYCLE_STATEGRAPH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "statecycle/resolution.hpp"

namespace statecycle {

enum class GraphKind {
    full,         // Gamma_sigma: every loop, every trace
    one_block,    // Gamma_1: loops of the 1-block, 1-traces among them
    one_tracing,  // Lambda_1: 1-tracing loops, every 1-trace
};

const char* to_string(GraphKind kind);

struct GraphEdge {
    int u = 0;
    int v = 0;
    int crossing = 0;

    int other(int x) const noexcept { return x == u ? v : u; }
    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// Multigraph on loop indices. Pinchtraces appear as self-edges.
class TraceGraph {
public:
    TraceGraph(GraphKind kind, std::vector<int> vertices, std::vector<GraphEdge> edges);

    GraphKind kind() const noexcept { return kind_; }
    const std::vector<int>& vertices() const noexcept { return vertices_; }
    const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
    bool has_vertex(int loop) const;
    // Indices into edges() of the edges at `loop` (self-edges listed once).
    const std::vector<int>& incident(int loop) const;
    bool empty() const noexcept { return vertices_.empty(); }

private:
    GraphKind kind_;
    std::vector<int> vertices_;
    std::vector<GraphEdge> edges_;
    std::map<int, std::vector<int>> incident_;
};

TraceGraph build_graph(const State& st, GraphKind kind);

// Loop roles derived from the traces of a state.
struct LoopRoles {
    std::vector<bool> zero_tracing;
    std::vector<bool> one_tracing;

    bool in_one_block(int loop) const {
        return one_tracing.at(static_cast<std::size_t>(loop)) && !zero_tracing.at(static_cast<std::size_t>(loop));
    }
};

LoopRoles loop_roles(const State& st);

// Result of the 2-coloring test. Exactly one of `coloring` (loop -> +1/-1)
// and `witness` (a closed walk of odd length, as edges in walking order) is
// present.
struct EvennessReport {
    bool even = true;
    std::optional<std::map<int, int>> coloring;
    std::optional<std::vector<GraphEdge>> witness;
};

EvennessReport evenness(const TraceGraph& g);

// Independent re-check of a report against the graph it describes.
bool verify_report(const TraceGraph& g, const EvennessReport& r);

// Maximal connected vertex sets, each sorted, ordered by smallest vertex.
std::vector<std::vector<int>> components(const TraceGraph& g);

// Subgraph induced on `vertices` (edges with both ends inside).
TraceGraph induced(const TraceGraph& g, const std::vector<int>& vertices);

struct StateFlags {
    bool zero_merging = false;
    bool one_merging = false;
    bool adequate = false;
    bool even = false;
    bool one_even = false;
};

StateFlags state_flags(const State& st);

struct Adequacy {
    bool plus = false;
    bool minus = false;
};

Adequacy diagram_adequacy(const Diagram& d);

std::string to_dot(const TraceGraph& g, const std::string& name = "trace_graph");
nlohmann::json to_json(const StateFlags& f);
nlohmann::json to_json(const EvennessReport& r);

}  // namespace statecycle

#endif  // STATECYCLE_STATEGRAPH_HPP
