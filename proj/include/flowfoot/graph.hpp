#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "flowfoot/monoid.hpp"

namespace flowfoot {

using NodeId = std::uint64_t;
using NodePair = std::pair<NodeId, NodeId>;

using EdgeMap = std::map<NodePair, EdgeFn>;       // (source in X, target) -> fn
using InflowMap = std::map<NodePair, FlowValue>;  // (source not in X, target in X) -> value
using Flow = std::map<NodeId, FlowValue>;         // node in X -> least flow
using Outflow = std::map<NodePair, FlowValue>;    // (node in X, target outside X) -> value

/// Immutable flow graph (X, E, in) with a lazily computed, memoized least
/// flow. Absent edge entries denote the zero function, absent inflow entries
/// the zero value; stored entries are never zero (sparse canonicity).
class FlowGraph {
public:
    FlowGraph() : FlowGraph(MonoidTag::Counting, {}, {}, {}) {}
    FlowGraph(MonoidTag tag, std::set<NodeId> nodes, EdgeMap edges, InflowMap inflow);

    MonoidTag tag() const { return tag_; }
    const std::set<NodeId>& nodes() const { return nodes_; }
    const EdgeMap& edges() const { return edges_; }
    const InflowMap& inflow() const { return inflow_; }
    bool empty() const { return nodes_.empty(); }
    bool contains(NodeId x) const { return nodes_.count(x) != 0; }

    const EdgeFn* edge(NodeId from, NodeId to) const;

    /// in_x: aggregated inflow into x. Throws NodeOutside for x not in X.
    FlowValue inflow_at(NodeId x) const;

    /// The least fixed point of the flow equation; memoized.
    const Flow& flow() const;

    /// True if the nonzero-edge subgraph restricted to X is acyclic.
    bool acyclic() const;

    /// Every stored edge function is decreasing.
    bool all_edges_decreasing() const;

private:
    MonoidTag tag_;
    std::set<NodeId> nodes_;
    EdgeMap edges_;
    InflowMap inflow_;

    struct FlowCache {
        std::once_flag once;
        std::optional<Flow> flow;
    };
    std::shared_ptr<FlowCache> cache_;
};

FlowGraph mk_graph(MonoidTag tag, std::set<NodeId> nodes, EdgeMap edges, InflowMap inflow);

Flow compute_flow(const FlowGraph& h);
Outflow outflow(const FlowGraph& h);

/// Outflow of h with its inflow replaced by in2; h itself is unchanged.
Outflow transfer_eval(const FlowGraph& h, const InflowMap& in2);

/// h|Y: nodes X ∩ Y; the inflow picks up E_(x,y)(h.flow(x)) for edges
/// crossing from X \ Y into Y.
FlowGraph restrict_graph(const FlowGraph& h, const std::set<NodeId>& Y);

struct ComposeResult {
    enum class Status { Ok, NodesOverlap, BoundaryMismatch, VanishingFlow };

    Status status = Status::Ok;
    std::optional<FlowGraph> graph;  // set iff Ok
    // witness for the failing stage
    NodeId witness_a = 0;
    NodeId witness_b = 0;
    std::string detail;

    bool ok() const { return status == Status::Ok; }
};

/// h1 * h2 with the three definedness stages reported distinctly:
/// node disjointness, boundary in/outflow matching, and flow preservation
/// (no vanishing flows).
ComposeResult compose(const FlowGraph& h1, const FlowGraph& h2);

bool graphs_equal(const FlowGraph& h1, const FlowGraph& h2);

}  // namespace flowfoot
