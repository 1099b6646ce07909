#pragma once

#include <vector>

#include "flowfoot/graph.hpp"

namespace flowfoot {

/// A path x0 … xn z: interior nodes inside X, the final node outside.
struct Path {
    std::vector<NodeId> nodes;

    friend bool operator==(const Path& a, const Path& b) { return a.nodes == b.nodes; }
    friend bool operator<(const Path& a, const Path& b) { return a.nodes < b.nodes; }

    std::string str() const;
};

struct PathSet {
    std::vector<Path> paths;
    bool truncated = false;  // hit the length bound; the set may be incomplete
};

enum class PathMode { All, Simple };

/// Composition of the edge functions along p, first edge applied first.
EdgeFn path_fn(const FlowGraph& h, const Path& p);

/// All nonzero-edge paths from x that leave h via the boundary edge (y, z).
/// Interior length is bounded by max_len; exceeding it sets `truncated`.
PathSet enum_paths(const FlowGraph& h, NodeId x, NodePair exit, std::size_t max_len);

/// Node-repetition-free paths from x leaving via (y, z); finite and complete
/// on any graph.
PathSet enum_simple_paths(const FlowGraph& h, NodeId x, NodePair exit);

/// Per-source transfer summaries: (source, boundary edge) -> Σ_p E_p over the
/// chosen path set. Zero summaries are not stored; at() fills them in.
class SourceSummary {
public:
    SourceSummary(MonoidTag tag, std::map<std::pair<NodeId, NodePair>, EdgeFn> fns)
        : tag_(tag), fns_(std::move(fns)) {}

    MonoidTag tag() const { return tag_; }
    const std::map<std::pair<NodeId, NodePair>, EdgeFn>& entries() const { return fns_; }

    EdgeFn at(NodeId source, NodePair exit) const;

private:
    MonoidTag tag_;
    std::map<std::pair<NodeId, NodePair>, EdgeFn> fns_;
};

/// Mode All sums over all paths and requires an acyclic graph (CyclicGraph
/// otherwise). Mode Simple sums over simple paths; on cyclic graphs this is
/// exact only for idempotent monoids with decreasing edges, so those are
/// required there (RequiresIdempotent / RequiresDecreasing) — acyclic graphs
/// need no such restriction since both path sets coincide.
SourceSummary source_summaries(const FlowGraph& h, PathMode mode);

/// Transfer via the all-paths summary form; equals transfer_eval exactly.
Outflow closed_form_transfer(const FlowGraph& h, const InflowMap& in2);

/// Transfer via simple-path summaries; same gating as source_summaries.
Outflow simple_path_transfer(const FlowGraph& h, const InflowMap& in2);

/// Every simple path of h1 from a source in `sources` to a boundary edge is
/// dominated by h2's simple-path summary for the same source and exit.
/// Requires an idempotent monoid and matching node sets.
bool path_replacement_holds(const FlowGraph& h1, const FlowGraph& h2,
                            const std::set<NodeId>& sources);

}  // namespace flowfoot
