#include "flowfoot/paths.hpp"

#include <algorithm>
#include <optional>

namespace flowfoot {

namespace {

void check_exit(const FlowGraph& h, NodePair exit) {
    if (h.contains(exit.second))
        throw FlowError(Errc::ExitNotBoundary,
                        "exit target " + std::to_string(exit.second) + " is internal");
    const EdgeFn* e = h.edge(exit.first, exit.second);
    if (!h.contains(exit.first) || e == nullptr)
        throw FlowError(Errc::ExitNotBoundary,
                        "no boundary edge (" + std::to_string(exit.first) + ", " +
                            std::to_string(exit.second) + ")");
}

std::map<NodeId, std::vector<NodeId>> internal_succs(const FlowGraph& h) {
    std::map<NodeId, std::vector<NodeId>> succs;
    for (NodeId x : h.nodes()) succs[x];
    for (const auto& [key, fn] : h.edges())
        if (h.contains(key.second)) succs[key.first].push_back(key.second);
    return succs;
}

struct Dfs {
    const FlowGraph& h;
    NodePair exit;
    std::map<NodeId, std::vector<NodeId>> succs;
    std::vector<NodeId> stack;
    std::set<NodeId> on_path;  // used in simple mode only
    PathSet out;
    std::size_t max_len;
    bool simple;

    void run(NodeId cur) {
        stack.push_back(cur);
        if (simple) on_path.insert(cur);
        if (cur == exit.first) {
            Path p;
            p.nodes = stack;
            p.nodes.push_back(exit.second);
            out.paths.push_back(std::move(p));
        }
        if (stack.size() >= max_len) {
            bool dead_end = true;
            for (NodeId next : succs.at(cur))
                if (!simple || !on_path.count(next)) dead_end = false;
            if (dead_end == false) out.truncated = true;
        } else {
            for (NodeId next : succs.at(cur)) {
                if (simple && on_path.count(next)) continue;
                run(next);
            }
        }
        if (simple) on_path.erase(cur);
        stack.pop_back();
    }
};

PathSet enumerate(const FlowGraph& h, NodeId x, NodePair exit, std::size_t max_len, bool simple) {
    if (!h.contains(x)) throw FlowError(Errc::NodeOutside, "path source " + std::to_string(x));
    check_exit(h, exit);
    Dfs dfs{h, exit, internal_succs(h), {}, {}, {}, max_len, simple};
    dfs.run(x);
    std::sort(dfs.out.paths.begin(), dfs.out.paths.end());
    return std::move(dfs.out);
}

// One backward pass per exit edge over an acyclic graph: every path is
// simple there, and composition distributes over the pointwise sum, so the
// factored propagation yields exactly the enumerator's path sums at
// O(edges) per exit instead of one enumeration per source. Returns nullopt
// when the graph has a cycle (detected by the same Kahn pass).
std::optional<std::map<std::pair<NodeId, NodePair>, EdgeFn>> acyclic_summaries(
    const FlowGraph& h) {
    std::map<NodeId, std::vector<NodeId>> succs = internal_succs(h);
    std::map<NodeId, std::size_t> indeg;
    for (NodeId x : h.nodes()) indeg[x] = 0;
    for (const auto& [x, ws] : succs)
        for (NodeId w : ws) ++indeg[w];
    std::set<NodeId> ready;
    for (const auto& [x, d] : indeg)
        if (d == 0) ready.insert(x);
    std::vector<NodeId> order;
    while (!ready.empty()) {
        NodeId x = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(x);
        for (NodeId w : succs.at(x))
            if (--indeg[w] == 0) ready.insert(w);
    }
    if (order.size() != h.nodes().size()) return std::nullopt;

    std::map<std::pair<NodeId, NodePair>, EdgeFn> fns;
    for (const auto& [key, fn] : h.edges()) {
        if (h.contains(key.second)) continue;
        std::map<NodeId, EdgeFn> to_exit;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            NodeId y = *it;
            EdgeFn acc = y == key.first ? fn : EdgeFn::zero(h.tag());
            for (NodeId w : succs.at(y))
                acc = fn_sum(acc, fn_compose(*h.edge(y, w), to_exit.at(w)));
            to_exit.emplace(y, std::move(acc));
        }
        for (auto& [y, f] : to_exit)
            if (!f.is_zero()) fns.emplace(std::make_pair(y, key), std::move(f));
    }
    return fns;
}

InflowMap validated_inflow(const FlowGraph& h, const InflowMap& in2) {
    // Reuse the graph constructor's inflow validation.
    FlowGraph g(h.tag(), h.nodes(), {}, in2);
    return g.inflow();
}

Outflow summary_transfer(const FlowGraph& h, const SourceSummary& sums, const InflowMap& in2) {
    FlowGraph g(h.tag(), h.nodes(), h.edges(), validated_inflow(h, in2));
    Outflow out;
    for (const auto& [key, fn] : h.edges()) {
        if (h.contains(key.second)) continue;
        FlowValue v = FlowValue::zero(h.tag());
        for (NodeId x : h.nodes()) v = mon_add(v, fn_apply(sums.at(x, key), g.inflow_at(x)));
        out.emplace(key, std::move(v));
    }
    return out;
}

}  // namespace

std::string Path::str() const {
    std::string s;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) s += "·";
        s += std::to_string(nodes[i]);
    }
    return s;
}

EdgeFn SourceSummary::at(NodeId source, NodePair exit) const {
    auto it = fns_.find({source, exit});
    return it == fns_.end() ? EdgeFn::zero(tag_) : it->second;
}

EdgeFn path_fn(const FlowGraph& h, const Path& p) {
    if (p.nodes.size() < 2) throw FlowError(Errc::NotAPath, "fewer than two nodes");
    if (h.contains(p.nodes.back()))
        throw FlowError(Errc::NotAPath,
                        "last node " + std::to_string(p.nodes.back()) + " is internal");
    EdgeFn acc = EdgeFn::identity(h.tag());
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
        if (!h.contains(p.nodes[i]))
            throw FlowError(Errc::NotAPath, "node " + std::to_string(p.nodes[i]) + " not in X");
        const EdgeFn* e = h.edge(p.nodes[i], p.nodes[i + 1]);
        if (e == nullptr || e->is_zero())
            throw FlowError(Errc::NotAPath, "no edge (" + std::to_string(p.nodes[i]) + ", " +
                                                std::to_string(p.nodes[i + 1]) + ")");
        acc = fn_compose(acc, *e);
    }
    return acc;
}

PathSet enum_paths(const FlowGraph& h, NodeId x, NodePair exit, std::size_t max_len) {
    return enumerate(h, x, exit, max_len, /*simple=*/false);
}

PathSet enum_simple_paths(const FlowGraph& h, NodeId x, NodePair exit) {
    return enumerate(h, x, exit, h.nodes().size(), /*simple=*/true);
}

SourceSummary source_summaries(const FlowGraph& h, PathMode mode) {
    if (mode == PathMode::All) {
        if (!h.acyclic()) throw FlowError(Errc::CyclicGraph, "all-paths summary needs acyclicity");
    } else {
        if (auto fast = acyclic_summaries(h)) return SourceSummary(h.tag(), std::move(*fast));
        if (!tag_idempotent(h.tag()))
            throw FlowError(Errc::RequiresIdempotent,
                            std::string(tag_name(h.tag())) + " on a cyclic graph");
        if (!h.all_edges_decreasing())
            throw FlowError(Errc::RequiresDecreasing, "non-decreasing edge on a cyclic graph");
    }
    std::map<std::pair<NodeId, NodePair>, EdgeFn> fns;
    for (const auto& [key, fn] : h.edges()) {
        if (h.contains(key.second)) continue;
        for (NodeId x : h.nodes()) {
            PathSet ps = mode == PathMode::Simple ? enum_simple_paths(h, x, key)
                                                  : enum_paths(h, x, key, h.nodes().size());
            EdgeFn sum = EdgeFn::zero(h.tag());
            for (const Path& p : ps.paths) sum = fn_sum(sum, path_fn(h, p));
            if (!sum.is_zero()) fns.emplace(std::make_pair(x, key), std::move(sum));
        }
    }
    return SourceSummary(h.tag(), std::move(fns));
}

Outflow closed_form_transfer(const FlowGraph& h, const InflowMap& in2) {
    return summary_transfer(h, source_summaries(h, PathMode::All), in2);
}

Outflow simple_path_transfer(const FlowGraph& h, const InflowMap& in2) {
    return summary_transfer(h, source_summaries(h, PathMode::Simple), in2);
}

bool path_replacement_holds(const FlowGraph& h1, const FlowGraph& h2,
                            const std::set<NodeId>& sources) {
    detail::require_same_tag(h1.tag(), h2.tag(), "path_replacement_holds");
    if (h1.nodes() != h2.nodes())
        throw FlowError(Errc::NodeSetMismatch, "path replacement needs equal node sets");
    if (!tag_idempotent(h1.tag()))
        throw FlowError(Errc::RequiresIdempotent, tag_name(h1.tag()));
    if (!h1.all_edges_decreasing() || !h2.all_edges_decreasing())
        throw FlowError(Errc::RequiresDecreasing, "non-decreasing edge");
    SourceSummary sums2 = source_summaries(h2, PathMode::Simple);
    for (NodeId x : sources) {
        if (!h1.contains(x))
            throw FlowError(Errc::NodeOutside, "source " + std::to_string(x));
        for (const auto& [key, fn] : h1.edges()) {
            if (h1.contains(key.second)) continue;
            EdgeFn bound = sums2.at(x, key);
            for (const Path& p : enum_simple_paths(h1, x, key).paths)
                if (!fn_leq(path_fn(h1, p), bound)) return false;
        }
    }
    return true;
}

}  // namespace flowfoot
