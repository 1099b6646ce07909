#include "flowfoot/graph.hpp"

#include <algorithm>
#include <deque>
#include <vector>

namespace flowfoot {

namespace {

constexpr int kRoundCap = 10000;

// Adjacency restricted to edges between internal nodes.
struct InternalGraph {
    std::map<NodeId, std::vector<NodeId>> succs;
    std::map<NodeId, std::vector<NodeId>> preds;

    explicit InternalGraph(const FlowGraph& h) {
        for (NodeId x : h.nodes()) {
            succs[x];
            preds[x];
        }
        for (const auto& [key, fn] : h.edges()) {
            if (h.contains(key.second)) {
                succs[key.first].push_back(key.second);
                preds[key.second].push_back(key.first);
            }
        }
    }
};

// Kahn's algorithm; nullopt when the internal subgraph has a cycle.
std::optional<std::vector<NodeId>> topological_order(const FlowGraph& h) {
    InternalGraph g(h);
    std::map<NodeId, std::size_t> indeg;
    for (NodeId x : h.nodes()) indeg[x] = g.preds[x].size();
    std::set<NodeId> ready;  // ordered for determinism
    for (auto& [x, d] : indeg)
        if (d == 0) ready.insert(x);
    std::vector<NodeId> order;
    while (!ready.empty()) {
        NodeId x = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(x);
        for (NodeId y : g.succs[x])
            if (--indeg[y] == 0) ready.insert(y);
    }
    if (order.size() != h.nodes().size()) return std::nullopt;
    return order;
}

std::set<NodeId> forward_reachable(const InternalGraph& g, const std::set<NodeId>& from) {
    std::set<NodeId> seen = from;
    std::deque<NodeId> work(from.begin(), from.end());
    while (!work.empty()) {
        NodeId x = work.front();
        work.pop_front();
        auto it = g.succs.find(x);
        if (it == g.succs.end()) continue;
        for (NodeId y : it->second)
            if (seen.insert(y).second) work.push_back(y);
    }
    return seen;
}

// Nodes on some cycle of the internal subgraph (nontrivial SCC or self-loop).
std::set<NodeId> cycle_nodes(const FlowGraph& h) {
    InternalGraph g(h);
    // Iterative Tarjan.
    std::map<NodeId, int> index, low;
    std::map<NodeId, bool> on_stack;
    std::vector<NodeId> stack;
    std::set<NodeId> result;
    int next = 0;

    struct Frame {
        NodeId v;
        std::size_t child = 0;
    };
    for (NodeId root : h.nodes()) {
        if (index.count(root)) continue;
        std::vector<Frame> frames{{root}};
        index[root] = low[root] = next++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& succ = g.succs.at(f.v);
            if (f.child < succ.size()) {
                NodeId w = succ[f.child++];
                if (!index.count(w)) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                NodeId v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    std::vector<NodeId> scc;
                    while (true) {
                        NodeId w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        scc.push_back(w);
                        if (w == v) break;
                    }
                    bool cyclic = scc.size() > 1;
                    if (!cyclic) {
                        for (NodeId s : g.succs.at(v))
                            if (s == v) cyclic = true;
                    }
                    if (cyclic) result.insert(scc.begin(), scc.end());
                }
            }
        }
    }
    return result;
}

Flow evaluate_in_order(const FlowGraph& h, const std::vector<NodeId>& order,
                       const std::map<NodeId, FlowValue>& pinned) {
    Flow fl;
    for (const auto& [x, v] : pinned) fl[x] = v;
    for (NodeId x : order) {
        if (fl.count(x)) continue;
        FlowValue v = h.inflow_at(x);
        for (NodeId y : h.nodes()) {
            if (const EdgeFn* e = h.edge(y, x)) v = mon_add(v, fn_apply(*e, fl.at(y)));
        }
        fl[x] = v;
    }
    return fl;
}

// Counting with cycles: a node diverges to ∞ exactly when it is reachable
// from a cycle that is itself fed by nonzero inflow (all stored scales
// are >= 1, so any fed cycle pumps without bound). The rest of the graph is
// acyclic after removing the diverging part and evaluates directly.
Flow solve_counting_cyclic(const FlowGraph& h) {
    InternalGraph g(h);
    std::set<NodeId> fed;
    for (NodeId x : h.nodes())
        if (!h.inflow_at(x).is_zero()) fed.insert(x);
    std::set<NodeId> reach = forward_reachable(g, fed);
    std::set<NodeId> cyc = cycle_nodes(h);
    std::set<NodeId> pumped;
    std::set_intersection(reach.begin(), reach.end(), cyc.begin(), cyc.end(),
                          std::inserter(pumped, pumped.begin()));
    std::set<NodeId> diverging = forward_reachable(g, pumped);

    std::map<NodeId, FlowValue> pinned;
    for (NodeId x : diverging) pinned[x] = FlowValue::counting(ExtNat::inf());
    for (NodeId x : h.nodes())
        if (!reach.count(x)) pinned.emplace(x, FlowValue::zero(h.tag()));

    // The rest is acyclic: any remaining cycle would be unfed (flow 0).
    std::vector<NodeId> order;
    std::map<NodeId, std::size_t> indeg;
    std::set<NodeId> rest;
    for (NodeId x : h.nodes())
        if (!pinned.count(x)) rest.insert(x);
    for (NodeId x : rest) {
        std::size_t d = 0;
        for (NodeId p : g.preds[x])
            if (rest.count(p)) ++d;
        indeg[x] = d;
    }
    std::set<NodeId> ready;
    for (auto& [x, d] : indeg)
        if (d == 0) ready.insert(x);
    while (!ready.empty()) {
        NodeId x = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(x);
        for (NodeId y : g.succs[x])
            if (rest.count(y) && --indeg[y] == 0) ready.insert(y);
    }
    if (order.size() != rest.size())
        throw FlowError(Errc::NonTermination, "unexpected residual cycle");
    return evaluate_in_order(h, order, pinned);
}

// Round-based ascending iteration from the all-zero assignment. Converges
// for the idempotent monoids with the decreasing edge algebras used here;
// the round cap is the backstop.
Flow solve_by_iteration(const FlowGraph& h) {
    Flow cur;
    for (NodeId x : h.nodes()) cur[x] = FlowValue::zero(h.tag());
    for (int round = 0; round < kRoundCap; ++round) {
        bool changed = false;
        for (NodeId x : h.nodes()) {
            FlowValue v = h.inflow_at(x);
            for (NodeId y : h.nodes()) {
                if (const EdgeFn* e = h.edge(y, x)) v = mon_add(v, fn_apply(*e, cur.at(y)));
            }
            if (v != cur.at(x)) {
                cur[x] = std::move(v);
                changed = true;
            }
        }
        if (!changed) return cur;
    }
    throw FlowError(Errc::NonTermination,
                    "flow did not stabilize within " + std::to_string(kRoundCap) + " rounds");
}

Flow solve(const FlowGraph& h) {
    if (auto order = topological_order(h)) return evaluate_in_order(h, *order, {});
    if (h.tag() == MonoidTag::Counting) return solve_counting_cyclic(h);
    return solve_by_iteration(h);
}

}  // namespace

FlowGraph::FlowGraph(MonoidTag tag, std::set<NodeId> nodes, EdgeMap edges, InflowMap inflow)
    : tag_(tag), nodes_(std::move(nodes)), cache_(std::make_shared<FlowCache>()) {
    for (auto& [key, fn] : edges) {
        detail::require_same_tag(tag_, fn.tag, "mk_graph edge");
        if (!nodes_.count(key.first))
            throw FlowError(Errc::EdgeSourceOutside,
                            "edge source " + std::to_string(key.first) + " not in X");
        if (!fn.is_zero()) edges_.emplace(key, std::move(fn));
    }
    for (auto& [key, val] : inflow) {
        detail::require_same_tag(tag_, val.tag, "mk_graph inflow");
        if (nodes_.count(key.first))
            throw FlowError(Errc::InflowSourceInside,
                            "inflow source " + std::to_string(key.first) + " is in X");
        if (!nodes_.count(key.second))
            throw FlowError(Errc::InflowTargetOutside,
                            "inflow target " + std::to_string(key.second) + " not in X");
        if (!val.is_zero()) inflow_.emplace(key, std::move(val));
    }
}

FlowGraph mk_graph(MonoidTag tag, std::set<NodeId> nodes, EdgeMap edges, InflowMap inflow) {
    return FlowGraph(tag, std::move(nodes), std::move(edges), std::move(inflow));
}

const EdgeFn* FlowGraph::edge(NodeId from, NodeId to) const {
    auto it = edges_.find({from, to});
    return it == edges_.end() ? nullptr : &it->second;
}

FlowValue FlowGraph::inflow_at(NodeId x) const {
    if (!nodes_.count(x))
        throw FlowError(Errc::NodeOutside, "inflow_at(" + std::to_string(x) + ")");
    FlowValue v = FlowValue::zero(tag_);
    for (const auto& [key, val] : inflow_)
        if (key.second == x) v = mon_add(v, val);
    return v;
}

const Flow& FlowGraph::flow() const {
    std::call_once(cache_->once, [this] { cache_->flow = solve(*this); });
    if (!cache_->flow) cache_->flow = solve(*this);  // previous attempt threw
    return *cache_->flow;
}

bool FlowGraph::acyclic() const { return topological_order(*this).has_value(); }

bool FlowGraph::all_edges_decreasing() const {
    for (const auto& [key, fn] : edges_)
        if (!fn_class(fn).decreasing) return false;
    return true;
}

Flow compute_flow(const FlowGraph& h) { return h.flow(); }

Outflow outflow(const FlowGraph& h) {
    Outflow out;
    const Flow& fl = h.flow();
    for (const auto& [key, fn] : h.edges()) {
        if (!h.contains(key.second)) out.emplace(key, fn_apply(fn, fl.at(key.first)));
    }
    return out;
}

Outflow transfer_eval(const FlowGraph& h, const InflowMap& in2) {
    FlowGraph g(h.tag(), h.nodes(), h.edges(), in2);
    return outflow(g);
}

FlowGraph restrict_graph(const FlowGraph& h, const std::set<NodeId>& Y) {
    std::set<NodeId> nodes;
    std::set_intersection(h.nodes().begin(), h.nodes().end(), Y.begin(), Y.end(),
                          std::inserter(nodes, nodes.begin()));
    EdgeMap edges;
    for (const auto& [key, fn] : h.edges())
        if (nodes.count(key.first)) edges.emplace(key, fn);
    InflowMap in;
    for (const auto& [key, val] : h.inflow())
        if (nodes.count(key.second)) in.emplace(key, val);
    bool need_flow = false;
    for (const auto& [key, fn] : h.edges())
        if (!nodes.count(key.first) && nodes.count(key.second)) need_flow = true;
    if (need_flow) {
        const Flow& fl = h.flow();
        for (const auto& [key, fn] : h.edges()) {
            if (!nodes.count(key.first) && nodes.count(key.second)) {
                FlowValue v = fn_apply(fn, fl.at(key.first));
                if (!v.is_zero()) in.emplace(key, std::move(v));
            }
        }
    }
    return FlowGraph(h.tag(), std::move(nodes), std::move(edges), std::move(in));
}

ComposeResult compose(const FlowGraph& h1, const FlowGraph& h2) {
    detail::require_same_tag(h1.tag(), h2.tag(), "compose");
    ComposeResult res;

    for (NodeId x : h1.nodes()) {
        if (h2.contains(x)) {
            res.status = ComposeResult::Status::NodesOverlap;
            res.witness_a = x;
            res.detail = "node " + std::to_string(x) + " in both graphs";
            return res;
        }
    }

    // ## stage: the outflow of each graph must match the inflow expectation
    // of the other on every cross pair.
    auto check_boundary = [&res](const FlowGraph& a, const FlowGraph& b) {
        Outflow out_a = outflow(a);
        std::set<NodePair> keys;
        for (const auto& [key, v] : out_a)
            if (b.contains(key.second)) keys.insert(key);
        for (const auto& [key, v] : b.inflow())
            if (a.contains(key.first)) keys.insert(key);
        for (const NodePair& key : keys) {
            auto ito = out_a.find(key);
            FlowValue expected = FlowValue::zero(a.tag());
            if (auto iti = b.inflow().find(key); iti != b.inflow().end()) expected = iti->second;
            FlowValue actual = ito == out_a.end() ? FlowValue::zero(a.tag()) : ito->second;
            if (actual != expected) {
                res.status = ComposeResult::Status::BoundaryMismatch;
                res.witness_a = key.first;
                res.witness_b = key.second;
                res.detail = "outflow " + actual.str() + " vs inflow " + expected.str() +
                             " at (" + std::to_string(key.first) + ", " +
                             std::to_string(key.second) + ")";
                return false;
            }
        }
        return true;
    };
    if (!check_boundary(h1, h2) || !check_boundary(h2, h1)) return res;

    // h1 ⊎ h2: union, keeping only inflow entries from outside the union.
    std::set<NodeId> nodes = h1.nodes();
    nodes.insert(h2.nodes().begin(), h2.nodes().end());
    EdgeMap edges = h1.edges();
    edges.insert(h2.edges().begin(), h2.edges().end());
    InflowMap in;
    for (const FlowGraph* h : {&h1, &h2})
        for (const auto& [key, val] : h->inflow())
            if (!nodes.count(key.first)) in.emplace(key, val);
    FlowGraph u(h1.tag(), std::move(nodes), std::move(edges), std::move(in));

    // # stage: component flows must survive in the union.
    const Flow& fl = u.flow();
    for (const FlowGraph* h : {&h1, &h2}) {
        for (const auto& [x, before] : h->flow()) {
            const FlowValue& after = fl.at(x);
            if (after != before) {
                res.status = ComposeResult::Status::VanishingFlow;
                res.witness_a = x;
                res.detail = "flow at " + std::to_string(x) + " was " + before.str() +
                             ", is " + after.str() + " in the union";
                return res;
            }
        }
    }
    res.graph = std::move(u);
    return res;
}

bool graphs_equal(const FlowGraph& h1, const FlowGraph& h2) {
    return h1.tag() == h2.tag() && h1.nodes() == h2.nodes() && h1.edges() == h2.edges() &&
           h1.inflow() == h2.inflow();
}

}  // namespace flowfoot
