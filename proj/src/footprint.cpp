#include "flowfoot/footprint.hpp"

#include <algorithm>

namespace flowfoot {

namespace {

void check_same_nodes(const FlowGraph& h1, const FlowGraph& h2) {
    detail::require_same_tag(h1.tag(), h2.tag(), "footprint");
    if (h1.nodes() != h2.nodes())
        throw FlowError(Errc::NodeSetMismatch, "graphs have different node sets");
}

std::set<NodeId> complement(const std::set<NodeId>& X, const std::set<NodeId>& Y) {
    std::set<NodeId> out;
    std::set_difference(X.begin(), X.end(), Y.begin(), Y.end(), std::inserter(out, out.begin()));
    return out;
}

// Per-source all-paths summaries by propagating edge functions in
// topological order, without enumerating paths.
SourceSummary naive_summaries(const FlowGraph& h) {
    std::map<NodeId, std::vector<NodeId>> preds;
    std::map<NodeId, std::size_t> indeg;
    for (NodeId x : h.nodes()) {
        preds[x];
        indeg[x] = 0;
    }
    for (const auto& [key, fn] : h.edges()) {
        if (h.contains(key.second)) {
            preds[key.second].push_back(key.first);
            ++indeg[key.second];
        }
    }
    std::set<NodeId> ready;
    for (auto& [x, d] : indeg)
        if (d == 0) ready.insert(x);
    std::vector<NodeId> order;
    while (!ready.empty()) {
        NodeId x = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(x);
        for (const auto& [key, fn] : h.edges())
            if (key.first == x && h.contains(key.second) && --indeg[key.second] == 0)
                ready.insert(key.second);
    }
    if (order.size() != h.nodes().size())
        throw FlowError(Errc::CyclicRestriction, "restriction has a cycle");

    std::map<std::pair<NodeId, NodePair>, EdgeFn> fns;
    for (NodeId s : h.nodes()) {
        // reach[x] = Σ over paths s..x inside h of the composed function
        std::map<NodeId, EdgeFn> reach;
        reach[s] = EdgeFn::identity(h.tag());
        for (NodeId x : order) {
            if (x == s) continue;
            EdgeFn sum = EdgeFn::zero(h.tag());
            for (NodeId y : preds[x]) {
                auto it = reach.find(y);
                if (it == reach.end()) continue;
                sum = fn_sum(sum, fn_compose(it->second, *h.edge(y, x)));
            }
            if (!sum.is_zero()) reach[x] = std::move(sum);
        }
        for (const auto& [key, fn] : h.edges()) {
            if (h.contains(key.second)) continue;
            auto it = reach.find(key.first);
            if (it == reach.end()) continue;
            EdgeFn f = fn_compose(it->second, fn);
            if (!f.is_zero()) fns.emplace(std::make_pair(s, key), std::move(f));
        }
    }
    return SourceSummary(h.tag(), std::move(fns));
}

SourceSummary summaries_for(const FlowGraph& h, Method method) {
    switch (method) {
        case Method::Naive:
            return naive_summaries(h);
        case Method::Dist:
            if (!h.acyclic()) throw FlowError(Errc::CyclicRestriction, "restriction has a cycle");
            return source_summaries(h, PathMode::All);
        case Method::New:
            return source_summaries(h, PathMode::Simple);
    }
    throw FlowError(Errc::BadParams, "unknown method");
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::Naive: return "naive";
        case Method::Dist: return "dist";
        case Method::New: return "new";
    }
    return "?";
}

std::set<NodeId> out_diff(const FlowGraph& h1, const FlowGraph& h2) {
    check_same_nodes(h1, h2);
    std::set<NodeId> diff;
    for (const auto& [key, fn] : h1.edges()) {
        const EdgeFn* other = h2.edge(key.first, key.second);
        if (other == nullptr || *other != fn) diff.insert(key.first);
    }
    for (const auto& [key, fn] : h2.edges())
        if (h1.edge(key.first, key.second) == nullptr) diff.insert(key.first);
    return diff;
}

std::set<NodeId> transfer_failure(const FlowGraph& h1, const FlowGraph& h2,
                                  const std::set<NodeId>& Z, Method method) {
    check_same_nodes(h1, h2);
    for (NodeId z : Z)
        if (!h1.contains(z))
            throw FlowError(Errc::NodeOutside, "candidate node " + std::to_string(z));
    FlowGraph r1 = restrict_graph(h1, Z);
    FlowGraph r2 = restrict_graph(h2, Z);
    SourceSummary s1 = summaries_for(r1, method);
    SourceSummary s2 = summaries_for(r2, method);

    std::set<NodePair> exits;
    for (const FlowGraph* r : {&r1, &r2})
        for (const auto& [key, fn] : r->edges())
            if (!r->contains(key.second)) exits.insert(key);

    std::set<NodeId> fail;
    for (const NodePair& exit : exits) {
        if (fail.count(exit.second)) continue;
        for (NodeId s : Z) {
            if (!fn_eq_below(s1.at(s, exit), s2.at(s, exit), r1.inflow_at(s))) {
                fail.insert(exit.second);
                break;
            }
        }
    }
    return fail;
}

ExtendStep extend_step(const FlowGraph& h1, const FlowGraph& h2, const std::set<NodeId>& Z,
                       Method method) {
    std::set<NodeId> tfail = transfer_failure(h1, h2, Z, method);
    for (NodeId x : tfail)
        if (!h1.contains(x)) return {true, {}};
    ExtendStep step;
    step.next = Z;
    std::set<NodeId> diff = out_diff(h1, h2);
    step.next.insert(diff.begin(), diff.end());
    step.next.insert(tfail.begin(), tfail.end());
    return step;
}

FootprintResult compute_footprint(const FlowGraph& h1, const FlowGraph& h2, Method method) {
    detail::require_same_tag(h1.tag(), h2.tag(), "footprint");
    if (h1.nodes() != h2.nodes() || h1.inflow() != h2.inflow())
        throw FlowError(Errc::NoFootprintByDefinition,
                        "graphs differ in node set or inflow");
    FootprintResult res;
    res.method = method;
    std::set<NodeId> Z = out_diff(h1, h2);
    res.trace.push_back(Z);
    if (Z.empty()) {
        res.nodes = {};
        return res;
    }
    for (std::size_t i = 0; i <= h1.nodes().size(); ++i) {
        ExtendStep step = extend_step(h1, h2, Z, method);
        if (step.top) {
            res.top = true;
            return res;
        }
        if (step.next == Z) {
            res.nodes = Z;
            return res;
        }
        Z = std::move(step.next);
        res.trace.push_back(Z);
    }
    // ext grows strictly within X, so |X| steps always suffice.
    throw FlowError(Errc::NonTermination, "footprint iteration did not stabilize");
}

bool verify_footprint(const FlowGraph& h1, const FlowGraph& h2, const std::set<NodeId>& Y,
                      VerifyMode mode, const EnumBudget& budget) {
    check_same_nodes(h1, h2);
    for (NodeId y : Y)
        if (!h1.contains(y)) throw FlowError(Errc::NodeOutside, std::to_string(y));
    if (h1.inflow() != h2.inflow()) return false;

    std::set<NodeId> frame = complement(h1.nodes(), Y);
    if (!graphs_equal(restrict_graph(h1, frame), restrict_graph(h2, frame))) return false;

    FlowGraph c1 = restrict_graph(h1, Y);
    FlowGraph c2 = restrict_graph(h2, Y);
    if (mode == VerifyMode::Oracle) return oracle_ctx_equiv(c1, c2, budget);

    if (c1.inflow() != c2.inflow()) return false;
    std::set<NodeId> diff = out_diff(c1, c2);
    return path_replacement_holds(c1, c2, diff) && path_replacement_holds(c2, c1, diff);
}

bool verify_footprint(const FlowGraph& h1, const FlowGraph& h2, const std::set<NodeId>& Y,
                      VerifyMode mode) {
    return verify_footprint(h1, h2, Y, mode, tailored_budget(h1, h2));
}

}  // namespace flowfoot
