#include "flowfoot/oracle.hpp"

#include <algorithm>

#include "flowfoot/generate.hpp"

namespace flowfoot {

namespace {

// Outflow with zero entries dropped, so graphs with different boundary-edge
// sets but identical behavior compare equal.
Outflow nonzero(Outflow out) {
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

std::vector<FlowValue> values_below(MonoidTag tag, const FlowValue& v, const EnumBudget& budget) {
    std::vector<FlowValue> out;
    if (tag == MonoidTag::Keyset) {
        std::vector<Bound> members = v.set.members_in(budget.keyset_universe);
        if (members.size() > 20)
            throw FlowError(Errc::OracleInfeasible, "keyset down-set too large");
        std::uint64_t count = std::uint64_t{1} << members.size();
        for (std::uint64_t mask = 0; mask < count; ++mask) {
            IntervalSet s;
            for (std::size_t i = 0; i < members.size(); ++i)
                if (mask & (std::uint64_t{1} << i)) s = s.unite(IntervalSet::singleton(members[i]));
            out.push_back(FlowValue::keyset(std::move(s)));
        }
        return out;
    }
    if (v.num.is_inf())
        throw FlowError(Errc::OracleInfeasible, "infinite value has an infinite down-set");
    for (std::uint64_t n = 0; n <= v.num.raw(); ++n)
        out.push_back(tag == MonoidTag::Counting ? FlowValue::counting(n) : FlowValue::maxcap(n));
    return out;
}

}  // namespace

EnumBudget::EnumBudget() {
    keyset_universe.push_back(Bound::neg_inf());
    for (std::int64_t k = 0; k <= 7; ++k) keyset_universe.push_back(Bound::at(k));
    keyset_universe.push_back(Bound::pos_inf());
}

EnumBudget tailored_budget(const FlowGraph& h1, const FlowGraph& h2) {
    EnumBudget budget;
    if (h1.tag() != MonoidTag::Keyset) return budget;
    std::set<std::int64_t> endpoints;
    auto collect = [&endpoints](const IntervalSet& s) {
        for (const Interval& iv : s.intervals()) {
            if (iv.lo.kind == BoundKind::Int) endpoints.insert(iv.lo.k);
            if (iv.hi.kind == BoundKind::Int) endpoints.insert(iv.hi.k);
        }
    };
    for (const FlowGraph* h : {&h1, &h2}) {
        for (const auto& [key, fn] : h->edges()) collect(fn.set);
        for (const auto& [key, val] : h->inflow()) collect(val.set);
    }
    // One representative integer per atomic region: the endpoints themselves
    // plus a neighbor on each side, which also covers the gaps between them.
    std::set<std::int64_t> members;
    for (std::int64_t k : endpoints) {
        members.insert(k - 1);
        members.insert(k);
        members.insert(k + 1);
    }
    if (members.empty()) members.insert(0);
    budget.keyset_universe.clear();
    budget.keyset_universe.push_back(Bound::neg_inf());
    for (std::int64_t k : members) budget.keyset_universe.push_back(Bound::at(k));
    budget.keyset_universe.push_back(Bound::pos_inf());
    return budget;
}

std::vector<InflowMap> enum_inflows_below(MonoidTag tag, const InflowMap& in0,
                                          const EnumBudget& budget) {
    std::vector<NodePair> keys;
    std::vector<std::vector<FlowValue>> options;
    std::uint64_t total = 1;
    for (const auto& [key, val] : in0) {
        keys.push_back(key);
        options.push_back(values_below(tag, val, budget));
        if (total > budget.max_inflows / options.back().size())
            throw FlowError(Errc::OracleInfeasible, "more than " +
                                                        std::to_string(budget.max_inflows) +
                                                        " inflows to enumerate");
        total *= options.back().size();
    }
    std::vector<InflowMap> result;
    result.reserve(total);
    std::vector<std::size_t> idx(keys.size(), 0);
    for (std::uint64_t n = 0; n < total; ++n) {
        InflowMap in;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const FlowValue& v = options[i][idx[i]];
            if (!v.is_zero()) in.emplace(keys[i], v);
        }
        result.push_back(std::move(in));
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (++idx[i] < options[i].size()) break;
            idx[i] = 0;
        }
    }
    return result;
}

bool oracle_ctx_equiv(const FlowGraph& h1, const FlowGraph& h2, const EnumBudget& budget) {
    if (h1.tag() != h2.tag() || h1.nodes() != h2.nodes() || h1.inflow() != h2.inflow())
        return false;
    for (const InflowMap& in : enum_inflows_below(h1.tag(), h1.inflow(), budget)) {
        if (nonzero(transfer_eval(h1, in)) != nonzero(transfer_eval(h2, in))) return false;
    }
    return true;
}

std::set<std::set<NodeId>> oracle_footprints(const FlowGraph& h1, const FlowGraph& h2,
                                             const EnumBudget& budget) {
    std::set<std::set<NodeId>> result;
    if (h1.tag() != h2.tag() || h1.nodes() != h2.nodes() || h1.inflow() != h2.inflow())
        return result;
    std::vector<NodeId> nodes(h1.nodes().begin(), h1.nodes().end());
    if (nodes.size() > budget.max_subset_nodes)
        throw FlowError(Errc::OracleInfeasible,
                        "subset enumeration over " + std::to_string(nodes.size()) + " nodes");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nodes.size()); ++mask) {
        std::set<NodeId> Y, frame;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            (mask & (std::uint64_t{1} << i) ? Y : frame).insert(nodes[i]);
        if (!graphs_equal(restrict_graph(h1, frame), restrict_graph(h2, frame))) continue;
        if (oracle_ctx_equiv(restrict_graph(h1, Y), restrict_graph(h2, Y), budget))
            result.insert(std::move(Y));
    }
    return result;
}

namespace {

std::string show_status(ComposeResult::Status s) {
    switch (s) {
        case ComposeResult::Status::Ok: return "defined";
        case ComposeResult::Status::NodesOverlap: return "nodes-overlap";
        case ComposeResult::Status::BoundaryMismatch: return "boundary-mismatch";
        case ComposeResult::Status::VanishingFlow: return "vanishing-flow";
    }
    return "?";
}

}  // namespace

LawReport check_separation_laws(MonoidTag tag, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    LawReport report;
    FlowGraph unit(tag, {}, {}, {});

    auto fail = [&report](const std::string& law, const std::string& why) {
        report.failures.push_back(law + ": " + why);
    };

    for (int i = 0; i < samples; ++i) {
        ++report.checked;
        FlowGraph h1, h2, h3;
        if (i % 2 == 0) {
            // Split one parent into three parts: all compositions defined.
            RandomGraphOpts opts;
            opts.min_nodes = 3;
            opts.max_nodes = 7;
            FlowGraph parent = random_flow_graph(tag, rng, opts);
            std::set<NodeId> a, b, c;
            for (NodeId x : parent.nodes()) {
                switch (rng() % 3) {
                    case 0: a.insert(x); break;
                    case 1: b.insert(x); break;
                    default: c.insert(x); break;
                }
            }
            h1 = restrict_graph(parent, a);
            h2 = restrict_graph(parent, b);
            h3 = restrict_graph(parent, c);
        } else {
            RandomGraphOpts opts;
            opts.min_nodes = 1;
            opts.max_nodes = 4;
            h1 = random_flow_graph(tag, rng, opts);
            opts.base_id = 1 + rng() % 6;  // overlap or disjointness by chance
            h2 = random_flow_graph(tag, rng, opts);
            opts.base_id = 1 + rng() % 9;
            h3 = random_flow_graph(tag, rng, opts);
        }

        // Unit.
        ComposeResult u1 = compose(h1, unit);
        ComposeResult u2 = compose(unit, h1);
        if (!u1.ok() || !graphs_equal(*u1.graph, h1))
            fail("unit", "h * empty != h (" + show_status(u1.status) + ")");
        if (!u2.ok() || !graphs_equal(*u2.graph, h1))
            fail("unit", "empty * h != h (" + show_status(u2.status) + ")");

        // Commutativity (of definedness and of the result).
        ComposeResult c12 = compose(h1, h2);
        ComposeResult c21 = compose(h2, h1);
        if (c12.ok() != c21.ok())
            fail("commutativity", "definedness differs: " + show_status(c12.status) + " vs " +
                                      show_status(c21.status));
        else if (c12.ok() && !graphs_equal(*c12.graph, *c21.graph))
            fail("commutativity", "h1*h2 != h2*h1");

        // Associativity with definedness.
        ComposeResult c23 = compose(h2, h3);
        std::optional<FlowGraph> left, right;
        if (c12.ok()) {
            ComposeResult r = compose(*c12.graph, h3);
            if (r.ok()) left = std::move(r.graph);
        }
        if (c23.ok()) {
            ComposeResult r = compose(h1, *c23.graph);
            if (r.ok()) right = std::move(r.graph);
        }
        if (left.has_value() != right.has_value())
            fail("associativity", "definedness differs between (h1*h2)*h3 and h1*(h2*h3)");
        else if (left && !graphs_equal(*left, *right))
            fail("associativity", "(h1*h2)*h3 != h1*(h2*h3)");
    }
    return report;
}

}  // namespace flowfoot
