#include "flowfoot/generate.hpp"

#include <algorithm>

namespace flowfoot {

namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

const char* op_name(ListOp op) {
    switch (op) {
        case ListOp::Insert: return "insert";
        case ListOp::Mark: return "mark";
        case ListOp::Unlink: return "unlink";
    }
    return "?";
}

EdgeFn list_edge_fn(const ListNodeSpec& n) {
    return n.marked ? EdgeFn::lambda_neg_inf() : EdgeFn::lambda_key(n.key);
}

EdgeMap list_edges(const std::vector<ListNodeSpec>& nodes) {
    EdgeMap edges;
    for (const ListNodeSpec& n : nodes)
        if (n.next != 0) edges.emplace(NodePair{n.id, n.next}, list_edge_fn(n));
    return edges;
}

}  // namespace

Instance gen_list_update(ListOp op, std::size_t length, std::uint64_t seed) {
    if (length < 2) throw FlowError(Errc::BadParams, "list length must be at least 2");
    std::mt19937_64 rng(seed);

    const NodeId tail = length + 10;  // external successor of the last node
    std::vector<ListNodeSpec> before(length);
    std::int64_t key = static_cast<std::int64_t>(pick(rng, 4));
    for (std::size_t i = 0; i < length; ++i) {
        before[i].id = i + 1;
        before[i].key = key;
        key += 2 + static_cast<std::int64_t>(pick(rng, 3));  // gaps admit inserts
        before[i].marked = i > 0 && pick(rng, 4) == 0;       // root stays unmarked
        before[i].next = i + 1 < length ? before[i].id + 1 : tail;
    }

    std::set<NodeId> node_set;
    for (const ListNodeSpec& n : before) node_set.insert(n.id);

    std::vector<ListNodeSpec> after = before;
    switch (op) {
        case ListOp::Insert: {
            // Fresh node between positions p and p+1; it exists isolated in
            // the before graph so both sides share one node set.
            std::size_t p = pick(rng, length - 1);
            ListNodeSpec fresh;
            fresh.id = length + 1;
            fresh.key = before[p].key + 1;
            fresh.next = before[p].next;
            node_set.insert(fresh.id);
            after[p].next = fresh.id;
            after.push_back(fresh);
            break;
        }
        case ListOp::Mark: {
            std::size_t p = 1 + pick(rng, length - 1);
            before[p].marked = false;
            after[p] = before[p];
            after[p].marked = true;
            break;
        }
        case ListOp::Unlink: {
            std::size_t p = 1 + pick(rng, length - 1);
            before[p].marked = true;  // only marked nodes get unlinked
            after[p] = before[p];
            after[p - 1].next = before[p].next;  // the unlinked node keeps its edge
            break;
        }
    }

    InflowMap inflow;
    inflow.emplace(NodePair{0, before[0].id}, FlowValue::keyset(IntervalSet::integers()));

    Instance inst;
    inst.tag = MonoidTag::Keyset;
    inst.before = FlowGraph(inst.tag, node_set, list_edges(before), inflow);
    inst.after = FlowGraph(inst.tag, node_set, list_edges(after), inflow);
    inst.label = std::string(op_name(op)) + "-n" + std::to_string(length) + "-s" +
                 std::to_string(seed);
    return inst;
}

FlowValue random_value(MonoidTag tag, std::mt19937_64& rng, bool finite) {
    switch (tag) {
        case MonoidTag::Counting:
            if (!finite && pick(rng, 8) == 0) return FlowValue::counting(ExtNat::inf());
            return FlowValue::counting(pick(rng, 4));
        case MonoidTag::MaxCap:
            if (!finite && pick(rng, 8) == 0) return FlowValue::maxcap(ExtNat::inf());
            return FlowValue::maxcap(pick(rng, 5));
        case MonoidTag::Keyset: {
            IntervalSet s;
            std::size_t members = pick(rng, 4);
            for (std::size_t i = 0; i < members; ++i) {
                switch (pick(rng, 10)) {
                    case 0: s = s.unite(IntervalSet::singleton(Bound::neg_inf())); break;
                    case 1: s = s.unite(IntervalSet::singleton(Bound::pos_inf())); break;
                    default:
                        s = s.unite(IntervalSet::singleton(Bound::at(pick(rng, 8))));
                        break;
                }
            }
            return FlowValue::keyset(std::move(s));
        }
    }
    return FlowValue::zero(tag);
}

EdgeFn random_fn(MonoidTag tag, std::mt19937_64& rng, bool decreasing_only) {
    switch (tag) {
        case MonoidTag::Counting:
            return EdgeFn::scale(pick(rng, decreasing_only ? 2 : 4));
        case MonoidTag::MaxCap:
            if (pick(rng, 4) == 0) return EdgeFn::identity(tag);
            return EdgeFn::cap(pick(rng, 6));
        case MonoidTag::Keyset:
            switch (pick(rng, 4)) {
                case 0: return EdgeFn::identity(tag);
                case 1: return EdgeFn::lambda_neg_inf();
                case 2: return EdgeFn::lambda_key(static_cast<std::int64_t>(pick(rng, 8)));
                default: return EdgeFn::intersect(random_value(tag, rng, true).set);
            }
    }
    return EdgeFn::zero(tag);
}

FlowGraph random_flow_graph(MonoidTag tag, std::mt19937_64& rng, const RandomGraphOpts& opts) {
    std::size_t n = opts.min_nodes + pick(rng, opts.max_nodes - opts.min_nodes + 1);
    std::set<NodeId> nodes;
    for (std::size_t i = 0; i < n; ++i) nodes.insert(opts.base_id + i);
    std::vector<NodeId> ext;
    for (std::size_t i = 0; i < opts.externals; ++i) ext.push_back(opts.base_id + n + i);

    auto flip = [&rng, &opts] { return (rng() % 1000) < opts.edge_density * 1000; };

    EdgeMap edges;
    for (NodeId a : nodes) {
        for (NodeId b : nodes) {
            if (a == b) continue;
            if (opts.force_acyclic && a > b) continue;
            if (flip()) edges.emplace(NodePair{a, b}, random_fn(tag, rng, opts.decreasing_only));
        }
        for (NodeId z : ext)
            if (flip()) edges.emplace(NodePair{a, z}, random_fn(tag, rng, opts.decreasing_only));
    }

    InflowMap inflow;
    for (NodeId z : ext)
        for (NodeId a : nodes)
            if (pick(rng, 3) == 0) {
                FlowValue v = random_value(tag, rng, opts.finite_values);
                if (!v.is_zero()) inflow.emplace(NodePair{z, a}, std::move(v));
            }
    return FlowGraph(tag, std::move(nodes), std::move(edges), std::move(inflow));
}

}  // namespace flowfoot
