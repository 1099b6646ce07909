#pragma once

// Shared fixtures: small hand-checked graphs used across the test suite.

#include <fstream>
#include <sstream>

#include "flowfoot/footprint.hpp"
#include "flowfoot/generate.hpp"
#include "flowfoot/serialize.hpp"

namespace flowfoot::testing {

// --- Counting composition pair -----------------------------------------
// h1 over {x,y,z}, h2 over {r,u,v}; composing them routes one unit from the
// external source through r into both components.
// Ids: x=1 y=2 z=3 r=4 u=5 v=6 (w=7, source=100 external).

inline FlowGraph count_pair_h1() {
    EdgeMap e;
    e.emplace(NodePair{1, 2}, EdgeFn::scale(1));
    e.emplace(NodePair{1, 3}, EdgeFn::scale(1));
    e.emplace(NodePair{3, 5}, EdgeFn::scale(1));
    InflowMap in;
    in.emplace(NodePair{4, 1}, FlowValue::counting(1));
    in.emplace(NodePair{4, 2}, FlowValue::counting(1));
    return FlowGraph(MonoidTag::Counting, {1, 2, 3}, std::move(e), std::move(in));
}

inline FlowGraph count_pair_h2() {
    EdgeMap e;
    e.emplace(NodePair{4, 1}, EdgeFn::scale(1));
    e.emplace(NodePair{4, 2}, EdgeFn::scale(1));
    e.emplace(NodePair{5, 6}, EdgeFn::scale(1));
    InflowMap in;
    in.emplace(NodePair{100, 4}, FlowValue::counting(1));
    in.emplace(NodePair{3, 5}, FlowValue::counting(1));
    return FlowGraph(MonoidTag::Counting, {4, 5, 6}, std::move(e), std::move(in));
}

// A pair whose union is an inflow-free cycle: every unit of flow vanishes,
// so the composition must be rejected. Ids: x=1 u=5 v=6 w=7.

inline FlowGraph vanishing_h1() {
    EdgeMap e;
    e.emplace(NodePair{1, 5}, EdgeFn::scale(1));
    e.emplace(NodePair{5, 6}, EdgeFn::scale(1));
    InflowMap in;
    in.emplace(NodePair{7, 1}, FlowValue::counting(1));
    return FlowGraph(MonoidTag::Counting, {1, 5}, std::move(e), std::move(in));
}

inline FlowGraph vanishing_h2() {
    EdgeMap e;
    e.emplace(NodePair{6, 7}, EdgeFn::scale(1));
    e.emplace(NodePair{7, 1}, EdgeFn::scale(1));
    InflowMap in;
    in.emplace(NodePair{5, 6}, FlowValue::counting(1));
    return FlowGraph(MonoidTag::Counting, {6, 7}, std::move(e), std::move(in));
}

// --- Keyset unlink pair -------------------------------------------------
// Sorted list l(6) -> t(marked) -> r(8) with searches (3,∞] entering at l;
// the after graph routes l directly to r. Ids: l=1 t=2 r=3, v=100 external.

inline FlowGraph keyset_unlink_before() {
    EdgeMap e;
    e.emplace(NodePair{1, 2}, EdgeFn::lambda_key(6));
    e.emplace(NodePair{2, 3}, EdgeFn::lambda_neg_inf());
    e.emplace(NodePair{3, 100}, EdgeFn::lambda_key(8));
    InflowMap in;
    in.emplace(NodePair{0, 1}, FlowValue::keyset(IntervalSet::above(3)));
    return FlowGraph(MonoidTag::Keyset, {1, 2, 3}, std::move(e), std::move(in));
}

inline FlowGraph keyset_unlink_after() {
    EdgeMap e;
    e.emplace(NodePair{1, 3}, EdgeFn::lambda_key(6));
    e.emplace(NodePair{2, 3}, EdgeFn::lambda_neg_inf());
    e.emplace(NodePair{3, 100}, EdgeFn::lambda_key(8));
    InflowMap in;
    in.emplace(NodePair{0, 1}, FlowValue::keyset(IntervalSet::above(3)));
    return FlowGraph(MonoidTag::Keyset, {1, 2, 3}, std::move(e), std::move(in));
}

// --- Counting insert pair -----------------------------------------------
// Path-counting graph; the after graph adds the edge r -> u, which doubles
// the flow of u and v. Ids: r=1 x=2 y=3 z=4 u=5 v=6, source=0 external.

inline FlowGraph count_insert_before() {
    EdgeMap e;
    e.emplace(NodePair{1, 2}, EdgeFn::scale(1));
    e.emplace(NodePair{1, 3}, EdgeFn::scale(1));
    e.emplace(NodePair{2, 3}, EdgeFn::scale(1));
    e.emplace(NodePair{2, 4}, EdgeFn::scale(1));
    e.emplace(NodePair{4, 5}, EdgeFn::scale(1));
    e.emplace(NodePair{5, 6}, EdgeFn::scale(1));
    InflowMap in;
    in.emplace(NodePair{0, 1}, FlowValue::counting(1));
    return FlowGraph(MonoidTag::Counting, {1, 2, 3, 4, 5, 6}, std::move(e), std::move(in));
}

inline FlowGraph count_insert_after() {
    FlowGraph before = count_insert_before();
    EdgeMap e = before.edges();
    e.emplace(NodePair{1, 5}, EdgeFn::scale(1));
    return FlowGraph(MonoidTag::Counting, before.nodes(), std::move(e), before.inflow());
}

// --- MaxCap swing pair --------------------------------------------------
// The incompleteness witness: rerouting x from z to y preserves behavior,
// but the iterative footprint computation overshoots to Top even though
// {x,y,z,u} is a footprint. Ids: x=1 y=2 z=3 u=4, v=100 external, source=0.

inline FlowGraph maxcap_swing_h1(std::uint64_t k = 2) {
    EdgeMap e;
    e.emplace(NodePair{1, 3}, EdgeFn::identity(MonoidTag::MaxCap));
    e.emplace(NodePair{3, 4}, EdgeFn::identity(MonoidTag::MaxCap));
    e.emplace(NodePair{4, 2}, EdgeFn::identity(MonoidTag::MaxCap));
    e.emplace(NodePair{2, 100}, EdgeFn::identity(MonoidTag::MaxCap));
    InflowMap in;
    in.emplace(NodePair{0, 1}, FlowValue::maxcap(k));
    return FlowGraph(MonoidTag::MaxCap, {1, 2, 3, 4}, std::move(e), std::move(in));
}

inline FlowGraph maxcap_swing_h2(std::uint64_t k = 2) {
    EdgeMap e;
    e.emplace(NodePair{1, 2}, EdgeFn::identity(MonoidTag::MaxCap));
    e.emplace(NodePair{2, 3}, EdgeFn::identity(MonoidTag::MaxCap));
    e.emplace(NodePair{3, 4}, EdgeFn::identity(MonoidTag::MaxCap));
    e.emplace(NodePair{4, 2}, EdgeFn::identity(MonoidTag::MaxCap));
    e.emplace(NodePair{2, 100}, EdgeFn::identity(MonoidTag::MaxCap));
    InflowMap in;
    in.emplace(NodePair{0, 1}, FlowValue::maxcap(k));
    return FlowGraph(MonoidTag::MaxCap, {1, 2, 3, 4}, std::move(e), std::move(in));
}

// --- MaxCap cycle-weakening pair ----------------------------------------
// Shared shape: 1 -> 2 -> 3 -> 4 -> 2 cycle with exit 2 -> 100; the second
// graph weakens the in-cycle edge 3 -> 4 to cap 1. The iteration's candidate
// grows into the cycle, so the acyclic-only summary methods must refuse
// while the simple-path method finds {2, 3, 4}.

inline FlowGraph maxcap_weaken_h1() {
    EdgeMap e;
    e.emplace(NodePair{1, 2}, EdgeFn::identity(MonoidTag::MaxCap));
    e.emplace(NodePair{2, 3}, EdgeFn::identity(MonoidTag::MaxCap));
    e.emplace(NodePair{3, 4}, EdgeFn::identity(MonoidTag::MaxCap));
    e.emplace(NodePair{4, 2}, EdgeFn::identity(MonoidTag::MaxCap));
    e.emplace(NodePair{2, 100}, EdgeFn::identity(MonoidTag::MaxCap));
    InflowMap in;
    in.emplace(NodePair{0, 1}, FlowValue::maxcap(2));
    return FlowGraph(MonoidTag::MaxCap, {1, 2, 3, 4}, std::move(e), std::move(in));
}

inline FlowGraph maxcap_weaken_h2() {
    FlowGraph h1 = maxcap_weaken_h1();
    EdgeMap e = h1.edges();
    e.at({3, 4}) = EdgeFn::cap(1);
    return FlowGraph(MonoidTag::MaxCap, h1.nodes(), std::move(e), h1.inflow());
}

inline Outflow drop_zero(Outflow out) {
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

// Exhaustive transfer-function equality over a finite probe universe.
// Because the edge algebras are distributive with F(0) = 0, tf(h1) = tf(h2)
// reduces to per-source probes; the probe values cover every atomic region
// an edge function built from the generator's atoms can distinguish.
inline bool oracle_transfer_equal(const FlowGraph& h1, const FlowGraph& h2) {
    if (h1.tag() != h2.tag() || h1.nodes() != h2.nodes()) return false;
    std::vector<FlowValue> probes;
    switch (h1.tag()) {
        case MonoidTag::Keyset: {
            IntervalSet u = IntervalSet::singleton(Bound::neg_inf())
                                .unite(IntervalSet::singleton(Bound::pos_inf()))
                                .unite(IntervalSet::closed(Bound::at(-1), Bound::at(9)));
            probes.push_back(FlowValue::keyset(u));
            break;
        }
        case MonoidTag::MaxCap:
            for (std::uint64_t v = 0; v <= 7; ++v) probes.push_back(FlowValue::maxcap(v));
            probes.push_back(FlowValue::maxcap(ExtNat::inf()));
            break;
        case MonoidTag::Counting:
            for (std::uint64_t v = 0; v <= 4; ++v) probes.push_back(FlowValue::counting(v));
            probes.push_back(FlowValue::counting(ExtNat::inf()));
            break;
    }
    const NodeId probe_source = 987654;
    for (NodeId x : h1.nodes()) {
        for (const FlowValue& v : probes) {
            InflowMap in;
            if (!v.is_zero()) in.emplace(NodePair{probe_source, x}, v);
            if (drop_zero(transfer_eval(h1, in)) != drop_zero(transfer_eval(h2, in)))
                return false;
        }
    }
    return true;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Location of the shipped fixture files; overridable for out-of-tree runs.
inline std::string fixture_path(const std::string& name) {
    const char* dir = std::getenv("FLOWFOOT_FIXTURES");
    return std::string(dir ? dir : FLOWFOOT_FIXTURE_DIR) + "/" + name;
}

}  // namespace flowfoot::testing
