#pragma once

#include <cstdint>
#include <vector>

#include "flowfoot/graph.hpp"

namespace flowfoot {

/// Enumeration limits for the brute-force checks. Keyset values are narrowed
/// to the declared finite key universe; enumeration is exhaustive within the
/// budget or fails with OracleInfeasible — it never samples silently.
struct EnumBudget {
    std::vector<Bound> keyset_universe;  // default {-∞, 0..7, +∞}
    std::uint64_t max_inflows = std::uint64_t{1} << 16;
    std::size_t max_subset_nodes = 5;

    EnumBudget();
};

/// Budget whose keyset universe covers every atomic region induced by the
/// interval endpoints occurring in either graph (edge functions and inflow),
/// so enumeration distinguishes everything the graphs can distinguish. For
/// the numeric monoids this is the default budget.
EnumBudget tailored_budget(const FlowGraph& h1, const FlowGraph& h2);

/// Every inflow mapping pointwise below in0 (complete within the budget).
std::vector<InflowMap> enum_inflows_below(MonoidTag tag, const InflowMap& in0,
                                          const EnumBudget& budget);

/// Same nodes, same inflow, and equal outflow under every enumerated inflow
/// below the graphs' own inflow.
bool oracle_ctx_equiv(const FlowGraph& h1, const FlowGraph& h2, const EnumBudget& budget);

/// Exact footprint set by subset enumeration: Y qualifies when the graphs
/// agree structurally outside Y and their restrictions to Y are
/// contextually equivalent.
std::set<std::set<NodeId>> oracle_footprints(const FlowGraph& h1, const FlowGraph& h2,
                                             const EnumBudget& budget);

struct LawReport {
    int checked = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

/// Randomized unit / commutativity / associativity checks of graph
/// composition, mixing guaranteed-composable triples (splits of one parent
/// graph) with unrelated graphs that exercise the undefined cases.
LawReport check_separation_laws(MonoidTag tag, int samples, std::uint64_t seed);

}  // namespace flowfoot
