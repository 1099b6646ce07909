#pragma once

#include <random>

#include "flowfoot/serialize.hpp"

namespace flowfoot {

enum class ListOp { Insert, Mark, Unlink };

/// One node of a generated sorted keyset list.
struct ListNodeSpec {
    NodeId id = 0;
    std::int64_t key = 0;
    bool marked = false;
    NodeId next = 0;  // successor node, or the external tail
};

/// A sorted keyset list of `length` nodes with in_root = Z, before/after
/// differing by one list operation (insert a fresh node, mark a node, or
/// unlink a marked node). Deterministic under `seed`.
Instance gen_list_update(ListOp op, std::size_t length, std::uint64_t seed);

struct RandomGraphOpts {
    std::size_t min_nodes = 2;
    std::size_t max_nodes = 8;
    double edge_density = 0.35;
    bool force_acyclic = false;
    bool decreasing_only = false;
    bool finite_values = true;  // keep inflow values oracle-enumerable
    NodeId base_id = 1;
    std::size_t externals = 2;
};

FlowValue random_value(MonoidTag tag, std::mt19937_64& rng, bool finite);
EdgeFn random_fn(MonoidTag tag, std::mt19937_64& rng, bool decreasing_only);

FlowGraph random_flow_graph(MonoidTag tag, std::mt19937_64& rng, const RandomGraphOpts& opts);

}  // namespace flowfoot
