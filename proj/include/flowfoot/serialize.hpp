#pragma once

#include <string>

#include "flowfoot/footprint.hpp"

namespace flowfoot {

/// A before/after pair over the same nodes and inflow, the unit of every
/// footprint computation and benchmark run.
struct Instance {
    MonoidTag tag = MonoidTag::Counting;
    FlowGraph before;
    FlowGraph after;
    std::string label;
};

/// Strict parse of the JSON instance format (docs/format.md). Unknown keys
/// are rejected (ParseError); node-set or inflow mismatches between the two
/// sides are a PreconditionViolation.
Instance parse_instance(const std::string& bytes);

/// Canonical serialization; parse(serialize(i)) round-trips exactly.
std::string serialize_instance(const Instance& inst);

/// A pair of composable graphs over distinct node sets, e.g. the shipped
/// composition fixture: {"monoid", "label", "graphs": [g1, g2]} where each
/// graph is {"nodes", "edges", "inflow"}.
struct GraphPair {
    MonoidTag tag = MonoidTag::Counting;
    FlowGraph first;
    FlowGraph second;
    std::string label;
};

GraphPair parse_graph_pair(const std::string& bytes);
std::string serialize_graph_pair(const GraphPair& pair);

/// {"footprint": [...] | "TOP", "trace": [[...], ...], "method": ..., "micros": n}
std::string footprint_json(const FootprintResult& res, std::uint64_t micros);

}  // namespace flowfoot
