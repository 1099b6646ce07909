#pragma once

#include <vector>

#include "flowfoot/oracle.hpp"
#include "flowfoot/paths.hpp"

namespace flowfoot {

/// The three transfer-failure decision procedures. Naive and Dist need
/// acyclic restrictions; New handles cycles when the monoid is idempotent
/// and all edges are decreasing.
enum class Method { Naive, Dist, New };

const char* method_name(Method m);

struct FootprintResult {
    bool top = false;
    std::set<NodeId> nodes;                  // meaningful iff !top
    std::vector<std::set<NodeId>> trace;     // candidate sets, in order
    Method method = Method::New;
};

/// Nodes whose outgoing edge functions differ between the two graphs.
std::set<NodeId> out_diff(const FlowGraph& h1, const FlowGraph& h2);

/// Successors of Z (inside X or external) that can receive different
/// outflow from the restrictions to Z under some inflow below the
/// restriction's own inflow.
std::set<NodeId> transfer_failure(const FlowGraph& h1, const FlowGraph& h2,
                                  const std::set<NodeId>& Z, Method method);

struct ExtendStep {
    bool top = false;
    std::set<NodeId> next;  // meaningful iff !top
};

/// One candidate-extension step: Top when the transfer failure escapes X,
/// otherwise Z ∪ out_diff ∪ tfail.
ExtendStep extend_step(const FlowGraph& h1, const FlowGraph& h2, const std::set<NodeId>& Z,
                       Method method);

/// Iterate extend_step from out_diff until stable or Top.
FootprintResult compute_footprint(const FlowGraph& h1, const FlowGraph& h2, Method method);

enum class VerifyMode { Algebraic, Oracle };

/// Y is a footprint: the graphs agree structurally outside Y, and their
/// restrictions to Y are contextually equivalent (decided algebraically by
/// bidirectional path replacement, or by exhaustive inflow enumeration).
bool verify_footprint(const FlowGraph& h1, const FlowGraph& h2, const std::set<NodeId>& Y,
                      VerifyMode mode, const EnumBudget& budget);

/// Same, with the enumeration universe tailored to the graphs at hand.
bool verify_footprint(const FlowGraph& h1, const FlowGraph& h2, const std::set<NodeId>& Y,
                      VerifyMode mode);

}  // namespace flowfoot
