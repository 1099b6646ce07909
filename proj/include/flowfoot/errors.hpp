#pragma once

#include <stdexcept>
#include <string>

namespace flowfoot {

enum class Errc {
    TagMismatch,
    EdgeSourceOutside,
    InflowSourceInside,
    InflowTargetOutside,
    NodeOutside,
    NonTermination,
    NotAPath,
    ExitNotBoundary,
    CyclicGraph,
    CyclicRestriction,
    RequiresIdempotent,
    RequiresDecreasing,
    NodeSetMismatch,
    NoFootprintByDefinition,
    OracleInfeasible,
    ParseError,
    PreconditionViolation,
    BadParams,
};

const char* errc_name(Errc c);

class FlowError : public std::runtime_error {
public:
    FlowError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace flowfoot
