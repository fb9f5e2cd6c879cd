#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace orderable {

/// Malformed or unsupported input: knot notation, run configuration, slope queries.
class ParseError : public std::invalid_argument {
public:
    enum class Kind { Syntax, Link, TooSmall, UnsupportedFamily, BadArgument };

    ParseError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

enum class NumericFault {
    Domain,              // argument outside the admissible range
    DegenerateLeading,   // leading coefficient of R(., y) vanishes
    BracketSign,         // bracket endpoints failed the sign-alternation check
    NonConvergence,
    BranchCollision,
    BranchDiscontinuity,
    Elliptic,            // x < 4, no real meridian eigenvalue
    SingularDenominator,
    NotUpperTriangular,
    NotHyperbolic,
    AmbiguousIndex,
    NotFound,
    IndexConditionFailed,
};

const char* fault_name(NumericFault fault) noexcept;

/// A numeric failure, tagged with the trace coordinate y where it happened (NaN if none).
class NumericError : public std::runtime_error {
public:
    NumericError(NumericFault fault, const std::string& what, double y = std::nan(""))
        : std::runtime_error(what), fault_(fault), y_(y) {}

    NumericFault fault() const noexcept { return fault_; }
    double y() const noexcept { return y_; }

private:
    NumericFault fault_;
    double y_;
};

}  // namespace orderable
