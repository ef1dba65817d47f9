#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace singcurve {

// Base class for every error the library raises on bad input, insufficient
// precision, or unsupported ground-field requirements. Internal invariant
// violations use InternalError and always indicate a bug.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- input / schema errors -------------------------------------------------

struct SyntaxError : Error {
    std::size_t position;  // byte offset into the offending text
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct UnknownVariable : SyntaxError {
    std::string name;
    UnknownVariable(const std::string& var, std::size_t pos)
        : SyntaxError("unknown variable '" + var + "'", pos), name(var) {}
};

struct SchemaError : Error {
    using Error::Error;
};

// Declared data that contradicts itself (e.g. a branch that does not satisfy
// the declared implicit equation).
struct ConsistencyError : Error {
    using Error::Error;
};

// A parametrization component with a constant term, or both components zero.
struct NonPositiveOrder : Error {
    using Error::Error;
};

// gcd of the support exponents of (x(t), y(t)) exceeds 1: the parameter is
// not faithful.
struct ImprimitiveBranch : Error {
    using Error::Error;
};

// ---- arithmetic / algorithmic errors ----------------------------------------

struct DivisionByHigherOrder : Error {
    using Error::Error;
};

struct NotSquarefree : Error {
    using Error::Error;
};

// A face-polynomial root needed for the expansion is not rational. Carries a
// printable description of the offending edge and face polynomial.
struct IrrationalBranch : Error {
    std::string edge_description;
    std::string face_polynomial;
    IrrationalBranch(const std::string& edge, const std::string& face)
        : Error("branch requires an irrational face-polynomial root; edge " + edge +
                ", face polynomial " + face),
          edge_description(edge),
          face_polynomial(face) {}
};

// Truncated data ran out before an order or coefficient became certain, and
// no defining equation is available (or the configured cap was reached) to
// extend it.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// Two curves handed to an intersection or resolution routine share a branch.
struct CommonBranch : Error {
    using Error::Error;
};

// proof-trace preconditions.
struct NotEquisingular : Error {
    using Error::Error;
};
struct NotApplicable : Error {
    using Error::Error;
};

struct UnknownBranch : Error {
    using Error::Error;
};

// ---- bugs -------------------------------------------------------------------

struct InternalError : Error {
    using Error::Error;
};

// Two branches through the same infinitely near point classified its tangency
// differently. Impossible for consistent transform data.
struct InconsistentTangency : InternalError {
    using InternalError::InternalError;
};

}  // namespace singcurve
