#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singcurve/bivariate_poly.hpp"
#include "singcurve/branch.hpp"

namespace singcurve {

// A plane curve germ at the origin: a list of pairwise distinct branches,
// optionally together with a defining polynomial. When the polynomial is
// present every branch satisfies it (to its truncation), and extra precision
// can be recovered from it on demand.
struct CurveSpec {
    std::vector<BranchParam> branches;
    std::optional<BivariatePolynomial> implicit_equation;

    bool operator==(const CurveSpec& o) const {
        return branches == o.branches && implicit_equation == o.implicit_equation;
    }
    bool operator!=(const CurveSpec& o) const { return !(*this == o); }
};

// Expression grammar shared by all text inputs: integer and p/q literals,
// named variables, +, -, *, ^ with non-negative integer exponents, and
// parentheses. Multiplication is always written out; "2x" is a syntax error.
BivariatePolynomial parse_polynomial(const std::string& text);

// A polynomial expression in t, read as an exact power series.
PowerSeries parse_series(const std::string& text);

// "x(t) = <expr in t>; y(t) = <expr in t>"
BranchParam parse_parametrization(const std::string& text);

// Checks a branch is a valid germ through the origin: no component has a
// constant term (NonPositiveOrder), the components are not both zero
// (NonPositiveOrder), and the known support exponents have gcd 1
// (ImprimitiveBranch).
void validate_branch(const BranchParam& b);

// validate_branch on every branch, plus: branches carry distinct ids, and
// each one satisfies the implicit equation to its truncation
// (ConsistencyError).
void validate_curve(const CurveSpec& spec);

// JSON document handling. Accepted shapes:
//   { "polynomial": "<expr in x,y>" }
//   { "branches": [ { "x": "<expr in t>", "y": "<expr in t>",
//                     "label": "<optional>" } ],
//     "truncation": <optional positive integer> }
// A polynomial document has its branches computed at `extraction_truncation`.
// All rationals are serialized as "p/q" strings inside the expressions.
CurveSpec load_curve(const std::string& json_text, long extraction_truncation = 32);
std::string save_curve(const CurveSpec& spec);

}  // namespace singcurve
