#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singcurve/bivariate_poly.hpp"
#include "singcurve/branch.hpp"
#include "singcurve/univariate_poly.hpp"

namespace singcurve {

// One compact edge of the boundary of the Newton polygon of f: the convex
// hull edges that face the origin, each carrying the primitive lattice
// direction (p, -q) and the polynomial of the terms supported on it.
struct NewtonEdge {
    std::pair<long, long> from;  // endpoint with the larger y-exponent
    std::pair<long, long> to;    // endpoint with the larger x-exponent
    long p = 0;                  // x-step of the primitive direction
    long q = 0;                  // y-step of the primitive direction
    long steps = 0;              // lattice length: to - from = steps * (p, -q)
    Rational slope;              // -p/q
    UnivariatePolynomial face;   // face polynomial in w

    std::string str() const;
};

// Edges ordered along the boundary, steepest first. f must be nonzero.
std::vector<NewtonEdge> newton_polygon(const BivariatePolynomial& f);

// All branches of f at the origin, each carried at least to
// `min_truncation` (exact branches are marked exact and carry further).
// Requires f(0,0) = 0 (NonPositiveOrder), f squarefree (NotSquarefree), and
// every needed face-polynomial root rational (IrrationalBranch).
std::vector<BranchParam> branches(const BivariatePolynomial& f, long min_truncation);

// Recomputes the branch of f that extends b to `new_truncation`. Returns b
// unchanged when b is exact or already carries enough terms. The result
// agrees with b on the previously known range. UnknownBranch when b does not
// match any branch of f.
BranchParam extend_branch(const BivariatePolynomial& f, const BranchParam& b,
                          long new_truncation);

// Canonical coordinates of a branch: parameter chosen so the lower-order
// component becomes lc * s^m exactly. `other` is the remaining component in
// that parameter, computed to `cap` when not exact.
struct QuasiNormalForm {
    long m = 0;           // multiplicity (order of the base component)
    Rational lead;        // coefficient of s^m in the base component
    bool base_is_x = true;
    PowerSeries other;
};

QuasiNormalForm quasi_normal_form(const BranchParam& b, long cap);

// Whether two parametrizations present the same curve germ. Exact pairs are
// decided exactly; a truncated pair that matches on its whole known range
// raises PrecisionExhausted.
bool same_germ(const BranchParam& a, const BranchParam& b);

}  // namespace singcurve
