#pragma once

#include <map>
#include <string>
#include <utility>

#include "singcurve/power_series.hpp"
#include "singcurve/rational.hpp"

namespace singcurve {

// Polynomial in two variables over Q, stored sparsely by exponent pair.
// Zero coefficients are never stored; the zero polynomial has an empty map.
class BivariatePolynomial {
public:
    using Key = std::pair<long, long>;  // (x exponent, y exponent)

    BivariatePolynomial() = default;
    explicit BivariatePolynomial(std::map<Key, Rational> terms);
    static BivariatePolynomial constant(const Rational& c);
    static BivariatePolynomial monomial(long i, long j, const Rational& c);

    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational coeff(long i, long j) const;
    long total_degree() const;  // throws on the zero polynomial
    long degree_x() const;
    long degree_y() const;

    BivariatePolynomial operator-() const;
    BivariatePolynomial operator+(const BivariatePolynomial& o) const;
    BivariatePolynomial operator-(const BivariatePolynomial& o) const;
    BivariatePolynomial operator*(const BivariatePolynomial& o) const;
    bool operator==(const BivariatePolynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const BivariatePolynomial& o) const { return !(*this == o); }

    BivariatePolynomial times(const Rational& c) const;
    BivariatePolynomial derivative_x() const;
    BivariatePolynomial derivative_y() const;

    Rational eval(const Rational& x, const Rational& y) const;
    // Substitute a parametrization; exponents >= bound are discarded
    // (bound < 0 means unbounded).
    PowerSeries eval_on_param(const PowerSeries& xs, const PowerSeries& ys, long bound) const;

    // The terms of minimal total degree, together with that degree.
    std::pair<long, BivariatePolynomial> lowest_homogeneous_form() const;

    // True iff the polynomial has no repeated non-constant factor.
    bool squarefree() const;

    static BivariatePolynomial gcd(const BivariatePolynomial& a, const BivariatePolynomial& b);

    // Exact quotient; throws Error when d does not divide this.
    BivariatePolynomial exact_divide(const BivariatePolynomial& d) const;

    // Deterministic rendering: total degree ascending, x-heavy terms first.
    std::string str(const std::string& xv, const std::string& yv) const;

private:
    std::map<Key, Rational> terms_;
};

}  // namespace singcurve
