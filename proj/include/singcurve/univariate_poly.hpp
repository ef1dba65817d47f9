#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "singcurve/rational.hpp"

namespace singcurve {

// Dense-degree sparse-storage polynomial in one variable over Q.
// Zero coefficients are never stored; the zero polynomial has an empty map.
class UnivariatePolynomial {
public:
    UnivariatePolynomial() = default;
    explicit UnivariatePolynomial(std::map<long, Rational> coeffs);
    static UnivariatePolynomial constant(const Rational& c);
    static UnivariatePolynomial monomial(long exp, const Rational& c);

    const std::map<long, Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.empty() || coeffs_.rbegin()->first == 0; }
    long degree() const;  // throws on the zero polynomial
    Rational coeff(long e) const;
    Rational lead() const;

    UnivariatePolynomial operator-() const;
    UnivariatePolynomial operator+(const UnivariatePolynomial& o) const;
    UnivariatePolynomial operator-(const UnivariatePolynomial& o) const;
    UnivariatePolynomial operator*(const UnivariatePolynomial& o) const;
    bool operator==(const UnivariatePolynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const UnivariatePolynomial& o) const { return !(*this == o); }

    UnivariatePolynomial times(const Rational& c) const;
    UnivariatePolynomial derivative() const;
    Rational eval(const Rational& v) const;

    // Quotient and remainder with deg(rem) < deg(divisor).
    std::pair<UnivariatePolynomial, UnivariatePolynomial> divmod(
        const UnivariatePolynomial& d) const;

    // Monic gcd (Euclid over Q); gcd(0, 0) = 0.
    static UnivariatePolynomial gcd(UnivariatePolynomial a, UnivariatePolynomial b);

    // All rational roots with multiplicities, ascending by value.
    std::vector<std::pair<Rational, int>> rational_roots() const;

    std::string str(const std::string& var) const;

private:
    std::map<long, Rational> coeffs_;
};

}  // namespace singcurve
