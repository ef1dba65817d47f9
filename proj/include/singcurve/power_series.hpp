#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "singcurve/rational.hpp"

namespace singcurve {

// What is known about the order (lowest nonzero exponent) of a series.
struct OrderInfo {
    enum class Kind { Known, ExactZero, Indeterminate };
    Kind kind;
    long order;  // exact order when Known, lower bound when Indeterminate
};

// Sparse power series in one parameter with explicit knowledge tracking.
//
// Coefficients are stored in a map keyed by exponent; zero coefficients are
// never stored. `trunc` is the first exponent whose coefficient is unknown:
// nullopt means the series is exact (every unstored coefficient is exactly
// zero), a value T means exponents >= T are unknown. Stored exponents are
// always < T. Arithmetic propagates the tightest T derivable from the
// operands, so results never claim more knowledge than the inputs justify.
class PowerSeries {
public:
    PowerSeries() = default;  // exact zero
    PowerSeries(std::map<long, Rational> coeffs, std::optional<long> trunc);

    static PowerSeries zero() { return PowerSeries(); }
    static PowerSeries constant(const Rational& c);
    static PowerSeries monomial(long exp, const Rational& c);
    // The identity parametrization t -> t.
    static PowerSeries param() { return monomial(1, Rational(1)); }

    const std::map<long, Rational>& coeffs() const { return coeffs_; }
    std::optional<long> trunc() const { return trunc_; }
    bool is_exact() const { return !trunc_.has_value(); }
    bool is_exact_zero() const { return coeffs_.empty() && is_exact(); }

    OrderInfo order_info() const;
    // Order when Known; throws PrecisionExhausted when indeterminate and
    // Error on the exact zero series.
    long order() const;
    // Coefficient of t^exp; 0 when absent and known, throws
    // PrecisionExhausted when exp lies in the unknown region.
    Rational coeff(long exp) const;
    Rational leading_coeff() const { return coeff(order()); }

    PowerSeries operator-() const;
    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries operator-(const PowerSeries& o) const;
    PowerSeries operator*(const PowerSeries& o) const;
    bool operator==(const PowerSeries& o) const {
        return coeffs_ == o.coeffs_ && trunc_ == o.trunc_;
    }
    bool operator!=(const PowerSeries& o) const { return !(*this == o); }

    PowerSeries times(const Rational& c) const;
    // Multiply by t^k. k may be negative only when every exponent stays >= 0.
    PowerSeries shift(long k) const;
    PowerSeries derivative() const;
    // Keep only exponents < t, tightening trunc to min(trunc, t).
    PowerSeries truncate_to(long t) const;
    // Product with all exponents >= bound discarded (and trunc capped there
    // unless both factors are exact and the full product fits).
    PowerSeries mul_bounded(const PowerSeries& o, long bound) const;

    // Quotient this / o. Requires order(this) >= order(o); exact inputs whose
    // quotient terminates stay exact, anything else is truncated (at the
    // derivable horizon, never beyond cap).
    PowerSeries div(const PowerSeries& o, long cap) const;

    // Substitute g for the parameter; g must have order >= 1 or be exactly 0.
    // Exponents >= bound are discarded.
    PowerSeries compose(const PowerSeries& g, long bound) const;

    // Functional inverse: this must have order exactly 1. Returns v with
    // this(v(s)) = s, computed for exponents < min(trunc, cap).
    PowerSeries invert_parameter(long cap) const;

    // m-th root of a series with constant term 1, normalized to constant
    // term 1. Coefficients computed for exponents < min(trunc, cap).
    PowerSeries nth_root_unit(long m, long cap) const;

    // Rendering compatible with the expression parser, e.g. "t^2 - 1/2*t^5".
    std::string str(const std::string& var) const;

private:
    void normalize();
    // Lower bound on the order: min stored exponent, else trunc for a
    // truncated empty series, else nullopt (exact zero, order +infinity).
    std::optional<long> order_lower_bound() const;

    std::map<long, Rational> coeffs_;
    std::optional<long> trunc_;
};

}  // namespace singcurve
