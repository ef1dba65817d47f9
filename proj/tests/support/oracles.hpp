#pragma once

// Test-side oracles and generators. The multiplicity-walk oracle is kept
// deliberately independent of src/invariants.cpp so the two can check each
// other; the random generators mirror the fuzz command's on purpose, so a
// fuzz repro can be pasted into a unit test unchanged.

#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "singcurve/curve_input.hpp"
#include "singcurve/errors.hpp"
#include "singcurve/newton_puiseux.hpp"
#include "singcurve/power_series.hpp"

namespace testsupport {

// Subtractive walk on a pair of positive integers, emitting the minimum of
// every state it visits, the final equal state included.
inline std::vector<long> euclid_pair(long a, long b) {
    std::vector<long> out;
    while (a > 0 && b > 0) {
        out.push_back(std::min(a, b));
        if (a > b) {
            a -= b;
        } else {
            b -= a;
        }
    }
    return out;
}

// Multiplicity sequence predicted from characteristic exponents
// (beta0; beta1, ..., betag): one subtractive block per exponent, then the
// final free point.
inline std::vector<long> oracle_walk(const std::vector<long>& beta) {
    if (beta.empty()) return {};
    if (beta.size() == 1) return {1, 1};
    std::vector<long> out = euclid_pair(beta[0], beta[1]);
    long e = std::gcd(beta[0], beta[1]);
    for (size_t i = 2; i < beta.size(); ++i) {
        std::vector<long> blk = euclid_pair(e, beta[i] - beta[i - 1]);
        out.insert(out.end(), blk.begin(), blk.end());
        e = std::gcd(e, beta[i]);
    }
    out.push_back(1);
    return out;
}

inline singcurve::CurveSpec curve_of(const std::string& poly, long trunc = 32) {
    singcurve::BivariatePolynomial f = singcurve::parse_polynomial(poly);
    singcurve::CurveSpec s;
    s.branches = singcurve::branches(f, trunc);
    s.implicit_equation = f;
    return s;
}

inline singcurve::BranchParam param_branch(int id, const std::string& xs,
                                           const std::string& ys) {
    singcurve::BranchParam b;
    b.id = id;
    b.x = singcurve::parse_series(xs);
    b.y = singcurve::parse_series(ys);
    return b;
}

inline singcurve::Rational random_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    long n = 0;
    while (n == 0) n = num(rng);
    return singcurve::Rational(n, den(rng));
}

inline singcurve::BranchParam random_branch(std::mt19937_64& rng, int id) {
    while (true) {
        std::uniform_int_distribution<long> mult(1, 4);
        long m = mult(rng);
        std::map<long, singcurve::Rational> y;
        std::uniform_int_distribution<long> extra(1, 3);
        std::uniform_int_distribution<long> gap(1, 4);
        long terms = extra(rng);
        long e = m + gap(rng);
        long g = m;
        for (long k = 0; k < terms; ++k) {
            y[e] = random_coeff(rng);
            g = std::gcd(g, e);
            e += gap(rng);
        }
        while (g != 1) {
            y[e] = random_coeff(rng);
            g = std::gcd(g, e);
            e += 1;
        }
        singcurve::BranchParam b;
        b.id = id;
        b.x = singcurve::PowerSeries::monomial(m, singcurve::Rational(1));
        b.y = singcurve::PowerSeries(std::move(y), std::nullopt);
        try {
            singcurve::validate_branch(b);
        } catch (const singcurve::Error&) {
            continue;
        }
        return b;
    }
}

inline singcurve::CurveSpec random_curve(std::mt19937_64& rng, int max_branches = 3) {
    std::uniform_int_distribution<int> count(1, max_branches);
    int n = count(rng);
    while (true) {
        singcurve::CurveSpec s;
        for (int i = 0; i < n; ++i) s.branches.push_back(random_branch(rng, i));
        bool distinct = true;
        try {
            for (size_t i = 0; i < s.branches.size() && distinct; ++i) {
                for (size_t j = i + 1; j < s.branches.size(); ++j) {
                    if (singcurve::same_germ(s.branches[i], s.branches[j])) {
                        distinct = false;
                        break;
                    }
                }
            }
        } catch (const singcurve::PrecisionExhausted&) {
            distinct = false;
        }
        if (distinct) return s;
    }
}

}  // namespace testsupport
