#include "singcurve/univariate_poly.hpp"

#include <algorithm>
#include <sstream>

#include "singcurve/errors.hpp"

namespace singcurve {

namespace {

// Factorization support for the rational root search: trial division for
// small factors, Miller-Rabin + Pollard rho for what remains.
mpz_class pollard_rho(const mpz_class& n) {
    for (mpz_class c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        while (true) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;  // cycle without factor, try another c
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            if (d != 1) break;
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(mpz_class n, std::map<mpz_class, int>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (mpz_class p = 2; p < 100000; p == 2 ? p = 3 : p += 2) {
        mpz_class pp = p * p;
        if (pp > n) break;
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
        ++out[n];
        return;
    }
    mpz_class d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
    std::map<mpz_class, int> f;
    factor_into(n, f);
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : f) {
        std::size_t base = divs.size();
        if (base * (e + 1) > (1u << 20)) {
            throw InternalError("divisor candidate set too large in root search");
        }
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) {
                mpz_class d = divs[i] * pk;
                divs.push_back(d);
            }
        }
    }
    return divs;
}

}  // namespace

UnivariatePolynomial::UnivariatePolynomial(std::map<long, Rational> coeffs)
    : coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->first < 0) throw InternalError("negative exponent in polynomial");
        if (it->second.is_zero()) {
            it = coeffs_.erase(it);
        } else {
            ++it;
        }
    }
}

UnivariatePolynomial UnivariatePolynomial::constant(const Rational& c) {
    return monomial(0, c);
}

UnivariatePolynomial UnivariatePolynomial::monomial(long exp, const Rational& c) {
    std::map<long, Rational> m;
    if (!c.is_zero()) m[exp] = c;
    return UnivariatePolynomial(std::move(m));
}

long UnivariatePolynomial::degree() const {
    if (is_zero()) throw Error("degree of the zero polynomial");
    return coeffs_.rbegin()->first;
}

Rational UnivariatePolynomial::coeff(long e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational UnivariatePolynomial::lead() const {
    if (is_zero()) throw Error("leading coefficient of the zero polynomial");
    return coeffs_.rbegin()->second;
}

UnivariatePolynomial UnivariatePolynomial::operator-() const {
    UnivariatePolynomial r = *this;
    for (auto& [e, c] : r.coeffs_) c = -c;
    return r;
}

UnivariatePolynomial UnivariatePolynomial::operator+(const UnivariatePolynomial& o) const {
    std::map<long, Rational> m = coeffs_;
    for (const auto& [e, c] : o.coeffs_) {
        auto [it, inserted] = m.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) m.erase(it);
        }
    }
    return UnivariatePolynomial(std::move(m));
}

UnivariatePolynomial UnivariatePolynomial::operator-(const UnivariatePolynomial& o) const {
    return *this + (-o);
}

UnivariatePolynomial UnivariatePolynomial::operator*(const UnivariatePolynomial& o) const {
    std::map<long, Rational> m;
    for (const auto& [ea, ca] : coeffs_) {
        for (const auto& [eb, cb] : o.coeffs_) {
            Rational prod = ca * cb;
            if (prod.is_zero()) continue;
            auto [it, inserted] = m.emplace(ea + eb, prod);
            if (!inserted) {
                it->second += prod;
                if (it->second.is_zero()) m.erase(it);
            }
        }
    }
    return UnivariatePolynomial(std::move(m));
}

UnivariatePolynomial UnivariatePolynomial::times(const Rational& c) const {
    if (c.is_zero()) return UnivariatePolynomial();
    UnivariatePolynomial r = *this;
    for (auto& [e, cc] : r.coeffs_) cc *= c;
    return r;
}

UnivariatePolynomial UnivariatePolynomial::derivative() const {
    std::map<long, Rational> m;
    for (const auto& [e, c] : coeffs_) {
        if (e != 0) m[e - 1] = c * Rational(e);
    }
    return UnivariatePolynomial(std::move(m));
}

Rational UnivariatePolynomial::eval(const Rational& v) const {
    Rational acc(0);
    for (const auto& [e, c] : coeffs_) acc += c * v.pow(e);
    return acc;
}

std::pair<UnivariatePolynomial, UnivariatePolynomial> UnivariatePolynomial::divmod(
    const UnivariatePolynomial& d) const {
    if (d.is_zero()) throw Error("polynomial division by zero");
    std::map<long, Rational> q;
    UnivariatePolynomial r = *this;
    long dd = d.degree();
    Rational dl = d.lead();
    while (!r.is_zero() && r.degree() >= dd) {
        long e = r.degree() - dd;
        Rational c = r.lead() / dl;
        q[e] = c;
        r = r - d.times(c) * monomial(e, Rational(1));
    }
    return {UnivariatePolynomial(std::move(q)), r};
}

UnivariatePolynomial UnivariatePolynomial::gcd(UnivariatePolynomial a, UnivariatePolynomial b) {
    while (!b.is_zero()) {
        UnivariatePolynomial r = a.divmod(b).second;
        // Making every remainder monic keeps the fractions at the sizes of
        // the reduced remainder sequence instead of compounding the scale
        // factors from each division step.
        if (!r.is_zero()) r = r.times(r.lead().inverse());
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a.times(a.lead().inverse());
    return a;
}

std::vector<std::pair<Rational, int>> UnivariatePolynomial::rational_roots() const {
    if (is_zero()) throw Error("roots of the zero polynomial");
    std::vector<std::pair<Rational, int>> roots;
    UnivariatePolynomial p = *this;
    long low = p.coeffs_.begin()->first;
    if (low > 0) {
        roots.emplace_back(Rational(0), static_cast<int>(low));
        std::map<long, Rational> m;
        for (const auto& [e, c] : p.coeffs_) m[e - low] = c;
        p = UnivariatePolynomial(std::move(m));
    }
    if (!p.is_constant()) {
        // Clear denominators, then run the usual divisor search on the
        // integer constant and leading coefficients.
        mpz_class den_lcm = 1;
        for (const auto& [e, c] : p.coeffs_) {
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
        }
        mpz_class a0 = (p.coeff(0) * Rational(mpq_class(den_lcm))).num();
        mpz_class an = (p.lead() * Rational(mpq_class(den_lcm))).num();
        std::vector<mpz_class> nums = positive_divisors(a0);
        std::vector<mpz_class> dens = positive_divisors(an);
        std::vector<Rational> candidates;
        for (const mpz_class& pn : nums) {
            for (const mpz_class& qd : dens) {
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), pn.get_mpz_t(), qd.get_mpz_t());
                if (g != 1) continue;
                mpq_class v(pn, qd);
                v.canonicalize();
                candidates.emplace_back(Rational(v));
                candidates.emplace_back(Rational(mpq_class(-v)));
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const Rational& c : candidates) {
            if (p.is_constant()) break;
            if (!p.eval(c).is_zero()) continue;
            UnivariatePolynomial lin =
                monomial(1, Rational(1)) - constant(c);
            int mult = 0;
            while (true) {
                auto [q, r] = p.divmod(lin);
                if (!r.is_zero()) break;
                p = q;
                ++mult;
                if (p.is_zero()) break;
            }
            roots.emplace_back(c, mult);
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return roots;
}

std::string UnivariatePolynomial::str(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        Rational a = c.abs();
        if (e == 0) {
            os << a.str();
        } else {
            if (!a.is_one()) os << a.str() << "*";
            os << var;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace singcurve
