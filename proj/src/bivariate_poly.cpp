#include "singcurve/bivariate_poly.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "singcurve/errors.hpp"
#include "singcurve/univariate_poly.hpp"

namespace singcurve {

namespace {

// View as a polynomial in x whose coefficients live in Q[y].
using XPoly = std::map<long, UnivariatePolynomial>;

XPoly to_x_poly(const BivariatePolynomial& p) {
    std::map<long, std::map<long, Rational>> grouped;
    for (const auto& [key, c] : p.terms()) grouped[key.first][key.second] = c;
    XPoly out;
    for (auto& [i, ym] : grouped) out.emplace(i, UnivariatePolynomial(std::move(ym)));
    return out;
}

BivariatePolynomial from_x_poly(const XPoly& p) {
    std::map<BivariatePolynomial::Key, Rational> terms;
    for (const auto& [i, yc] : p) {
        for (const auto& [j, c] : yc.coeffs()) terms[{i, j}] = c;
    }
    return BivariatePolynomial(std::move(terms));
}

void xp_trim(XPoly& p) {
    for (auto it = p.begin(); it != p.end();) {
        if (it->second.is_zero()) {
            it = p.erase(it);
        } else {
            ++it;
        }
    }
}

XPoly xp_scale(const XPoly& p, const UnivariatePolynomial& f) {
    XPoly out;
    for (const auto& [i, c] : p) {
        UnivariatePolynomial prod = c * f;
        if (!prod.is_zero()) out[i] = prod;
    }
    return out;
}

XPoly xp_sub(XPoly a, const XPoly& b) {
    for (const auto& [i, c] : b) {
        auto it = a.find(i);
        if (it == a.end()) {
            a[i] = -c;
        } else {
            it->second = it->second - c;
            if (it->second.is_zero()) a.erase(it);
        }
    }
    return a;
}

UnivariatePolynomial xp_content(const XPoly& p) {
    UnivariatePolynomial g;
    for (const auto& [i, c] : p) g = UnivariatePolynomial::gcd(g, c);
    return g;
}

XPoly xp_div_content(const XPoly& p, const UnivariatePolynomial& content) {
    XPoly out;
    for (const auto& [i, c] : p) {
        auto [q, r] = c.divmod(content);
        if (!r.is_zero()) throw InternalError("content division left a remainder");
        out[i] = q;
    }
    return out;
}

// Pseudo-remainder of a by b in Q[y][x]: exactly lead(b)^(deg a - deg b + 1) * a
// reduced mod b, so every division step stays polynomial and the subresultant
// divisions in gcd below are exact.
XPoly xp_prem(XPoly a, const XPoly& b) {
    long db = b.rbegin()->first;
    const UnivariatePolynomial& bl = b.rbegin()->second;
    long scale_left = a.empty() ? 0 : a.rbegin()->first - db + 1;
    while (!a.empty() && a.rbegin()->first >= db) {
        long shift = a.rbegin()->first - db;
        UnivariatePolynomial al = a.rbegin()->second;
        XPoly shifted;
        for (const auto& [i, c] : b) {
            UnivariatePolynomial prod = c * al;
            if (!prod.is_zero()) shifted[i + shift] = prod;
        }
        a = xp_sub(xp_scale(a, bl), shifted);
        xp_trim(a);
        --scale_left;
    }
    for (; scale_left > 0; --scale_left) a = xp_scale(a, bl);
    return a;
}

// Rescale so every coefficient is an integer and they share no integer
// factor. The gcd is only defined up to a constant, and integer coefficients
// keep the remainder sequence sizes determinant-bounded.
void xp_make_integer_primitive(XPoly& p) {
    if (p.empty()) return;
    mpz_class den_lcm = 1;
    for (const auto& [i, c] : p) {
        for (const auto& [j, q] : c.coeffs()) den_lcm = lcm(den_lcm, q.den());
    }
    mpz_class num_gcd = 0;
    for (const auto& [i, c] : p) {
        for (const auto& [j, q] : c.coeffs()) {
            num_gcd = gcd(num_gcd, mpz_class(q.num() * (den_lcm / q.den())));
        }
    }
    Rational s{mpq_class(den_lcm, num_gcd)};
    for (auto& [i, c] : p) c = c.times(s);
}

UnivariatePolynomial up_pow(const UnivariatePolynomial& p, long e) {
    UnivariatePolynomial r = UnivariatePolynomial::constant(Rational(1));
    for (long k = 0; k < e; ++k) r = r * p;
    return r;
}

UnivariatePolynomial up_exact_div(const UnivariatePolynomial& a,
                                  const UnivariatePolynomial& b) {
    auto [q, r] = a.divmod(b);
    if (!r.is_zero()) throw InternalError("subresultant division left a remainder");
    return q;
}

XPoly xp_div_exact(const XPoly& p, const UnivariatePolynomial& d) {
    XPoly out;
    for (const auto& [i, c] : p) out[i] = up_exact_div(c, d);
    return out;
}

}  // namespace

BivariatePolynomial::BivariatePolynomial(std::map<Key, Rational> terms)
    : terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.first < 0 || it->first.second < 0) {
            throw InternalError("negative exponent in polynomial");
        }
        if (it->second.is_zero()) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

BivariatePolynomial BivariatePolynomial::constant(const Rational& c) {
    return monomial(0, 0, c);
}

BivariatePolynomial BivariatePolynomial::monomial(long i, long j, const Rational& c) {
    std::map<Key, Rational> m;
    if (!c.is_zero()) m[{i, j}] = c;
    return BivariatePolynomial(std::move(m));
}

bool BivariatePolynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
}

Rational BivariatePolynomial::coeff(long i, long j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
}

long BivariatePolynomial::total_degree() const {
    if (is_zero()) throw Error("degree of the zero polynomial");
    long d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first + key.second);
    return d;
}

long BivariatePolynomial::degree_x() const {
    if (is_zero()) throw Error("degree of the zero polynomial");
    long d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first);
    return d;
}

long BivariatePolynomial::degree_y() const {
    if (is_zero()) throw Error("degree of the zero polynomial");
    long d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.second);
    return d;
}

BivariatePolynomial BivariatePolynomial::operator-() const {
    BivariatePolynomial r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

BivariatePolynomial BivariatePolynomial::operator+(const BivariatePolynomial& o) const {
    std::map<Key, Rational> m = terms_;
    for (const auto& [k, c] : o.terms_) {
        auto [it, inserted] = m.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) m.erase(it);
        }
    }
    return BivariatePolynomial(std::move(m));
}

BivariatePolynomial BivariatePolynomial::operator-(const BivariatePolynomial& o) const {
    return *this + (-o);
}

BivariatePolynomial BivariatePolynomial::operator*(const BivariatePolynomial& o) const {
    std::map<Key, Rational> m;
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            Key k{ka.first + kb.first, ka.second + kb.second};
            Rational prod = ca * cb;
            if (prod.is_zero()) continue;
            auto [it, inserted] = m.emplace(k, prod);
            if (!inserted) {
                it->second += prod;
                if (it->second.is_zero()) m.erase(it);
            }
        }
    }
    return BivariatePolynomial(std::move(m));
}

BivariatePolynomial BivariatePolynomial::times(const Rational& c) const {
    if (c.is_zero()) return BivariatePolynomial();
    BivariatePolynomial r = *this;
    for (auto& [k, cc] : r.terms_) cc *= c;
    return r;
}

BivariatePolynomial BivariatePolynomial::derivative_x() const {
    std::map<Key, Rational> m;
    for (const auto& [k, c] : terms_) {
        if (k.first != 0) m[{k.first - 1, k.second}] = c * Rational(k.first);
    }
    return BivariatePolynomial(std::move(m));
}

BivariatePolynomial BivariatePolynomial::derivative_y() const {
    std::map<Key, Rational> m;
    for (const auto& [k, c] : terms_) {
        if (k.second != 0) m[{k.first, k.second - 1}] = c * Rational(k.second);
    }
    return BivariatePolynomial(std::move(m));
}

Rational BivariatePolynomial::eval(const Rational& x, const Rational& y) const {
    Rational acc(0);
    for (const auto& [k, c] : terms_) acc += c * x.pow(k.first) * y.pow(k.second);
    return acc;
}

PowerSeries BivariatePolynomial::eval_on_param(const PowerSeries& xs, const PowerSeries& ys,
                                               long bound) const {
    if (is_zero()) return PowerSeries();
    long mi = 0, mj = 0;
    for (const auto& [k, c] : terms_) {
        mi = std::max(mi, k.first);
        mj = std::max(mj, k.second);
    }
    std::vector<PowerSeries> xp(mi + 1), yp(mj + 1);
    xp[0] = PowerSeries::constant(Rational(1));
    yp[0] = xp[0];
    for (long i = 1; i <= mi; ++i) xp[i] = xp[i - 1].mul_bounded(xs, bound);
    for (long j = 1; j <= mj; ++j) yp[j] = yp[j - 1].mul_bounded(ys, bound);
    PowerSeries acc;
    for (const auto& [k, c] : terms_) {
        acc = acc + xp[k.first].mul_bounded(yp[k.second], bound).times(c);
    }
    return acc;
}

std::pair<long, BivariatePolynomial> BivariatePolynomial::lowest_homogeneous_form() const {
    if (is_zero()) throw Error("lowest form of the zero polynomial");
    long d = -1;
    for (const auto& [k, c] : terms_) {
        long t = k.first + k.second;
        if (d < 0 || t < d) d = t;
    }
    std::map<Key, Rational> m;
    for (const auto& [k, c] : terms_) {
        if (k.first + k.second == d) m[k] = c;
    }
    return {d, BivariatePolynomial(std::move(m))};
}

bool BivariatePolynomial::squarefree() const {
    if (is_zero()) return false;
    if (is_constant()) return true;
    BivariatePolynomial g = gcd(gcd(*this, derivative_x()), derivative_y());
    return g.is_constant();
}

BivariatePolynomial BivariatePolynomial::gcd(const BivariatePolynomial& a,
                                             const BivariatePolynomial& b) {
    auto normalize = [](BivariatePolynomial p) {
        if (!p.is_zero()) p = p.times(p.terms_.rbegin()->second.inverse());
        return p;
    };
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);
    XPoly pa = to_x_poly(a);
    XPoly pb = to_x_poly(b);
    UnivariatePolynomial ca = xp_content(pa);
    UnivariatePolynomial cb = xp_content(pb);
    UnivariatePolynomial cont = UnivariatePolynomial::gcd(ca, cb);
    pa = xp_div_content(pa, ca);
    pb = xp_div_content(pb, cb);
    xp_make_integer_primitive(pa);
    xp_make_integer_primitive(pb);
    if (pa.rbegin()->first < pb.rbegin()->first) std::swap(pa, pb);
    // Subresultant remainder sequence: each pseudo-remainder is divided by
    // g * h^delta, which is exact and keeps coefficient growth linear instead
    // of the exponential blowup a naive remainder sequence suffers.
    UnivariatePolynomial g = UnivariatePolynomial::constant(Rational(1));
    UnivariatePolynomial h = g;
    while (!pb.empty()) {
        long delta = pa.rbegin()->first - pb.rbegin()->first;
        XPoly r = xp_prem(pa, pb);
        UnivariatePolynomial lead_b = pb.rbegin()->second;
        if (!r.empty()) r = xp_div_exact(r, g * up_pow(h, delta));
        pa = std::move(pb);
        pb = std::move(r);
        g = std::move(lead_b);
        if (delta > 0) h = up_exact_div(up_pow(g, delta), up_pow(h, delta - 1));
    }
    if (pa.rbegin()->first == 0) {
        // Purely a y-polynomial gcd.
        XPoly res{{0, cont}};
        return normalize(from_x_poly(res));
    }
    BivariatePolynomial prim = from_x_poly(xp_div_content(pa, xp_content(pa)));
    BivariatePolynomial result = prim * from_x_poly(XPoly{{0, cont}});
    return normalize(result);
}

BivariatePolynomial BivariatePolynomial::exact_divide(const BivariatePolynomial& d) const {
    if (d.is_zero()) throw Error("polynomial division by zero");
    if (is_zero()) return BivariatePolynomial();
    XPoly num = to_x_poly(*this);
    XPoly den = to_x_poly(d);
    long dd = den.rbegin()->first;
    const UnivariatePolynomial& dl = den.rbegin()->second;
    XPoly q;
    while (!num.empty() && num.rbegin()->first >= dd) {
        long shift = num.rbegin()->first - dd;
        auto [qc, rc] = num.rbegin()->second.divmod(dl);
        if (!rc.is_zero()) throw Error("polynomial division is not exact");
        q[shift] = qc;
        XPoly sub;
        for (const auto& [i, c] : den) {
            UnivariatePolynomial prod = c * qc;
            if (!prod.is_zero()) sub[i + shift] = prod;
        }
        num = xp_sub(std::move(num), sub);
        xp_trim(num);
    }
    if (!num.empty()) throw Error("polynomial division is not exact");
    return from_x_poly(q);
}

std::string BivariatePolynomial::str(const std::string& xv, const std::string& yv) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Key, Rational>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        long da = a.first.first + a.first.second;
        long db = b.first.first + b.first.second;
        if (da != db) return da < db;
        return a.first.second < b.first.second;  // x-heavy first within a degree
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : ordered) {
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        Rational a = c.abs();
        std::string body;
        auto var_part = [](const std::string& v, long e) -> std::string {
            if (e == 0) return "";
            if (e == 1) return v;
            return v + "^" + std::to_string(e);
        };
        std::string px = var_part(xv, k.first);
        std::string py = var_part(yv, k.second);
        if (px.empty() && py.empty()) {
            body = a.str();
        } else {
            if (!a.is_one()) body = a.str() + "*";
            body += px;
            if (!px.empty() && !py.empty()) body += "*";
            body += py;
        }
        os << body;
    }
    return os.str();
}

}  // namespace singcurve
