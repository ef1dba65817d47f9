#include "singcurve/power_series.hpp"

#include <algorithm>
#include <sstream>

#include "singcurve/errors.hpp"

namespace singcurve {

namespace {

using CoeffMap = std::map<long, Rational>;

// nullopt plays the role of +infinity throughout.
std::optional<long> opt_min(std::optional<long> a, std::optional<long> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

Rational lookup(const CoeffMap& m, long e) {
    auto it = m.find(e);
    return it == m.end() ? Rational(0) : it->second;
}

void add_term(CoeffMap& m, long e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = m.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) m.erase(it);
    }
}

// Product coefficients for exponents < bound only.
CoeffMap mul_maps(const CoeffMap& a, const CoeffMap& b, long bound) {
    CoeffMap out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            if (ea + eb >= bound) break;  // b iterates in increasing exponent
            add_term(out, ea + eb, ca * cb);
        }
    }
    return out;
}

// Quotient coefficients for exponents < bound; d must have a nonzero
// constant term.
CoeffMap div_maps(const CoeffMap& e, const CoeffMap& d, long bound) {
    Rational d0 = lookup(d, 0);
    if (d0.is_zero()) throw InternalError("div_maps divisor is not a unit");
    CoeffMap q;
    for (long k = 0; k < bound; ++k) {
        Rational acc = lookup(e, k);
        for (const auto& [j, qj] : q) {
            if (j >= k) break;
            Rational dk = lookup(d, k - j);
            if (!dk.is_zero()) acc -= qj * dk;
        }
        if (!acc.is_zero()) q[k] = acc / d0;
    }
    return q;
}

// f(g) for exponents < bound; g must have order >= 1.
CoeffMap compose_maps(const CoeffMap& f, const CoeffMap& g, long bound) {
    CoeffMap acc;
    CoeffMap g_pow{{0, Rational(1)}};
    long prev = 0;
    for (const auto& [k, c] : f) {
        if (k >= bound) break;  // g^k only has exponents >= k
        for (; prev < k; ++prev) g_pow = mul_maps(g_pow, g, bound);
        for (const auto& [e, gc] : g_pow) add_term(acc, e, c * gc);
    }
    return acc;
}

CoeffMap derivative_map(const CoeffMap& m) {
    CoeffMap out;
    for (const auto& [e, c] : m) {
        if (e != 0) out[e - 1] = c * Rational(e);
    }
    return out;
}

}  // namespace

PowerSeries::PowerSeries(std::map<long, Rational> coeffs, std::optional<long> trunc)
    : coeffs_(std::move(coeffs)), trunc_(trunc) {
    normalize();
}

void PowerSeries::normalize() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->first < 0) throw InternalError("negative exponent in series");
        if (it->second.is_zero() || (trunc_ && it->first >= *trunc_)) {
            it = coeffs_.erase(it);
        } else {
            ++it;
        }
    }
}

PowerSeries PowerSeries::constant(const Rational& c) {
    return monomial(0, c);
}

PowerSeries PowerSeries::monomial(long exp, const Rational& c) {
    CoeffMap m;
    if (!c.is_zero()) m[exp] = c;
    return PowerSeries(std::move(m), std::nullopt);
}

std::optional<long> PowerSeries::order_lower_bound() const {
    if (!coeffs_.empty()) return coeffs_.begin()->first;
    return trunc_;  // nullopt (exact zero) means +infinity
}

OrderInfo PowerSeries::order_info() const {
    if (!coeffs_.empty()) return {OrderInfo::Kind::Known, coeffs_.begin()->first};
    if (is_exact()) return {OrderInfo::Kind::ExactZero, 0};
    // no visible term: the order is at least the truncation bound
    return {OrderInfo::Kind::Indeterminate, *trunc_};
}

long PowerSeries::order() const {
    OrderInfo oi = order_info();
    switch (oi.kind) {
        case OrderInfo::Kind::Known:
            return oi.order;
        case OrderInfo::Kind::ExactZero:
            throw Error("order of the zero series is undefined");
        default:
            throw PrecisionExhausted("series order indeterminate: no nonzero term below truncation");
    }
}

Rational PowerSeries::coeff(long exp) const {
    if (trunc_ && exp >= *trunc_) {
        throw PrecisionExhausted("coefficient requested beyond truncation");
    }
    return lookup(coeffs_, exp);
}

PowerSeries PowerSeries::operator-() const {
    PowerSeries r = *this;
    for (auto& [e, c] : r.coeffs_) c = -c;
    return r;
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
    CoeffMap m = coeffs_;
    for (const auto& [e, c] : o.coeffs_) add_term(m, e, c);
    return PowerSeries(std::move(m), opt_min(trunc_, o.trunc_));
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
    return *this + (-o);
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
    return mul_bounded(o, -1);  // negative bound means no bound
}

PowerSeries PowerSeries::mul_bounded(const PowerSeries& o, long bound) const {
    if (is_exact_zero() || o.is_exact_zero()) return PowerSeries();
    std::optional<long> ob = bound >= 0 ? std::optional<long>(bound) : std::nullopt;
    long lb_a = *order_lower_bound();
    long lb_b = *o.order_lower_bound();
    std::optional<long> t;
    if (trunc_) t = opt_min(t, *trunc_ + lb_b);
    if (o.trunc_) t = opt_min(t, *o.trunc_ + lb_a);
    if (!t && ob) {
        // Both factors exact: stay exact when the whole product fits.
        long full_deg = coeffs_.rbegin()->first + o.coeffs_.rbegin()->first;
        if (full_deg >= *ob) t = ob;
    } else {
        t = opt_min(t, ob);
    }
    long compute_bound = t ? *t : (coeffs_.rbegin()->first + o.coeffs_.rbegin()->first + 1);
    return PowerSeries(mul_maps(coeffs_, o.coeffs_, compute_bound), t);
}

PowerSeries PowerSeries::times(const Rational& c) const {
    if (c.is_zero()) return PowerSeries();
    PowerSeries r = *this;
    for (auto& [e, cc] : r.coeffs_) cc *= c;
    return r;
}

PowerSeries PowerSeries::shift(long k) const {
    if (is_exact_zero()) return *this;
    if (*order_lower_bound() + k < 0) {
        throw Error("series shift would create a negative exponent");
    }
    CoeffMap m;
    for (const auto& [e, c] : coeffs_) m[e + k] = c;
    std::optional<long> t = trunc_ ? std::optional<long>(*trunc_ + k) : std::nullopt;
    return PowerSeries(std::move(m), t);
}

PowerSeries PowerSeries::derivative() const {
    std::optional<long> t;
    if (trunc_) t = std::max(0l, *trunc_ - 1);
    return PowerSeries(derivative_map(coeffs_), t);
}

PowerSeries PowerSeries::truncate_to(long t) const {
    return PowerSeries(coeffs_, opt_min(trunc_, t));
}

PowerSeries PowerSeries::div(const PowerSeries& o, long cap) const {
    if (o.is_exact_zero()) throw Error("division by the zero series");
    if (is_exact_zero()) return PowerSeries();
    OrderInfo ob = o.order_info();
    if (ob.kind == OrderInfo::Kind::Indeterminate) {
        throw PrecisionExhausted("divisor order indeterminate");
    }
    OrderInfo oa = order_info();
    if (oa.kind == OrderInfo::Kind::Indeterminate) {
        // Every known coefficient of the dividend is zero, so the quotient is
        // zero up to the shifted truncation even though the true order is
        // unknown.
        long ta = *trunc_ - ob.order;
        if (ta < 1) throw PrecisionExhausted("dividend order indeterminate");
        return PowerSeries({}, std::min(ta, cap));
    }
    long va = oa.order, vb = ob.order;
    if (va < vb) {
        throw DivisionByHigherOrder("dividend order " + std::to_string(va) +
                                    " below divisor order " + std::to_string(vb));
    }
    if (is_exact() && o.is_exact()) {
        // Track the remainder so a terminating division stays exact.
        CoeffMap q;
        CoeffMap r = coeffs_;
        Rational bl = o.coeffs_.begin()->second;
        while (!r.empty()) {
            long e = r.begin()->first;
            long qe = e - vb;
            if (qe >= cap) return PowerSeries(std::move(q), cap);
            Rational qc = r.begin()->second / bl;
            q[qe] = qc;
            for (const auto& [be, bc] : o.coeffs_) add_term(r, be + qe, -(qc * bc));
        }
        return PowerSeries(std::move(q), std::nullopt);
    }
    long vr = va - vb;
    std::optional<long> tr;
    if (trunc_) tr = opt_min(tr, *trunc_ - vb);
    if (o.trunc_) tr = opt_min(tr, va + *o.trunc_ - 2 * vb);
    tr = opt_min(tr, cap);
    CoeffMap q;
    Rational bl = o.coeffs_.begin()->second;
    for (long k = vr; k < *tr; ++k) {
        Rational acc = lookup(coeffs_, k + vb);
        for (const auto& [j, qj] : q) {
            Rational bc = lookup(o.coeffs_, k - j + vb);
            if (!bc.is_zero()) acc -= qj * bc;
        }
        if (!acc.is_zero()) q[k] = acc / bl;
    }
    return PowerSeries(std::move(q), tr);
}

PowerSeries PowerSeries::compose(const PowerSeries& g, long bound) const {
    if (is_exact_zero()) return PowerSeries();
    if (g.is_exact_zero()) return constant(coeff(0));
    OrderInfo og = g.order_info();
    if (og.kind == OrderInfo::Kind::Indeterminate) {
        throw PrecisionExhausted("composition argument has indeterminate order");
    }
    long vg = og.order;
    if (vg < 1) throw Error("composition argument must have order >= 1");
    std::optional<long> t;
    if (trunc_) t = opt_min(t, *trunc_ * vg);
    if (g.trunc_) {
        auto it = coeffs_.lower_bound(1);
        if (it != coeffs_.end()) t = opt_min(t, (it->first - 1) * vg + *g.trunc_);
    }
    if (!t) {
        // Both exact; exact result only when nothing reaches the bound.
        long full_deg = coeffs_.rbegin()->first * g.coeffs_.rbegin()->first;
        if (full_deg >= bound) t = bound;
    } else {
        t = opt_min(t, bound);
    }
    CoeffMap out = compose_maps(coeffs_, g.coeffs_, t ? *t : bound);
    return PowerSeries(std::move(out), t);
}

PowerSeries PowerSeries::invert_parameter(long cap) const {
    OrderInfo oi = order_info();
    if (oi.kind == OrderInfo::Kind::Indeterminate) {
        throw PrecisionExhausted("inversion needs a determinate order");
    }
    if (oi.kind != OrderInfo::Kind::Known || oi.order != 1) {
        throw Error("parameter inversion needs a series of order exactly 1");
    }
    Rational c1 = coeffs_.begin()->second;
    if (is_exact() && coeffs_.size() == 1) {
        return monomial(1, c1.inverse());  // linear map, exact inverse
    }
    long tr = trunc_ ? std::min(*trunc_, cap) : cap;
    if (tr < 2) throw PrecisionExhausted("inversion cap leaves no computable coefficients");
    CoeffMap s = coeffs_;
    CoeffMap sd = derivative_map(s);
    CoeffMap v{{1, c1.inverse()}};
    long correct = 2;
    while (correct < tr) {
        long target = std::min(2 * correct, tr);
        CoeffMap e = compose_maps(s, v, target);
        add_term(e, 1, Rational(-1));
        if (!e.empty()) {
            CoeffMap denom = compose_maps(sd, v, target);
            // e has order >= correct >= 2; shift down so div_maps sees units.
            long ve = e.begin()->first;
            CoeffMap es;
            for (const auto& [ee, ec] : e) es[ee - ve] = ec;
            CoeffMap qs = div_maps(es, denom, target - ve);
            for (const auto& [qe, qc] : qs) add_term(v, qe + ve, -qc);
            for (auto it = v.lower_bound(target); it != v.end();) it = v.erase(it);
        }
        correct = target;
    }
    return PowerSeries(std::move(v), tr);
}

PowerSeries PowerSeries::nth_root_unit(long m, long cap) const {
    if (m < 1) throw Error("root index must be >= 1");
    Rational c0 = coeff(0);
    if (!c0.is_one()) throw Error("nth_root_unit needs constant term 1");
    if (m == 1) return truncate_to(cap);
    if (is_exact() && coeffs_.size() == 1) return constant(Rational(1));
    long b = trunc_ ? std::min(*trunc_, cap) : cap;
    // r = exp(log(u)/m): log via integration of u'/u, exp via the standard
    // convolution recurrence. Everything stays rational.
    CoeffMap lu = div_maps(derivative_map(coeffs_), coeffs_, b - 1);
    CoeffMap a;  // log(u)/m
    Rational inv_m = Rational(m).inverse();
    for (const auto& [e, c] : lu) a[e + 1] = c * Rational(1, e + 1) * inv_m;
    CoeffMap r{{0, Rational(1)}};
    for (long n = 1; n < b; ++n) {
        Rational acc(0);
        for (const auto& [k, ak] : a) {
            if (k > n) break;
            Rational rc = lookup(r, n - k);
            if (!rc.is_zero()) acc += Rational(k) * ak * rc;
        }
        if (!acc.is_zero()) r[n] = acc * Rational(1, n);
    }
    return PowerSeries(std::move(r), b);
}

std::string PowerSeries::str(const std::string& var) const {
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
