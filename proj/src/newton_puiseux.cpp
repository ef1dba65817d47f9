#include "singcurve/newton_puiseux.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "singcurve/curve_input.hpp"
#include "singcurve/errors.hpp"

namespace singcurve {

namespace {

bool divisible_by_x(const BivariatePolynomial& f) {
    if (f.is_zero()) return false;
    for (const auto& [k, c] : f.terms()) {
        (void)c;
        if (k.first == 0) return false;
    }
    return true;
}

bool divisible_by_y(const BivariatePolynomial& f) {
    if (f.is_zero()) return false;
    for (const auto& [k, c] : f.terms()) {
        (void)c;
        if (k.second == 0) return false;
    }
    return true;
}

BivariatePolynomial shift_down_x(const BivariatePolynomial& f) {
    std::map<BivariatePolynomial::Key, Rational> t;
    for (const auto& [k, c] : f.terms()) t[{k.first - 1, k.second}] = c;
    return BivariatePolynomial(std::move(t));
}

BivariatePolynomial shift_down_y(const BivariatePolynomial& f) {
    std::map<BivariatePolynomial::Key, Rational> t;
    for (const auto& [k, c] : f.terms()) t[{k.first, k.second - 1}] = c;
    return BivariatePolynomial(std::move(t));
}

// f(x^q, x^p (c + y)) / x^mu, where mu is the minimal weight q*i + p*j.
BivariatePolynomial substitute_divide(const BivariatePolynomial& f, long q, long p,
                                      const Rational& c) {
    long mu = 0;
    bool first = true;
    for (const auto& [k, cf] : f.terms()) {
        (void)cf;
        long w = q * k.first + p * k.second;
        if (first || w < mu) mu = w;
        first = false;
    }
    std::map<BivariatePolynomial::Key, Rational> out;
    for (const auto& [k, cf] : f.terms()) {
        long e = q * k.first + p * k.second - mu;
        long j = k.second;
        // cf * x^e * (c + y)^j expanded binomially.
        Rational binom(1);
        Rational cpow = c.pow(j);
        for (long r = 0; r <= j; ++r) {
            Rational coeff = cf * binom * cpow;
            if (!coeff.is_zero()) {
                auto key = std::make_pair(e, r);
                auto it = out.find(key);
                if (it == out.end()) {
                    out.emplace(key, coeff);
                } else {
                    it->second += coeff;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
            if (r < j) {
                binom = binom * Rational(j - r) / Rational(r + 1);
                if (!c.is_zero()) cpow = cpow / c;
            } else {
                cpow = Rational(0);
            }
        }
    }
    return BivariatePolynomial(std::move(out));
}

// Solves f(x, y(x)) = 0 for the unique y with y(0) = 0, assuming
// f(0,0) = 0 and df/dy(0,0) != 0. Exact polynomial solutions come back
// exact; otherwise the series carries `cap` terms.
PowerSeries hensel_solve(const BivariatePolynomial& f, long cap) {
    cap = std::max(cap, 2L);
    const BivariatePolynomial fy = f.derivative_y();
    const PowerSeries t = PowerSeries::param();
    PowerSeries y;  // exact polynomial prefix of the solution
    long correct = 1;
    while (correct < cap) {
        long target = std::min(2 * correct, cap);
        PowerSeries residual = f.eval_on_param(t, y, target);
        if (residual.is_exact_zero()) return y;
        if (residual.order_info().kind == OrderInfo::Kind::Indeterminate) {
            correct = target;
            continue;
        }
        PowerSeries deriv = fy.eval_on_param(t, y, target);
        PowerSeries delta = residual.div(deriv, target);
        PowerSeries next = PowerSeries(y.coeffs(), std::nullopt) - delta;
        y = PowerSeries(next.coeffs(), std::nullopt);
        correct = target;
    }
    {
        PowerSeries residual = f.eval_on_param(t, y, cap);
        if (residual.is_exact_zero()) return y;
    }
    return PowerSeries(y.coeffs(), cap);
}

// Local branches of f as parametrization pairs. The first component of each
// pair is always the monomial t^Q with coefficient 1.
std::vector<std::pair<PowerSeries, PowerSeries>> puiseux_rec(const BivariatePolynomial& f0,
                                                             long cap, int depth) {
    if (depth > 64) throw InternalError("expansion recursion too deep");
    std::vector<std::pair<PowerSeries, PowerSeries>> out;
    BivariatePolynomial f = f0;
    if (divisible_by_x(f)) throw InternalError("axis factor x inside the expansion");
    if (divisible_by_y(f)) {
        out.emplace_back(PowerSeries::param(), PowerSeries::zero());
        f = shift_down_y(f);
    }
    if (!f.coeff(0, 0).is_zero()) return out;
    if (f.is_zero()) throw InternalError("zero polynomial inside the expansion");
    if (!f.coeff(0, 1).is_zero()) {
        // Regular in y: a single smooth solution.
        out.emplace_back(PowerSeries::param(), hensel_solve(f, cap));
        return out;
    }
    for (const NewtonEdge& edge : newton_polygon(f)) {
        std::vector<std::pair<Rational, int>> roots = edge.face.rational_roots();
        long covered = 0;
        for (const auto& [w0, mult] : roots) covered += mult;
        if (covered < edge.steps) {
            throw IrrationalBranch(edge.str(), edge.face.str("w"));
        }
        for (const auto& [w0, mult] : roots) {
            std::optional<Rational> c;
            if (edge.q % 2 == 0 && w0.sign() < 0) {
                throw IrrationalBranch(edge.str(), edge.face.str("w"));
            }
            c = w0.nth_root(edge.q);
            if (!c) throw IrrationalBranch(edge.str(), edge.face.str("w"));
            BivariatePolynomial f1 = substitute_divide(f, edge.q, edge.p, *c);
            std::vector<std::pair<PowerSeries, PowerSeries>> subs;
            if (mult == 1) {
                subs.emplace_back(PowerSeries::param(), hensel_solve(f1, cap));
            } else {
                subs = puiseux_rec(f1, cap, depth + 1);
            }
            for (auto& [x1, y1] : subs) {
                if (x1.coeffs().size() != 1 || !x1.coeffs().begin()->second.is_one()) {
                    throw InternalError("expansion parameter is not a pure power");
                }
                long q1 = x1.coeffs().begin()->first;
                PowerSeries x = PowerSeries::monomial(q1 * edge.q, Rational(1));
                PowerSeries y = (PowerSeries::constant(*c) + y1).shift(q1 * edge.p);
                out.emplace_back(std::move(x), std::move(y));
            }
        }
    }
    return out;
}

}  // namespace

std::string NewtonEdge::str() const {
    return "(" + std::to_string(from.first) + "," + std::to_string(from.second) + ")->(" +
           std::to_string(to.first) + "," + std::to_string(to.second) + ")";
}

std::vector<NewtonEdge> newton_polygon(const BivariatePolynomial& f) {
    if (f.is_zero()) throw Error("newton polygon of the zero polynomial");
    // Keep the lowest y-exponent for each x-exponent, then take the lower
    // convex hull of those points.
    std::map<long, long> lowest;
    for (const auto& [k, c] : f.terms()) {
        (void)c;
        auto it = lowest.find(k.first);
        if (it == lowest.end() || k.second < it->second) lowest[k.first] = k.second;
    }
    std::vector<std::pair<long, long>> pts(lowest.begin(), lowest.end());
    std::vector<std::pair<long, long>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // cross of (b-a) x (p-a); <= 0 means b is not a strict lower
            // vertex between a and p.
            long cross = (b.first - a.first) * (p.second - a.second) -
                         (b.second - a.second) * (p.first - a.first);
            if (cross <= 0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(p);
    }
    std::vector<NewtonEdge> edges;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        auto [i1, j1] = hull[i];
        auto [i2, j2] = hull[i + 1];
        if (j2 >= j1) continue;  // horizontal or rising: not facing the origin
        long di = i2 - i1;
        long dj = j1 - j2;
        long g = std::gcd(di, dj);
        NewtonEdge e;
        e.from = {i1, j1};
        e.to = {i2, j2};
        e.p = di / g;
        e.q = dj / g;
        e.steps = g;
        e.slope = Rational(-e.p) / Rational(e.q);
        std::map<long, Rational> face;
        for (long s = 0; s <= e.steps; ++s) {
            Rational c = f.coeff(i1 + s * e.p, j1 - s * e.q);
            if (!c.is_zero()) face[e.steps - s] = c;
        }
        e.face = UnivariatePolynomial(std::move(face));
        edges.push_back(std::move(e));
    }
    return edges;
}

std::vector<BranchParam> branches(const BivariatePolynomial& f, long min_truncation) {
    if (f.is_zero()) throw Error("the zero polynomial has no branch structure");
    if (!f.coeff(0, 0).is_zero()) {
        throw NonPositiveOrder("curve does not pass through the origin");
    }
    if (!f.squarefree()) throw NotSquarefree("defining polynomial has a repeated factor");

    std::vector<std::pair<PowerSeries, PowerSeries>> raw;
    BivariatePolynomial rest = f;
    if (divisible_by_x(rest)) {
        raw.emplace_back(PowerSeries::zero(), PowerSeries::param());
        rest = shift_down_x(rest);
    }
    if (divisible_by_y(rest)) {
        raw.emplace_back(PowerSeries::param(), PowerSeries::zero());
        rest = shift_down_y(rest);
    }
    if (rest.coeff(0, 0).is_zero() && !rest.is_constant()) {
        long cap = std::max(min_truncation, 4L);
        for (auto& br : puiseux_rec(rest, cap, 0)) raw.push_back(std::move(br));
    }

    std::vector<BranchParam> result;
    long mult_sum = 0;
    for (auto& [xs, ys] : raw) {
        BranchParam b;
        b.id = static_cast<int>(result.size());
        b.x = std::move(xs);
        b.y = std::move(ys);
        if (!b.exact()) {
            // The computed window may already satisfy f exactly, in which
            // case the branch is a polynomial solution.
            PowerSeries known_y(b.y.coeffs(), std::nullopt);
            if (f.eval_on_param(b.x, known_y, -1).is_exact_zero()) b.y = known_y;
        }
        validate_branch(b);
        mult_sum += b.multiplicity();
        result.push_back(std::move(b));
    }
    if (mult_sum != f.lowest_homogeneous_form().first) {
        throw InternalError("branch multiplicities do not add up to the tangent cone degree");
    }
    return result;
}

BranchParam extend_branch(const BivariatePolynomial& f, const BranchParam& b,
                          long new_truncation) {
    if (b.exact() || new_truncation <= b.truncation_order()) {
        OrderInfo oi = f.eval_on_param(b.x, b.y, -1).order_info();
        bool vanishes = oi.kind == OrderInfo::Kind::ExactZero ||
                        (oi.kind == OrderInfo::Kind::Indeterminate &&
                         oi.order >= b.truncation_order());
        if (!vanishes) {
            throw UnknownBranch("parametrization does not satisfy the curve equation");
        }
        return b;
    }
    long bt = b.truncation_order();
    std::vector<BranchParam> all = branches(f, new_truncation);
    const BranchParam* found = nullptr;
    for (const BranchParam& cand : all) {
        if (cand.x.truncate_to(bt) == b.x.truncate_to(bt) &&
            cand.y.truncate_to(bt) == b.y.truncate_to(bt)) {
            if (found) throw InternalError("two extensions share the known window");
            found = &cand;
        }
    }
    if (!found) throw UnknownBranch("parametrization does not match any branch of the curve");
    BranchParam out = *found;
    out.id = b.id;
    out.label = b.label;
    return out;
}

QuasiNormalForm quasi_normal_form(const BranchParam& b, long cap) {
    QuasiNormalForm nf;
    const bool x_zero = b.x.is_exact_zero();
    const bool y_zero = b.y.is_exact_zero();
    if (x_zero && y_zero) throw InternalError("empty parametrization");
    if (x_zero || y_zero) {
        const PowerSeries& base = x_zero ? b.y : b.x;
        nf.m = base.order();
        nf.lead = base.leading_coeff();
        nf.base_is_x = !x_zero;
        nf.other = PowerSeries::zero();
        // Even an axis germ gets its parameter normalized conceptually; the
        // other component is identically zero so nothing else changes.
        return nf;
    }
    OrderInfo ox = b.x.order_info();
    OrderInfo oy = b.y.order_info();
    using K = OrderInfo::Kind;
    bool base_x;
    if (ox.kind == K::Known && oy.kind == K::Known) {
        base_x = ox.order <= oy.order;
    } else if (ox.kind == K::Known && oy.kind == K::Indeterminate &&
               ox.order < *b.y.trunc()) {
        base_x = true;
    } else if (oy.kind == K::Known && ox.kind == K::Indeterminate &&
               oy.order < *b.x.trunc()) {
        base_x = false;
    } else {
        throw PrecisionExhausted("component orders not separated by the known terms");
    }
    const PowerSeries& base = base_x ? b.x : b.y;
    const PowerSeries& other = base_x ? b.y : b.x;
    nf.base_is_x = base_x;
    nf.m = base.order();
    nf.lead = base.leading_coeff();
    PowerSeries unit = base.times(nf.lead.inverse()).shift(-nf.m);
    if (unit == PowerSeries::constant(Rational(1))) {
        nf.other = other;
        return nf;
    }
    PowerSeries root = unit.nth_root_unit(nf.m, cap);
    PowerSeries s_of_t = root.shift(1);
    PowerSeries t_of_s = s_of_t.invert_parameter(cap);
    nf.other = other.compose(t_of_s, cap);
    return nf;
}

namespace {

enum class OrdClass { Inf, Known, AtLeast };

struct OrdView {
    OrdClass cls;
    long val = 0;  // order when Known, bound when AtLeast
};

OrdView ord_view(const PowerSeries& s) {
    if (s.is_exact_zero()) return {OrdClass::Inf, 0};
    OrderInfo oi = s.order_info();
    if (oi.kind == OrderInfo::Kind::Known) return {OrdClass::Known, oi.order};
    return {OrdClass::AtLeast, *s.trunc()};
}

// -1 different, 1 same, 0 unknown
int orders_match(const PowerSeries& a, const PowerSeries& b) {
    OrdView va = ord_view(a), vb = ord_view(b);
    if (va.cls == OrdClass::Inf && vb.cls == OrdClass::Inf) return 1;
    if (va.cls == OrdClass::Known && vb.cls == OrdClass::Known) {
        return va.val == vb.val ? 1 : -1;
    }
    if (va.cls == OrdClass::Known && vb.cls == OrdClass::AtLeast) {
        return va.val < vb.val ? -1 : 0;
    }
    if (va.cls == OrdClass::Known && vb.cls == OrdClass::Inf) return -1;
    if (vb.cls == OrdClass::Known) return orders_match(b, a);
    return 0;  // AtLeast/Inf combinations stay undecided
}

}  // namespace

namespace {

// Whether the normal forms of a and b agree on the window below `cap`
// under some rational rescaling of the parameter. Returns false as soon as
// the window certifies a difference.
bool normal_forms_agree(const BranchParam& a, const BranchParam& b, long cap) {
    QuasiNormalForm na = quasi_normal_form(a, cap);
    QuasiNormalForm nb = quasi_normal_form(b, cap);
    if (na.m != nb.m || na.base_is_x != nb.base_is_x) return false;

    std::optional<Rational> root = (nb.lead / na.lead).nth_root(na.m);
    if (!root) return false;
    std::vector<Rational> candidates{*root};
    if (na.m % 2 == 0 && !root->is_zero()) candidates.push_back(-*root);

    long limit = cap;
    if (na.other.trunc()) limit = std::min(limit, *na.other.trunc());
    if (nb.other.trunc()) limit = std::min(limit, *nb.other.trunc());

    for (const Rational& scale : candidates) {
        // nb.other(s) must equal na.other(scale * s) coefficientwise.
        std::set<long> exps;
        for (const auto& [e, c] : na.other.coeffs()) {
            (void)c;
            if (e < limit) exps.insert(e);
        }
        for (const auto& [e, c] : nb.other.coeffs()) {
            (void)c;
            if (e < limit) exps.insert(e);
        }
        bool ok = true;
        for (long e : exps) {
            if (na.other.coeff(e) * scale.pow(e) != nb.other.coeff(e)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

bool same_germ(const BranchParam& a, const BranchParam& b) {
    if (a.exact() && b.exact() && a.x == b.x && a.y == b.y) return true;
    int mx = orders_match(a.x, b.x);
    int my = orders_match(a.y, b.y);
    if (mx == -1 || my == -1) return false;
    if (mx == 0 || my == 0) {
        throw PrecisionExhausted("branch orders not separated by the known terms");
    }
    if (a.x.is_exact_zero() && b.x.is_exact_zero()) return true;  // both are the y-axis
    if (a.y.is_exact_zero() && b.y.is_exact_zero()) return true;

    if (a.exact() && b.exact()) {
        // A difference almost always shows up in a short window; the full
        // contact bound is only needed to certify equality.
        long da = std::max(a.truncation_order(), 2L);
        long db = std::max(b.truncation_order(), 2L);
        long certify = 2 * da * db + 4;
        if (certify > 40 && !normal_forms_agree(a, b, 40)) return false;
        return normal_forms_agree(a, b, certify);
    }
    long window = std::min(a.exact() ? b.truncation_order() : a.truncation_order(),
                           b.exact() ? a.truncation_order() : b.truncation_order());
    if (!normal_forms_agree(a, b, window)) return false;
    throw PrecisionExhausted("branches agree on their whole known window");
}

}  // namespace singcurve
