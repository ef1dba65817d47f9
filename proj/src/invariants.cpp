#include "singcurve/invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "singcurve/errors.hpp"

namespace singcurve {

std::vector<long> characteristic_exponents(const BranchParam& b) {
    long cap = 64;
    const long cap_limit = 1 << 17;
    while (true) {
        QuasiNormalForm q = quasi_normal_form(b, cap);
        if (q.m == 1) return {1};
        std::vector<long> exps{q.m};
        long g = q.m;
        bool done = false;
        for (const auto& [e, coef] : q.other.coeffs()) {
            (void)coef;
            long ng = std::gcd(g, e);
            if (ng < g) {
                exps.push_back(e);
                g = ng;
                if (g == 1) {
                    done = true;
                    break;
                }
            }
        }
        if (done) return exps;
        if (q.other.is_exact()) {
            // the full support is visible, so a primitive branch cannot stall
            throw InternalError("normalized support never reaches gcd 1");
        }
        if (!b.exact()) {
            throw PrecisionExhausted(
                "characteristic exponents undetermined at the declared truncation");
        }
        if (cap >= cap_limit) {
            throw InternalError("exponent scan exceeded the precision cap");
        }
        cap *= 2;
    }
}

std::vector<long> multiplicity_walk(const std::vector<long>& exponents) {
    if (exponents.empty()) throw Error("no exponents given");
    if (exponents.front() < 1) throw Error("the leading exponent must be positive");
    if (exponents.size() == 1) {
        if (exponents.front() != 1) {
            throw Error("a lone exponent describes a smooth branch and must be 1");
        }
        return {1, 1};
    }
    std::vector<long> out;
    long e = exponents.front();
    for (size_t i = 1; i < exponents.size(); ++i) {
        long a = e;
        long step = i == 1 ? exponents[1] : exponents[i] - exponents[i - 1];
        if (a <= 0 || step <= 0) throw Error("exponents must increase");
        while (a != step) {
            out.push_back(std::min(a, step));
            if (a > step) {
                a -= step;
            } else {
                step -= a;
            }
        }
        out.push_back(a);
        e = a;
    }
    if (e != 1) throw Error("exponents do not end coprime");
    out.push_back(1);
    return out;
}

std::vector<long> multiplicity_sequence(const BranchParam& b) {
    CurveSpec s;
    s.branches = {b};
    Cluster cl = resolve(s);
    std::vector<long> out;
    for (int pid : cl.chain(b.id)) out.push_back(cl.branch_multiplicity(pid, b.id));
    return out;
}

namespace {

bool representable(long value, const std::vector<long>& gens) {
    if (value < 0) return false;
    std::vector<char> reach(static_cast<size_t>(value) + 1, 0);
    reach[0] = 1;
    for (long k = 1; k <= value; ++k) {
        for (long g : gens) {
            if (g <= k && reach[static_cast<size_t>(k - g)]) {
                reach[static_cast<size_t>(k)] = 1;
                break;
            }
        }
    }
    return reach[static_cast<size_t>(value)] != 0;
}

// Samples contact orders directly: starting from the two coordinate germs,
// close under products and leading-term cancellations, and compare the orders
// reached against the ones the generators predict.
void validate_semigroup(const BranchParam& b, const std::vector<long>& gens) {
    long maxg = *std::max_element(gens.begin(), gens.end());
    long bound = 2 * maxg;
    if (bound > 2000) return;  // sampling cost would be disproportionate
    long window = bound + 2;
    if (!b.exact() && b.truncation_order() <= window) return;  // not enough data

    std::map<long, PowerSeries> basis;
    std::vector<PowerSeries> work{b.x, b.y};
    while (!work.empty()) {
        PowerSeries s = std::move(work.back());
        work.pop_back();
        OrderInfo oi = s.order_info();
        if (oi.kind != OrderInfo::Kind::Known) continue;
        long o = oi.order;
        if (o > bound) continue;
        auto it = basis.find(o);
        if (it != basis.end()) {
            Rational f = s.leading_coeff() / it->second.leading_coeff();
            work.push_back(s - it->second.times(f));
        } else {
            for (const auto& [o2, t] : basis) {
                if (o + o2 <= bound) work.push_back(s.mul_bounded(t, window));
            }
            if (2 * o <= bound) work.push_back(s.mul_bounded(s, window));
            basis.emplace(o, std::move(s));
        }
    }

    std::vector<char> reach(static_cast<size_t>(bound) + 1, 0);
    reach[0] = 1;
    for (long k = 1; k <= bound; ++k) {
        for (long g : gens) {
            if (g <= k && reach[static_cast<size_t>(k - g)]) {
                reach[static_cast<size_t>(k)] = 1;
                break;
            }
        }
    }
    for (long k = 1; k <= bound; ++k) {
        bool sampled = basis.count(k) > 0;
        if (sampled != static_cast<bool>(reach[static_cast<size_t>(k)])) {
            throw InternalError("sampled contact orders disagree with the generators at " +
                                std::to_string(k));
        }
    }
}

}  // namespace

std::vector<long> semigroup_generators(const BranchParam& b) {
    std::vector<long> exps = characteristic_exponents(b);
    if (exps.size() == 1) return {1};
    std::vector<long> vbar{exps[0], exps[1]};
    std::vector<long> ee{exps[0], std::gcd(exps[0], exps[1])};
    for (size_t i = 2; i < exps.size(); ++i) {
        long v = (ee[i - 2] / ee[i - 1]) * vbar[i - 1] + exps[i] - exps[i - 1];
        vbar.push_back(v);
        ee.push_back(std::gcd(ee[i - 1], exps[i]));
    }
    std::sort(vbar.begin(), vbar.end());
    vbar.erase(std::unique(vbar.begin(), vbar.end()), vbar.end());
    std::vector<long> gens;
    for (long v : vbar) {
        if (gens.empty() || !representable(v, gens)) gens.push_back(v);
    }
    validate_semigroup(b, gens);
    return gens;
}

IntersectionReport intersection_noether(const CurveSpec& a, const CurveSpec& b) {
    CurveSpec u;
    const int offset = static_cast<int>(a.branches.size());
    for (size_t i = 0; i < a.branches.size(); ++i) {
        BranchParam c = a.branches[i];
        c.id = static_cast<int>(i);
        u.branches.push_back(std::move(c));
    }
    for (size_t j = 0; j < b.branches.size(); ++j) {
        BranchParam c = b.branches[j];
        c.id = offset + static_cast<int>(j);
        u.branches.push_back(std::move(c));
    }
    if (a.implicit_equation && b.implicit_equation) {
        if (a.implicit_equation->terms() == b.implicit_equation->terms()) {
            u.implicit_equation = a.implicit_equation;
        } else {
            BivariatePolynomial prod = *a.implicit_equation * *b.implicit_equation;
            if (prod.squarefree()) u.implicit_equation = std::move(prod);
        }
    }

    IntersectionReport rep;
    rep.cluster = resolve(u);
    for (const auto& p : rep.cluster.points) {
        long m1 = 0;
        long m2 = 0;
        for (int br : p.branches) {
            long mu = rep.cluster.branch_multiplicity(p.id, br);
            if (br < offset) {
                m1 += mu;
            } else {
                m2 += mu;
            }
        }
        if (m1 > 0 && m2 > 0) {
            rep.total += m1 * m2;
            rep.terms.push_back({p.id, m1, m2});
        }
    }
    return rep;
}

namespace {

// Fraction-free determinant of a matrix of polynomials.
BivariatePolynomial poly_det(std::vector<std::vector<BivariatePolynomial>> m) {
    size_t n = m.size();
    if (n == 0) return BivariatePolynomial::constant(Rational(1));
    BivariatePolynomial prev = BivariatePolynomial::constant(Rational(1));
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t row = k + 1;
            while (row < n && m[row][k].is_zero()) ++row;
            if (row == n) return BivariatePolynomial();
            std::swap(m[k], m[row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                BivariatePolynomial t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = t.exact_divide(prev);
            }
            m[i][k] = BivariatePolynomial();
        }
        prev = m[k][k];
    }
    BivariatePolynomial d = m[n - 1][n - 1];
    if (sign < 0) d = -d;
    return d;
}

// X is a single term c*s^q: the image curve is cut out by the characteristic
// polynomial of multiplication by Y(s) modulo s^q - x/c, monic of degree q
// in y with coefficients in Q[x].
BivariatePolynomial eliminate_against_monomial(long q, const Rational& c,
                                               const PowerSeries& y_part) {
    std::vector<std::vector<BivariatePolynomial>> m(
        static_cast<size_t>(q),
        std::vector<BivariatePolynomial>(static_cast<size_t>(q)));
    Rational cinv = c.inverse();
    for (const auto& [e, a] : y_part.coeffs()) {
        for (long j = 0; j < q; ++j) {
            long tot = e + j;
            long r = tot % q;
            long pw = tot / q;
            BivariatePolynomial term =
                BivariatePolynomial::monomial(pw, 0, a * cinv.pow(pw));
            m[static_cast<size_t>(r)][static_cast<size_t>(j)] =
                m[static_cast<size_t>(r)][static_cast<size_t>(j)] + term;
        }
    }
    // y*I - M: every entry of M flips sign, y lands on the diagonal
    for (long i = 0; i < q; ++i) {
        for (long j = 0; j < q; ++j) {
            BivariatePolynomial e = -m[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (i == j) e = e + BivariatePolynomial::monomial(0, 1, Rational(1));
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(e);
        }
    }
    return poly_det(std::move(m));
}

BivariatePolynomial eliminate_general(const PowerSeries& x_part, const PowerSeries& y_part) {
    // a shared zero of both coordinates away from the origin of the parameter
    // would let the image curve revisit the base point
    UnivariatePolynomial ux(x_part.coeffs());
    UnivariatePolynomial uy(y_part.coeffs());
    UnivariatePolynomial g = UnivariatePolynomial::gcd(ux, uy);
    if (g.coeffs().size() != 1) {
        throw NotApplicable("the parametrization returns to the base point");
    }
    long dp = ux.degree();
    long dq = uy.degree();
    // coefficient lists of x - X(s) and y - Y(s) by descending s-degree
    std::vector<BivariatePolynomial> p(static_cast<size_t>(dp) + 1);
    std::vector<BivariatePolynomial> qq(static_cast<size_t>(dq) + 1);
    for (long k = 0; k <= dp; ++k) {
        p[static_cast<size_t>(dp - k)] = BivariatePolynomial::constant(-ux.coeff(k));
    }
    p[static_cast<size_t>(dp)] =
        p[static_cast<size_t>(dp)] + BivariatePolynomial::monomial(1, 0, Rational(1));
    for (long k = 0; k <= dq; ++k) {
        qq[static_cast<size_t>(dq - k)] = BivariatePolynomial::constant(-uy.coeff(k));
    }
    qq[static_cast<size_t>(dq)] =
        qq[static_cast<size_t>(dq)] + BivariatePolynomial::monomial(0, 1, Rational(1));

    size_t n = static_cast<size_t>(dp + dq);
    std::vector<std::vector<BivariatePolynomial>> m(n, std::vector<BivariatePolynomial>(n));
    for (long i = 0; i < dq; ++i) {
        for (long k = 0; k <= dp; ++k) {
            m[static_cast<size_t>(i)][static_cast<size_t>(i + k)] = p[static_cast<size_t>(k)];
        }
    }
    for (long i = 0; i < dp; ++i) {
        for (long k = 0; k <= dq; ++k) {
            m[static_cast<size_t>(dq + i)][static_cast<size_t>(i + k)] =
                qq[static_cast<size_t>(k)];
        }
    }
    return poly_det(std::move(m));
}

}  // namespace

long intersection_by_elimination(const BranchParam& a, const BranchParam& b) {
    if (same_germ(a, b)) throw CommonBranch("the branches coincide");

    auto compute = [&](long window) -> std::optional<long> {
        PowerSeries bx = b.x;
        PowerSeries by = b.y;
        if (window > 0) {
            bx = bx.truncate_to(window);
            by = by.truncate_to(window);
        }
        if (bx.coeffs().empty() && by.coeffs().empty()) return std::nullopt;
        BivariatePolynomial g;
        if (bx.coeffs().size() == 1) {
            const auto& [q, c] = *bx.coeffs().begin();
            g = eliminate_against_monomial(q, c, by);
        } else if (bx.coeffs().empty()) {
            // the branch is the x-axis side: eliminate with roles swapped
            if (by.coeffs().size() != 1) {
                g = eliminate_general(bx, by);
            } else {
                const auto& [q, c] = *by.coeffs().begin();
                BivariatePolynomial swapped = eliminate_against_monomial(q, c, bx);
                // the swap exchanged the roles of the two variables
                std::map<BivariatePolynomial::Key, Rational> flipped;
                for (const auto& [key, val] : swapped.terms()) {
                    flipped[{key.second, key.first}] = val;
                }
                g = BivariatePolynomial(std::move(flipped));
            }
        } else {
            g = eliminate_general(bx, by);
        }
        if (g.is_zero()) throw InternalError("parameter elimination collapsed");
        PowerSeries composed = g.eval_on_param(a.x, a.y, -1);
        OrderInfo oi = composed.order_info();
        if (oi.kind == OrderInfo::Kind::Known) return oi.order;
        if (oi.kind == OrderInfo::Kind::ExactZero) {
            // with full data this cannot happen for distinct germs; a window
            // too narrow to separate them is a precision problem, not a bug
            if (!b.exact()) return std::nullopt;
            throw InternalError("distinct branches with identically zero contact form");
        }
        return std::nullopt;
    };

    if (b.exact()) {
        auto v = compute(0);
        if (v) return *v;
        throw PrecisionExhausted("contact order undetermined at the declared truncation");
    }
    long native = b.truncation_order();
    long w1 = std::max<long>(4, native / 2);
    auto v1 = compute(w1);
    auto v2 = compute(native);
    if (v1 && v2 && *v1 == *v2) return *v1;
    throw PrecisionExhausted("contact order unstable at the declared truncation");
}

bool equisingular_by_diagram(const CurveSpec& a, const CurveSpec& b) {
    EnriquesDiagram da = build_diagram(resolve(a));
    EnriquesDiagram db = build_diagram(resolve(b));
    return isomorphic(da, db).has_value();
}

namespace {

CurveSpec singleton(const CurveSpec& s, size_t idx) {
    CurveSpec one;
    one.branches = {s.branches[idx]};
    one.implicit_equation = s.implicit_equation;
    return one;
}

std::string standalone_code(const CurveSpec& s, size_t idx) {
    return canonical_code(build_diagram(resolve(singleton(s, idx))));
}

}  // namespace

std::optional<BranchMatching> find_matching(const CurveSpec& a, const CurveSpec& b) {
    size_t n = a.branches.size();
    if (n != b.branches.size()) return std::nullopt;
    if (n == 0) return BranchMatching{};

    std::vector<std::string> codes_a(n), codes_b(n);
    for (size_t i = 0; i < n; ++i) codes_a[i] = standalone_code(a, i);
    for (size_t j = 0; j < n; ++j) codes_b[j] = standalone_code(b, j);

    std::vector<std::vector<long>> ia(n, std::vector<long>(n, 0));
    std::vector<std::vector<long>> ib(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            ia[i][j] = ia[j][i] = intersection_noether(singleton(a, i), singleton(a, j)).total;
            ib[i][j] = ib[j][i] = intersection_noether(singleton(b, i), singleton(b, j)).total;
        }
    }

    std::vector<int> assign(n, -1);
    std::vector<char> used(n, 0);
    std::function<bool(size_t)> go = [&](size_t i) -> bool {
        if (i == n) return true;
        for (size_t j = 0; j < n; ++j) {
            if (used[j] || codes_a[i] != codes_b[j]) continue;
            bool ok = true;
            for (size_t k = 0; k < i && ok; ++k) {
                if (ia[i][k] != ib[j][static_cast<size_t>(assign[k])]) ok = false;
            }
            if (!ok) continue;
            used[j] = 1;
            assign[i] = static_cast<int>(j);
            if (go(i + 1)) return true;
            used[j] = 0;
            assign[i] = -1;
        }
        return false;
    };
    if (!go(0)) return std::nullopt;

    BranchMatching m;
    for (size_t i = 0; i < n; ++i) {
        m.emplace_back(a.branches[i].id, b.branches[static_cast<size_t>(assign[i])].id);
    }
    return m;
}

bool verify_matching(const CurveSpec& a, const CurveSpec& b, const BranchMatching& m) {
    size_t n = a.branches.size();
    if (b.branches.size() != n || m.size() != n) return false;
    std::map<int, size_t> idx_a, idx_b;
    for (size_t i = 0; i < n; ++i) idx_a[a.branches[i].id] = i;
    for (size_t j = 0; j < n; ++j) idx_b[b.branches[j].id] = j;
    std::map<int, int> fwd;
    std::map<int, int> bwd;
    for (const auto& [x, y] : m) {
        if (!idx_a.count(x) || !idx_b.count(y)) return false;
        if (!fwd.emplace(x, y).second || !bwd.emplace(y, x).second) return false;
    }
    if (fwd.size() != n) return false;
    for (const auto& [x, y] : m) {
        if (standalone_code(a, idx_a[x]) != standalone_code(b, idx_b[y])) return false;
    }
    for (size_t p = 0; p < m.size(); ++p) {
        for (size_t q = p + 1; q < m.size(); ++q) {
            long va = intersection_noether(singleton(a, idx_a[m[p].first]),
                                           singleton(a, idx_a[m[q].first]))
                          .total;
            long vb = intersection_noether(singleton(b, idx_b[m[p].second]),
                                           singleton(b, idx_b[m[q].second]))
                          .total;
            if (va != vb) return false;
        }
    }
    return true;
}

bool equisingular_by_branches(const CurveSpec& a, const CurveSpec& b) {
    return find_matching(a, b).has_value();
}

}  // namespace singcurve
