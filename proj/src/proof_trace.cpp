#include "singcurve/proof_trace.hpp"

#include <algorithm>
#include <set>

#include "singcurve/errors.hpp"

namespace singcurve {

namespace {

std::map<int, std::vector<Position>> chains_of(const CurveSpec& s) {
    Cluster cl = resolve(s);
    std::map<int, std::vector<Position>> out;
    for (const auto& b : s.branches) {
        std::vector<int> ids = cl.chain(b.id);
        std::vector<Position> ch;
        for (size_t k = 1; k < ids.size(); ++k) ch.push_back(cl.point(ids[k]).position);
        out[b.id] = std::move(ch);
    }
    return out;
}

size_t common_prefix_len(const std::vector<Position>& x, const std::vector<Position>& y) {
    size_t l = 0;
    while (l < x.size() && l < y.size() && x[l] == y[l]) ++l;
    return l;
}

const std::vector<Position>& chain_for(const std::map<int, std::vector<Position>>& chains,
                                       int id) {
    auto it = chains.find(id);
    if (it == chains.end()) {
        throw UnknownBranch("branch " + std::to_string(id) + " has no resolved chain");
    }
    return it->second;
}

// The coordinate change at the pivot carrying the direction `src` onto `dst`
// while fixing every exceptional axis. The guards are structural: a moved
// line is never an exceptional direction on either end.
std::pair<PowerSeries, PowerSeries> apply_move(const BranchTransformState& st,
                                               const Position& src, const Position& dst) {
    const PowerSeries& u = st.u;
    const PowerSeries& v = st.v;
    if (src == dst) throw InternalError("move with identical endpoints");
    if (!src.inf && !dst.inf) {
        if (!src.value.is_zero() && !dst.value.is_zero()) {
            return {u, v.times(dst.value / src.value)};
        }
        // a shear displaces the {v = 0} direction, which must then be free
        if (st.v_axis) throw InternalError("move would displace a component");
        return {u, v + u.times(dst.value - src.value)};
    }
    if (!src.inf && dst.inf) {
        if (src.value.is_zero()) {
            if (st.u_axis || st.v_axis) throw InternalError("axis swap away from the origin");
            return {v, u};
        }
        if (st.u_axis) throw InternalError("move would displace a component");
        return {v - u.times(src.value), v};
    }
    // src at infinity, dst finite
    if (st.u_axis) throw InternalError("move would displace a component");
    if (dst.value.is_zero()) {
        if (st.v_axis) throw InternalError("axis swap away from the origin");
        return {v, u};
    }
    return {u + v.times(dst.value.inverse()), v};
}

std::pair<PowerSeries, PowerSeries> blow_down(PowerSeries u, PowerSeries v,
                                              const std::vector<Position>& chain) {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        if (it->inf) {
            u = u * v;
        } else {
            v = u * (v + PowerSeries::constant(it->value));
        }
    }
    return {std::move(u), std::move(v)};
}

const BranchParam& branch_of(const CurveSpec& s, int id) {
    for (const auto& b : s.branches) {
        if (b.id == id) return b;
    }
    throw UnknownBranch("branch " + std::to_string(id) + " is not in the curve");
}

// Rewrites every branch of `cur` that passes the pivot and continues along
// `src`, carrying it onto `dst`. The rewritten curve no longer matches any
// implicit equation it arrived with.
CurveSpec rewrite_tangent_group(const CurveSpec& cur,
                                const std::map<int, std::vector<Position>>& chains,
                                const std::vector<Position>& pchain, const Position& src,
                                const Position& dst, long cap, std::vector<int>& moved) {
    CurveSpec out = cur;
    out.implicit_equation.reset();
    for (auto& b : out.branches) {
        const auto& ch = chain_for(chains, b.id);
        if (ch.size() <= pchain.size()) continue;
        if (!std::equal(pchain.begin(), pchain.end(), ch.begin())) continue;
        if (!(ch[pchain.size()] == src)) continue;
        BranchTransformState st = state_at(b, pchain, cap);
        auto [u2, v2] = apply_move(st, src, dst);
        st.u = std::move(u2);
        st.v = std::move(v2);
        auto [x2, y2] = blow_down(st.u, st.v, pchain);
        b.x = std::move(x2);
        b.y = std::move(y2);
        moved.push_back(b.id);
    }
    if (moved.empty()) throw InternalError("no branch follows the line to be moved");
    return out;
}

struct StepOutcome {
    TraceMove move;
    CurveSpec next;
};

StepOutcome trace_step(const CurveSpec& a, const CurveSpec& cur, const BranchMatching& m,
                       long cap) {
    auto ca = chains_of(a);
    auto cb = chains_of(cur);

    // deepest pivot whose pair continues on both sides
    int best_i = -1;
    int best_j = -1;
    size_t best_l = 0;
    bool found = false;
    for (const auto& [i, j] : m) {
        const auto& x = chain_for(ca, i);
        const auto& y = chain_for(cb, j);
        size_t l = common_prefix_len(x, y);
        if (x.size() > l && y.size() > l && (!found || l > best_l)) {
            found = true;
            best_l = l;
            best_i = i;
            best_j = j;
        }
    }
    if (!found) throw InternalError("no pair can be moved despite a remaining defect");

    const auto& lead = chain_for(ca, best_i);
    std::vector<Position> pchain(lead.begin(), lead.begin() + static_cast<long>(best_l));
    Position target = lead[best_l];
    Position source = chain_for(cb, best_j)[best_l];

    auto passes_pivot = [&](const std::vector<Position>& ch) {
        return ch.size() > best_l && std::equal(pchain.begin(), pchain.end(), ch.begin());
    };

    std::set<Position> occupied;
    for (const auto& [id, ch] : ca) {
        if (passes_pivot(ch)) occupied.insert(ch[best_l]);
    }
    bool target_taken = false;
    for (const auto& [id, ch] : cb) {
        if (passes_pivot(ch)) {
            occupied.insert(ch[best_l]);
            if (ch[best_l] == target) target_taken = true;
        }
    }
    BranchTransformState probe = state_at(branch_of(a, best_i), pchain, cap);
    if (probe.u_axis) occupied.insert(Position::at_infinity());
    if (probe.v_axis) occupied.insert(Position::finite(Rational(0)));

    TraceMove mv;
    mv.first_branch = best_i;
    mv.second_branch = best_j;
    mv.point = pchain;
    mv.source_line = source;
    mv.target_line = target;

    CurveSpec work = cur;
    if (target_taken) {
        long k = 0;
        while (occupied.count(Position::finite(Rational(k)))) ++k;
        Position fresh = Position::finite(Rational(k));
        mv.detour = true;
        mv.detour_line = fresh;
        work = rewrite_tangent_group(work, cb, pchain, target, fresh, cap, mv.detoured);
        cb = chains_of(work);
    }
    work = rewrite_tangent_group(work, cb, pchain, source, target, cap, mv.moved);
    mv.after = work;
    return {std::move(mv), std::move(work)};
}

Trace run_trace(const CurveSpec& a, const CurveSpec& b, const BranchMatching& matching,
                long n0, long cap) {
    Trace tr;
    tr.matching = matching;
    tr.initial_count = n0;
    CurveSpec cur = b;
    long n = n0;
    while (n > 0) {
        if (static_cast<long>(tr.moves.size()) >= n0) {
            throw InternalError("trace exceeded its step budget");
        }
        StepOutcome so = trace_step(a, cur, matching, cap);
        so.move.count_before = n;
        if (!equisingular_by_diagram(b, so.next)) {
            throw InternalError("move broke the diagram class");
        }
        if (!equisingular_by_branches(b, so.next)) {
            throw InternalError("move broke the branch classes");
        }
        if (!verify_matching(a, so.next, matching)) {
            throw InternalError("move invalidated the branch matching");
        }
        long n2 = noncommon_count(a, so.next, matching);
        if (n2 >= n) throw InternalError("move failed to reduce the defect");
        so.move.count_after = n2;
        cur = std::move(so.next);
        tr.moves.push_back(std::move(so.move));
        n = n2;
    }
    auto ca = chains_of(a);
    auto cb = chains_of(cur);
    for (const auto& [i, j] : matching) {
        if (chain_for(ca, i) != chain_for(cb, j)) {
            throw InternalError("trace finished with distinct chains");
        }
    }
    tr.final_curve = std::move(cur);
    return tr;
}

}  // namespace

long noncommon_count(const CurveSpec& a, const CurveSpec& b, const BranchMatching& m) {
    auto ca = chains_of(a);
    auto cb = chains_of(b);
    long n = 0;
    for (const auto& [i, j] : m) {
        const auto& x = chain_for(ca, i);
        const auto& y = chain_for(cb, j);
        size_t l = common_prefix_len(x, y);
        n += static_cast<long>(x.size() - l) + static_cast<long>(y.size() - l);
    }
    return n;
}

Trace build_trace(const CurveSpec& a, const CurveSpec& b) {
    bool route1 = equisingular_by_diagram(a, b);
    std::optional<BranchMatching> m = find_matching(a, b);
    if (route1 != m.has_value()) throw InternalError("equisingularity routes disagree");
    if (!route1) throw NotEquisingular("the curves are not equisingular");

    long n0 = noncommon_count(a, b, *m);
    if (n0 == 0) {
        throw NotApplicable("the curves already share all their infinitely near points");
    }

    // Replaying a branch into a deep chart divides series, so precision can
    // run out; retry once with a larger window before giving up.
    std::string message;
    for (long cap : {256L, 1024L}) {
        try {
            return run_trace(a, b, *m, n0, cap);
        } catch (const PrecisionExhausted& e) {
            message = e.what();
        }
    }
    throw PrecisionExhausted(message);
}

}  // namespace singcurve
