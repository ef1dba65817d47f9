#include "singcurve/resolution.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "singcurve/errors.hpp"
#include "singcurve/newton_puiseux.hpp"

namespace singcurve {

namespace {

enum class OrdCls { Finite, AtLeast, Infinite };

struct OrdView {
    OrdCls cls;
    long val = 0;
};

OrdView view_of(const PowerSeries& s) {
    OrderInfo oi = s.order_info();
    switch (oi.kind) {
        case OrderInfo::Kind::Known:
            return {OrdCls::Finite, oi.order};
        case OrderInfo::Kind::Indeterminate:
            return {OrdCls::AtLeast, oi.order};
        case OrderInfo::Kind::ExactZero:
        default:
            return {OrdCls::Infinite, 0};
    }
}

// Compares ord(u) against ord(v), treating an exactly-zero component as
// infinite order. A truncated component with no visible terms is comparable
// only when the other side's order is strictly below its truncation; a germ
// is never the zero point, so an exactly-zero partner settles the comparison.
int compare_orders(const PowerSeries& u, const PowerSeries& v) {
    OrdView a = view_of(u);
    OrdView b = view_of(v);
    if (a.cls == OrdCls::Infinite && b.cls == OrdCls::Infinite) {
        throw InternalError("branch transform state is identically zero");
    }
    if (a.cls == OrdCls::Infinite) return 1;
    if (b.cls == OrdCls::Infinite) return -1;
    if (a.cls == OrdCls::Finite && b.cls == OrdCls::Finite) {
        if (a.val < b.val) return -1;
        if (a.val > b.val) return 1;
        return 0;
    }
    if (a.cls == OrdCls::Finite) {  // b truncated with no visible terms
        if (a.val < b.val) return -1;
        throw PrecisionExhausted("component order hidden beyond truncation");
    }
    if (b.cls == OrdCls::Finite) {
        if (b.val < a.val) return 1;
        throw PrecisionExhausted("component order hidden beyond truncation");
    }
    throw PrecisionExhausted("component orders hidden beyond truncation");
}

}  // namespace

std::string tangency_name(TangencyKind k) {
    switch (k) {
        case TangencyKind::None:
            return "transversal";
        case TangencyKind::LastPasted:
            return "tangent-latest";
        case TangencyKind::EarlierPasted:
        default:
            return "tangent-earlier";
    }
}

long state_multiplicity(const BranchTransformState& s) {
    int cmp = compare_orders(s.u, s.v);
    const PowerSeries& low = cmp <= 0 ? s.u : s.v;
    OrderInfo oi = low.order_info();
    if (oi.kind != OrderInfo::Kind::Known) {
        throw PrecisionExhausted("multiplicity undetermined at working precision");
    }
    return oi.order;
}

char state_tangent_axis(const BranchTransformState& s) {
    int cmp = compare_orders(s.u, s.v);
    if (cmp < 0) return 'v';  // u vanishes slower, so the germ hugs {v = 0}
    if (cmp > 0) return 'u';
    return '\0';
}

TransformStep transform_branch(const BranchTransformState& s, long cap,
                               const ExceptionalRef& created) {
    int cmp = compare_orders(s.u, s.v);
    TransformStep step;
    step.next.branch = s.branch;
    if (cmp <= 0) {
        Rational c;
        if (cmp == 0) c = s.v.leading_coeff() / s.u.leading_coeff();
        PowerSeries quot = s.v.div(s.u, cap);
        step.next.u = s.u;
        step.next.v = quot - PowerSeries::constant(c);
        step.child_position = Position::finite(c);
        step.next.u_axis = created;
        if (c.is_zero()) step.next.v_axis = s.v_axis;
    } else {
        step.next.u = s.u.div(s.v, cap);
        step.next.v = s.v;
        step.child_position = Position::at_infinity();
        step.next.v_axis = created;
        step.next.u_axis = s.u_axis;
    }
    return step;
}

bool is_satellite(const InfinitelyNearPoint& p) { return p.components.size() == 2; }

const InfinitelyNearPoint& Cluster::point(int id) const {
    if (id < 0 || id >= static_cast<int>(points.size())) {
        throw InternalError("point id out of range: " + std::to_string(id));
    }
    return points[static_cast<size_t>(id)];
}

std::vector<int> Cluster::children(int id) const {
    std::vector<int> out;
    for (const auto& p : points) {
        if (p.parent == id) out.push_back(p.id);
    }
    return out;
}

std::vector<int> Cluster::chain(int branch) const {
    // Points are created level by level, so ids along a branch are already
    // ordered from the origin outward.
    std::vector<int> out;
    for (const auto& p : points) {
        if (std::find(p.branches.begin(), p.branches.end(), branch) != p.branches.end()) {
            out.push_back(p.id);
        }
    }
    if (out.empty()) {
        throw UnknownBranch("branch " + std::to_string(branch) + " is not in the cluster");
    }
    return out;
}

std::vector<Position> Cluster::position_chain(int id) const {
    std::vector<Position> out;
    int cur = id;
    while (cur != 0) {
        const InfinitelyNearPoint& p = point(cur);
        out.push_back(p.position);
        cur = p.parent;
        if (cur < 0) throw InternalError("point chain does not reach the origin");
    }
    std::reverse(out.begin(), out.end());
    return out;
}

long Cluster::branch_multiplicity(int id, int branch) const {
    auto it = mult.find({id, branch});
    if (it == mult.end()) {
        throw UnknownBranch("no multiplicity for branch " + std::to_string(branch) +
                            " at point " + std::to_string(id));
    }
    return it->second;
}

long Cluster::total_multiplicity(int id) const {
    long sum = 0;
    for (int b : point(id).branches) sum += branch_multiplicity(id, b);
    return sum;
}

TangencyKind Cluster::tangency_at(int id, int branch) const {
    auto it = tangency.find({id, branch});
    if (it == tangency.end()) {
        throw UnknownBranch("no tangency class for branch " + std::to_string(branch) +
                            " at point " + std::to_string(id));
    }
    return it->second;
}

void verify_proximity(const Cluster& cl) {
    if (cl.points.empty()) throw InternalError("empty cluster");
    for (int b : cl.points.front().branches) {
        std::vector<int> chain = cl.chain(b);
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            int pid = chain[i];
            long sum = 0;
            for (size_t j = i + 1; j < chain.size(); ++j) {
                for (const auto& comp : cl.point(chain[j]).components) {
                    if (comp.creator == pid) {
                        sum += cl.branch_multiplicity(chain[j], b);
                        break;
                    }
                }
            }
            if (cl.branch_multiplicity(pid, b) != sum) {
                throw InternalError("proximity equality violated for branch " +
                                    std::to_string(b) + " at point " + std::to_string(pid));
            }
        }
    }
}

Cluster resolve_once(const std::vector<BranchParam>& branches, long working_truncation) {
    if (branches.empty()) throw Error("no branches to resolve");
    if (working_truncation < 2) throw Error("working truncation must be at least 2");
    {
        std::set<int> seen;
        for (const auto& b : branches) {
            if (!seen.insert(b.id).second) {
                throw InternalError("duplicate branch id " + std::to_string(b.id));
            }
        }
    }
    const long w = working_truncation;
    constexpr int kMaxLevels = 10000;

    Cluster cl;
    InfinitelyNearPoint origin;
    origin.id = 0;
    origin.parent = -1;
    origin.level = 0;
    for (const auto& b : branches) origin.branches.push_back(b.id);
    std::sort(origin.branches.begin(), origin.branches.end());
    cl.points.push_back(origin);

    std::vector<BranchTransformState> init;
    for (const auto& b : branches) {
        BranchTransformState st;
        st.branch = b.id;
        st.u = b.x;
        st.v = b.y;
        init.push_back(std::move(st));
    }
    std::sort(init.begin(), init.end(),
              [](const BranchTransformState& a, const BranchTransformState& b) {
                  return a.branch < b.branch;
              });

    std::vector<std::pair<int, std::vector<BranchTransformState>>> frontier;
    frontier.emplace_back(0, std::move(init));

    while (!frontier.empty()) {
        std::vector<std::pair<int, std::vector<BranchTransformState>>> next_frontier;
        for (auto& [pid, states] : frontier) {
            const int level = cl.point(pid).level;
            if (level > kMaxLevels) throw InternalError("resolution did not terminate");

            int latest_component_level = 0;
            for (const auto& comp : cl.point(pid).components) {
                latest_component_level = std::max(latest_component_level, comp.level);
            }
            for (const auto& st : states) {
                cl.mult[{pid, st.branch}] = state_multiplicity(st);
                char ax = state_tangent_axis(st);
                std::optional<ExceptionalRef> tangent_comp;
                if (ax == 'u') tangent_comp = st.u_axis;
                if (ax == 'v') tangent_comp = st.v_axis;
                TangencyKind kind = TangencyKind::None;
                if (tangent_comp) {
                    kind = tangent_comp->level == latest_component_level
                               ? TangencyKind::LastPasted
                               : TangencyKind::EarlierPasted;
                }
                cl.tangency[{pid, st.branch}] = kind;
            }

            if (states.size() == 1) {
                // A lone smooth germ crossing a single component transversally
                // is fully resolved.
                const auto& st = states.front();
                bool smooth = cl.branch_multiplicity(pid, st.branch) == 1;
                bool one_component = cl.point(pid).components.size() == 1;
                bool transversal = cl.tangency_at(pid, st.branch) == TangencyKind::None;
                if (smooth && one_component && transversal) continue;
            }

            ExceptionalRef created{pid, level + 1};
            std::map<Position, std::vector<BranchTransformState>> groups;
            for (const auto& st : states) {
                TransformStep step = transform_branch(st, w, created);
                groups[step.child_position].push_back(std::move(step.next));
            }
            for (auto& [pos, group] : groups) {
                InfinitelyNearPoint child;
                child.id = static_cast<int>(cl.points.size());
                child.parent = pid;
                child.level = level + 1;
                child.position = pos;
                for (const auto& st : group) {
                    std::vector<ExceptionalRef> comps;
                    if (st.u_axis) comps.push_back(*st.u_axis);
                    if (st.v_axis) comps.push_back(*st.v_axis);
                    std::sort(comps.begin(), comps.end());
                    if (child.branches.empty()) {
                        child.components = comps;
                    } else if (child.components != comps) {
                        throw InconsistentTangency(
                            "branches disagree about the components through point " +
                            std::to_string(child.id));
                    }
                    child.branches.push_back(st.branch);
                }
                std::sort(child.branches.begin(), child.branches.end());
                cl.points.push_back(child);
                next_frontier.emplace_back(child.id, std::move(group));
            }
        }
        frontier = std::move(next_frontier);
    }

    verify_proximity(cl);
    return cl;
}

namespace {

enum class PrecisionMode { ExactAll, Backed, Capped };

std::vector<BranchParam> prepared_at(const CurveSpec& spec, PrecisionMode mode, long w) {
    std::vector<BranchParam> out = spec.branches;
    if (mode == PrecisionMode::Backed) {
        for (auto& b : out) b = extend_branch(*spec.implicit_equation, b, w);
    } else if (mode == PrecisionMode::Capped) {
        for (auto& b : out) {
            if (!b.exact()) {
                b.x = b.x.truncate_to(w);
                b.y = b.y.truncate_to(w);
            }
        }
    }
    return out;
}

}  // namespace

Cluster resolve(const CurveSpec& spec, const ResolveOptions& opts) {
    if (spec.branches.empty()) throw Error("curve has no branches");
    bool all_exact = true;
    long native = std::numeric_limits<long>::max();
    for (const auto& b : spec.branches) {
        if (!b.exact()) {
            all_exact = false;
            native = std::min(native, b.truncation_order());
        }
    }
    PrecisionMode mode = all_exact ? PrecisionMode::ExactAll
                         : spec.implicit_equation.has_value() ? PrecisionMode::Backed
                                                              : PrecisionMode::Capped;

    long w;
    if (mode == PrecisionMode::Capped) {
        w = std::max<long>(2, native / 2);
    } else {
        w = std::max<long>(4, opts.start_truncation);
    }

    std::optional<Cluster> prev;
    while (true) {
        bool ok = false;
        Cluster cur;
        try {
            std::vector<BranchParam> prep = prepared_at(spec, mode, w);
            for (size_t i = 0; i < prep.size(); ++i) {
                for (size_t j = i + 1; j < prep.size(); ++j) {
                    if (same_germ(prep[i], prep[j])) {
                        throw CommonBranch("branches " + std::to_string(prep[i].id) +
                                           " and " + std::to_string(prep[j].id) +
                                           " parametrize the same germ");
                    }
                }
            }
            cur = resolve_once(prep, w);
            ok = true;
        } catch (const PrecisionExhausted&) {
            // A failed pass gives no cluster to compare against; certification
            // restarts from the next precision.
            prev.reset();
        }
        if (ok) {
            if (mode == PrecisionMode::ExactAll) return cur;
            if (prev && *prev == cur) return cur;
            prev = std::move(cur);
        }
        if (mode == PrecisionMode::Capped) {
            if (w >= native) {
                throw PrecisionExhausted(
                    "cannot certify the resolution at the declared truncation");
            }
            w = std::min(native, w * 2);
        } else {
            if (w >= opts.max_truncation) {
                throw PrecisionExhausted("resolution unstable up to the truncation cap");
            }
            w = std::min(opts.max_truncation, w * 2);
        }
    }
}

BranchTransformState state_at(const BranchParam& b, const std::vector<Position>& chain,
                              long cap) {
    BranchTransformState st;
    st.branch = b.id;
    st.u = b.x;
    st.v = b.y;
    int level = 0;
    for (const auto& pos : chain) {
        ++level;
        TransformStep step = transform_branch(st, cap, ExceptionalRef{-1, level});
        if (!(step.child_position == pos)) {
            throw InternalError("replayed branch leaves its chain at level " +
                                std::to_string(level));
        }
        st = std::move(step.next);
    }
    return st;
}

}  // namespace singcurve
