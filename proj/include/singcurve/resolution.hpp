#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "singcurve/curve_input.hpp"

namespace singcurve {

// A point on the component created by the latest blow-up: a rational chart
// coordinate, or the single point at infinity of that chart.
struct Position {
    bool inf = false;
    Rational value;

    static Position at_infinity() {
        Position p;
        p.inf = true;
        return p;
    }
    static Position finite(Rational v) {
        Position p;
        p.value = std::move(v);
        return p;
    }

    bool operator==(const Position& o) const {
        return inf == o.inf && (inf || value == o.value);
    }
    bool operator!=(const Position& o) const { return !(*this == o); }
    bool operator<(const Position& o) const {
        if (inf != o.inf) return !inf;  // finite coordinates sort first
        if (inf) return false;
        return value < o.value;
    }

    std::string str() const { return inf ? "inf" : value.str(); }
};

// Identity of an exceptional component: the point whose blow-up created it.
struct ExceptionalRef {
    int creator = -1;
    int level = 0;  // level at which the component appeared

    bool operator==(const ExceptionalRef& o) const {
        return creator == o.creator && level == o.level;
    }
    bool operator<(const ExceptionalRef& o) const {
        return std::tie(level, creator) < std::tie(o.level, o.creator);
    }
};

enum class TangencyKind { None, LastPasted, EarlierPasted };

std::string tangency_name(TangencyKind k);

// A branch germ written in the chart of the current infinitely near point,
// together with which chart axes are exceptional components.
struct BranchTransformState {
    int branch = 0;
    PowerSeries u, v;
    std::optional<ExceptionalRef> u_axis;
    std::optional<ExceptionalRef> v_axis;
};

// min(order u, order v) with an exactly-zero component counting as infinite.
long state_multiplicity(const BranchTransformState& s);

// 'u' or 'v' when the germ is tangent to that chart axis, '\0' when its
// tangent direction is transversal to both.
char state_tangent_axis(const BranchTransformState& s);

struct TransformStep {
    Position child_position;
    BranchTransformState next;
};

// One blow-up of the chart origin. `created` names the component the
// blow-up pastes in; series divisions are carried to `cap` terms.
TransformStep transform_branch(const BranchTransformState& s, long cap,
                               const ExceptionalRef& created);

struct InfinitelyNearPoint {
    int id = 0;
    int parent = -1;  // -1 at the origin
    int level = 0;
    Position position;                        // undefined at the origin
    std::vector<ExceptionalRef> components;   // sorted, at most two
    std::vector<int> branches;                // sorted ids of branches through

    bool operator==(const InfinitelyNearPoint& o) const {
        return id == o.id && parent == o.parent && level == o.level &&
               position == o.position && components == o.components &&
               branches == o.branches;
    }
};

// A point lying on two exceptional components; free points lie on at most one.
bool is_satellite(const InfinitelyNearPoint& p);

// The constellation of infinitely near points of a resolution, with the
// multiplicity of every branch at every point it passes through and the
// tangency class of the branch transform there.
struct Cluster {
    std::vector<InfinitelyNearPoint> points;  // index == id, parents first
    std::map<std::pair<int, int>, long> mult;               // (point, branch)
    std::map<std::pair<int, int>, TangencyKind> tangency;   // (point, branch)

    const InfinitelyNearPoint& point(int id) const;
    std::vector<int> children(int id) const;
    // Point ids visited by a branch, origin first.
    std::vector<int> chain(int branch) const;
    // Positions chosen at levels 1..level(id) to reach the point.
    std::vector<Position> position_chain(int id) const;
    long branch_multiplicity(int id, int branch) const;
    long total_multiplicity(int id) const;
    TangencyKind tangency_at(int id, int branch) const;

    bool operator==(const Cluster& o) const {
        return points == o.points && mult == o.mult && tangency == o.tangency;
    }
    bool operator!=(const Cluster& o) const { return !(*this == o); }
};

// Checks that at every non-maximal point of every branch the multiplicity
// equals the sum over the points proximate to it. Throws InternalError.
void verify_proximity(const Cluster& c);

struct ResolveOptions {
    long start_truncation = 32;
    long max_truncation = 4096;
};

// Single pass at a fixed working precision. No stability certification.
Cluster resolve_once(const std::vector<BranchParam>& branches, long working_truncation);

// Certified resolution: exact inputs are accepted on their first complete
// pass; truncated inputs must produce identical clusters at two precisions;
// polynomial-backed inputs are re-extracted at doubled truncation until two
// consecutive clusters agree.
Cluster resolve(const CurveSpec& spec, const ResolveOptions& opts = {});

// Replays a branch along a recorded position chain (origin excluded) and
// returns its transform state at the endpoint. Used to operate on a germ in
// the chart of an infinitely near point.
BranchTransformState state_at(const BranchParam& b, const std::vector<Position>& chain,
                              long cap);

}  // namespace singcurve
