#pragma once

#include <vector>

#include "singcurve/invariants.hpp"

namespace singcurve {

// One rewrite of the second curve: at the pivot point, the branches following
// `source_line` are carried onto `target_line`, after stepping aside any
// branches already occupying the target.
struct TraceMove {
    int first_branch = 0;
    int second_branch = 0;
    std::vector<Position> point;  // chain of the pivot, origin excluded
    Position source_line;
    Position target_line;
    bool detour = false;
    Position detour_line;         // meaningful only when detour is set
    std::vector<int> detoured;    // branches stepped aside first
    std::vector<int> moved;       // branches carried onto the target
    long count_before = 0;
    long count_after = 0;
    CurveSpec after;              // the second curve following this move
};

struct Trace {
    BranchMatching matching;
    long initial_count = 0;
    std::vector<TraceMove> moves;
    CurveSpec final_curve;
};

// Number of infinitely near points, summed over the matched branch pairs,
// that the two curves do not share.
long noncommon_count(const CurveSpec& a, const CurveSpec& b, const BranchMatching& m);

// Rewrites the second curve step by step until it passes through exactly the
// first curve's infinitely near points, checking after every move that the
// count drops and that the rewritten curve stays equisingular to the second
// curve as given. Throws NotEquisingular when no matching exists and
// NotApplicable when there is nothing to move.
Trace build_trace(const CurveSpec& a, const CurveSpec& b);

}  // namespace singcurve
