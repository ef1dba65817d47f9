#pragma once

#include <string>

#include "singcurve/power_series.hpp"

namespace singcurve {

// One local branch at the origin, given parametrically as (x(t), y(t)).
// Both series vanish at t = 0, they are not both identically zero, and the
// gcd of every exponent appearing in their supports is 1, so the parameter
// is faithful.
struct BranchParam {
    int id = 0;
    std::string label;
    PowerSeries x, y;

    bool exact() const { return x.is_exact() && y.is_exact(); }

    // For exact polynomial data this is 1 + the largest written exponent;
    // for truncated data it is the smallest truncation bound present.
    long truncation_order() const;

    // min(order x, order y); a component that is exactly zero counts as
    // infinite order. Throws PrecisionExhausted when truncation hides it.
    long multiplicity() const;

    bool operator==(const BranchParam& o) const {
        return id == o.id && label == o.label && x == o.x && y == o.y;
    }
    bool operator!=(const BranchParam& o) const { return !(*this == o); }
};

}  // namespace singcurve
