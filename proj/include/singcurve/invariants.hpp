#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "singcurve/enriques.hpp"
#include "singcurve/newton_puiseux.hpp"

namespace singcurve {

// Exponents where the gcd of the normalized parametrization's support drops,
// led by the multiplicity itself. A smooth branch yields {1}.
std::vector<long> characteristic_exponents(const BranchParam& b);

// Multiplicity sequence predicted from the exponents alone by a subtractive
// division walk. Independent of the blow-up engine.
std::vector<long> multiplicity_walk(const std::vector<long>& exponents);

// Multiplicity sequence read off the resolution of the branch on its own.
std::vector<long> multiplicity_sequence(const BranchParam& b);

// Minimal generators of the set of contact orders the branch realizes
// against germs through the origin.
std::vector<long> semigroup_generators(const BranchParam& b);

struct IntersectionTerm {
    int point = 0;
    long first = 0;
    long second = 0;
};

struct IntersectionReport {
    long total = 0;
    std::vector<IntersectionTerm> terms;
    Cluster cluster;  // the joint resolution the terms refer to
};

// Intersection number as the sum, over points shared by the two curves, of
// the products of their multiplicities there.
IntersectionReport intersection_noether(const CurveSpec& a, const CurveSpec& b);

// Intersection number of two branches by eliminating the parameter of the
// second one and reading the vanishing order along the first.
long intersection_by_elimination(const BranchParam& a, const BranchParam& b);

using BranchMatching = std::vector<std::pair<int, int>>;

// Route one: compare the shapes of the full resolution diagrams.
bool equisingular_by_diagram(const CurveSpec& a, const CurveSpec& b);

// Route two: match branches by their standalone diagram shapes and require
// equal pairwise intersection numbers under the matching.
std::optional<BranchMatching> find_matching(const CurveSpec& a, const CurveSpec& b);
bool verify_matching(const CurveSpec& a, const CurveSpec& b, const BranchMatching& m);
bool equisingular_by_branches(const CurveSpec& a, const CurveSpec& b);

}  // namespace singcurve
