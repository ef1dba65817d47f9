#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "singcurve/curve_input.hpp"
#include "singcurve/errors.hpp"
#include "singcurve/invariants.hpp"
#include "support/oracles.hpp"

using namespace singcurve;
using testsupport::curve_of;
using testsupport::oracle_walk;
using testsupport::param_branch;

TEST_CASE("characteristic exponents of pinned germs") {
    CHECK(characteristic_exponents(param_branch(0, "t^3", "t^2")) ==
          std::vector<long>{2, 3});
    CHECK(characteristic_exponents(param_branch(0, "t^5", "t^2")) ==
          std::vector<long>{2, 5});
    CHECK(characteristic_exponents(param_branch(0, "t^5", "t^3")) ==
          std::vector<long>{3, 5});
    CHECK(characteristic_exponents(param_branch(0, "t^7", "t^3")) ==
          std::vector<long>{3, 7});
    CHECK(characteristic_exponents(param_branch(0, "t^7", "t^2")) ==
          std::vector<long>{2, 7});
    CHECK(characteristic_exponents(param_branch(0, "t^4", "t^6 + t^9")) ==
          std::vector<long>{4, 6, 9});
    CHECK(characteristic_exponents(param_branch(0, "t", "0")) ==
          std::vector<long>{1});
    CHECK(characteristic_exponents(param_branch(0, "0", "t")) ==
          std::vector<long>{1});
    // the exponents see through the parametrization, not just its supports
    CHECK(characteristic_exponents(param_branch(0, "t^3 + 3*t^4 + 3*t^5 + t^6",
                                                "t^2 + 2*t^3 + t^4")) ==
          std::vector<long>{2, 3});
}

TEST_CASE("characteristic exponents of a truncated branch") {
    CurveSpec s = curve_of("x^2 - y^3 - y^4");
    REQUIRE(!s.branches[0].exact());
    CHECK(characteristic_exponents(s.branches[0]) == std::vector<long>{2, 3});

    // too little data to ever reach gcd 1
    BranchParam thin;
    thin.id = 0;
    thin.x = PowerSeries::monomial(4, Rational(1));
    thin.y = PowerSeries({{6, Rational(1)}}, 8);
    CHECK_THROWS_AS(characteristic_exponents(thin), PrecisionExhausted);
}

TEST_CASE("multiplicity walk matches the subtractive oracle") {
    std::vector<std::vector<long>> tables = {
        {2, 3}, {2, 5}, {3, 5}, {3, 7}, {2, 7}, {4, 6, 9}, {1},
        {4, 6, 13}, {6, 9, 22}, {5, 7}, {8, 12, 18, 19},
    };
    for (const auto& beta : tables) {
        CAPTURE(beta);
        CHECK(multiplicity_walk(beta) == oracle_walk(beta));
    }
    CHECK(multiplicity_walk({2, 3}) == std::vector<long>{2, 1, 1, 1});
    CHECK(multiplicity_walk({2, 5}) == std::vector<long>{2, 2, 1, 1, 1});
    CHECK(multiplicity_walk({3, 5}) == std::vector<long>{3, 2, 1, 1, 1});
    CHECK(multiplicity_walk({3, 7}) == std::vector<long>{3, 3, 1, 1, 1, 1});
    CHECK(multiplicity_walk({4, 6, 9}) == std::vector<long>{4, 2, 2, 2, 1, 1, 1});
    CHECK(multiplicity_walk({1}) == std::vector<long>{1, 1});
}

TEST_CASE("walk input validation") {
    CHECK_THROWS_AS(multiplicity_walk({}), Error);
    CHECK_THROWS_AS(multiplicity_walk({2, 4}), Error);  // gcd never reaches 1
    CHECK_THROWS_AS(multiplicity_walk({2}), Error);     // lone exponent must be 1
    CHECK_THROWS_AS(multiplicity_walk({0, 3}), Error);
    CHECK_THROWS_AS(multiplicity_walk({3, 3}), Error);  // zero step
}

TEST_CASE("resolution multiplicities equal the walk") {
    std::vector<std::pair<std::string, std::string>> germs = {
        {"t^3", "t^2"},        {"t^5", "t^2"}, {"t^5", "t^3"},
        {"t^7", "t^3"},        {"t^7", "t^2"}, {"t^4", "t^6 + t^9"},
        {"t^4", "t^6 + t^7"},  {"t", "0"},     {"t^6", "t^4 + t^9"},
    };
    for (const auto& [xs, ys] : germs) {
        CAPTURE(xs);
        CAPTURE(ys);
        BranchParam b = param_branch(0, xs, ys);
        CHECK(multiplicity_sequence(b) == multiplicity_walk(characteristic_exponents(b)));
    }
}

TEST_CASE("semigroup generators of pinned germs") {
    CHECK(semigroup_generators(param_branch(0, "t^3", "t^2")) ==
          std::vector<long>{2, 3});
    CHECK(semigroup_generators(param_branch(0, "t^4", "t^6 + t^9")) ==
          std::vector<long>{4, 6, 15});
    CHECK(semigroup_generators(param_branch(0, "t", "0")) == std::vector<long>{1});
    CHECK(semigroup_generators(param_branch(0, "t^5", "t^2")) ==
          std::vector<long>{2, 5});
    CHECK(semigroup_generators(param_branch(0, "t^7", "t^3")) ==
          std::vector<long>{3, 7});
}

TEST_CASE("noether table for two close cusps") {
    CurveSpec a = curve_of("x^2 - y^3");
    CurveSpec b = curve_of("x^2 - y^3 - y^4");
    IntersectionReport rep = intersection_noether(a, b);
    CHECK(rep.total == 8);
    REQUIRE(rep.terms.size() == 5);
    CHECK(rep.terms[0].first == 2);
    CHECK(rep.terms[0].second == 2);
    for (size_t k = 1; k < rep.terms.size(); ++k) {
        CHECK(rep.terms[k].first == 1);
        CHECK(rep.terms[k].second == 1);
    }

    // the other route agrees
    CHECK(intersection_by_elimination(a.branches[0], b.branches[0]) == 8);
    CHECK(intersection_by_elimination(b.branches[0], a.branches[0]) == 8);
}

TEST_CASE("intersections with the axes") {
    CurveSpec cusp = curve_of("x^2 - y^3");
    CurveSpec liney;
    liney.branches = {param_branch(0, "t", "0")};
    CurveSpec linex;
    linex.branches = {param_branch(0, "0", "t")};

    CHECK(intersection_noether(cusp, liney).total == 2);
    CHECK(intersection_noether(cusp, linex).total == 3);
    CHECK(intersection_by_elimination(cusp.branches[0], liney.branches[0]) == 2);
    CHECK(intersection_by_elimination(cusp.branches[0], linex.branches[0]) == 3);
    CHECK(intersection_by_elimination(liney.branches[0], cusp.branches[0]) == 2);
    CHECK(intersection_by_elimination(linex.branches[0], cusp.branches[0]) == 3);
    CHECK(intersection_noether(liney, linex).total == 1);
}

TEST_CASE("intersection of tangent smooth germs grows with contact") {
    BranchParam a = param_branch(0, "t", "t^2");
    BranchParam b = param_branch(1, "t", "t^2 + t^5");
    CurveSpec ca, cb;
    ca.branches = {a};
    cb.branches = {b};
    CHECK(intersection_noether(ca, cb).total == 5);
    CHECK(intersection_by_elimination(a, b) == 5);
}

TEST_CASE("common branches are refused") {
    BranchParam a = param_branch(0, "t^3", "t^2");
    BranchParam b = param_branch(1, "0 - t^3", "t^2");
    CHECK_THROWS_AS(intersection_by_elimination(a, b), CommonBranch);
    CurveSpec ca, cb;
    ca.branches = {a};
    cb.branches = {b};
    CHECK_THROWS_AS(intersection_noether(ca, cb), CommonBranch);
}

TEST_CASE("a parametrization that returns to the origin is refused") {
    // x = t^2(1 - t), y = t^3(1 - t): passes through the origin again at t = 1
    BranchParam weird = param_branch(0, "t^2 - t^3", "t^3 - t^4");
    BranchParam cusp = param_branch(1, "t^3", "t^2");
    CHECK_THROWS_AS(intersection_by_elimination(cusp, weird), NotApplicable);
}

TEST_CASE("narrow windows refuse instead of guessing") {
    CurveSpec b6 = curve_of("x^2 - y^3 - y^4", 6);
    BranchParam cusp = param_branch(5, "t^3", "t^2");
    REQUIRE(!b6.branches[0].exact());
    // window w1 erases the t^4 term and the germs collapse together
    CHECK_THROWS_AS(intersection_by_elimination(cusp, b6.branches[0]),
                    PrecisionExhausted);
}

TEST_CASE("equisingularity deciders on pinned pairs") {
    CHECK(equisingular_by_diagram(curve_of("x^2 - y^3"), curve_of("(x - y)^2 - y^3")));
    CHECK(equisingular_by_branches(curve_of("x^2 - y^3"), curve_of("(x - y)^2 - y^3")));
    CHECK(equisingular_by_diagram(curve_of("x^2 - y^3"), curve_of("x^2 - y^3 - y^4")));
    CHECK(equisingular_by_branches(curve_of("x^2 - y^3"), curve_of("x^2 - y^3 - y^4")));
    CHECK(!equisingular_by_diagram(curve_of("x^2 - y^3"), curve_of("x^2 - y^5")));
    CHECK(!equisingular_by_branches(curve_of("x^2 - y^3"), curve_of("x^2 - y^5")));
}

TEST_CASE("tangency of a line to a cusp separates the deciders' inputs") {
    // same branch inventory, different mutual position
    CurveSpec transversal = curve_of("(x^2 - y^3) * y");
    CurveSpec tangent = curve_of("(x^2 - y^3) * x");
    REQUIRE(transversal.branches.size() == 2);
    REQUIRE(tangent.branches.size() == 2);
    CHECK(!equisingular_by_diagram(transversal, tangent));
    CHECK(!equisingular_by_branches(transversal, tangent));

    // against a coefficient-perturbed copy both deciders accept
    CurveSpec other = curve_of("(x^2 - y^3 - y^4) * y");
    CHECK(equisingular_by_diagram(transversal, other));
    CHECK(equisingular_by_branches(transversal, other));
}

TEST_CASE("find_matching returns a usable branch matching") {
    CurveSpec a = curve_of("(x^2 - y^3) * y");
    CurveSpec b = curve_of("(x^2 - y^3 - y^4) * y");
    auto m = find_matching(a, b);
    REQUIRE(m.has_value());
    CHECK(verify_matching(a, b, *m));

    // the matching must pair the cusp with the cusp
    for (const auto& [i, j] : *m) {
        bool a_smooth = a.branches[static_cast<size_t>(i)].multiplicity() == 1;
        bool b_smooth = b.branches[static_cast<size_t>(j)].multiplicity() == 1;
        CHECK(a_smooth == b_smooth);
    }

    // a deliberately wrong pairing fails the recheck
    if (m->size() == 2) {
        BranchMatching wrong = {{(*m)[0].first, (*m)[1].second},
                                {(*m)[1].first, (*m)[0].second}};
        CHECK(!verify_matching(a, b, wrong));
    }

    CHECK(!find_matching(a, curve_of("x^2 - y^3")).has_value());
    CHECK(!find_matching(a, curve_of("(x^2 - y^5) * y")).has_value());
}

TEST_CASE("matching survives branch reordering") {
    CurveSpec a = curve_of("(x^2 - y^3) * y");
    CurveSpec b = a;
    std::swap(b.branches[0], b.branches[1]);
    b.branches[0].id = 0;
    b.branches[1].id = 1;
    // identical germ inventories in a different order share a branch, so the
    // intersection table route must still find the crossed pairing
    auto m = find_matching(a, b);
    REQUIRE(m.has_value());
    CHECK(verify_matching(a, b, *m));
    std::map<int, int> as_map(m->begin(), m->end());
    CHECK(as_map[0] == 1);
    CHECK(as_map[1] == 0);
}

TEST_CASE("deciders agree on random pairs") {
    std::mt19937_64 rng(5005);
    int done = 0;
    while (done < 60) {
        CurveSpec a = testsupport::random_curve(rng);
        CurveSpec b = testsupport::random_curve(rng);
        try {
            bool r1 = equisingular_by_diagram(a, b);
            bool r2 = equisingular_by_branches(a, b);
            CHECK(r1 == r2);
            ++done;
        } catch (const CommonBranch&) {
        } catch (const PrecisionExhausted&) {
        }
    }
}

TEST_CASE("intersection routes agree and commute on random pairs") {
    std::mt19937_64 rng(6006);
    int done = 0;
    while (done < 60) {
        CurveSpec a = testsupport::random_curve(rng, 2);
        CurveSpec b = testsupport::random_curve(rng, 2);
        try {
            IntersectionReport rep = intersection_noether(a, b);
            IntersectionReport swapped = intersection_noether(b, a);
            CHECK(rep.total == swapped.total);
            long sum = 0;
            for (const auto& ba : a.branches) {
                for (const auto& bb : b.branches) {
                    sum += intersection_by_elimination(ba, bb);
                }
            }
            CHECK(sum == rep.total);
            ++done;
        } catch (const CommonBranch&) {
        } catch (const PrecisionExhausted&) {
        } catch (const NotApplicable&) {
        }
    }
}
