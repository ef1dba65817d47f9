#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "singcurve/curve_input.hpp"
#include "singcurve/errors.hpp"
#include "singcurve/resolution.hpp"
#include "support/oracles.hpp"

using namespace singcurve;
using testsupport::curve_of;
using testsupport::param_branch;

namespace {

std::vector<Position> chain_positions(const Cluster& cl, int branch) {
    std::vector<int> ids = cl.chain(branch);
    std::vector<Position> out;
    for (size_t k = 1; k < ids.size(); ++k) out.push_back(cl.point(ids[k]).position);
    return out;
}

std::vector<long> chain_mults(const Cluster& cl, int branch) {
    std::vector<long> out;
    for (int id : cl.chain(branch)) out.push_back(cl.branch_multiplicity(id, branch));
    return out;
}

std::vector<Position> mkchain(const std::string& spec) {
    // compact notation: "i" = at infinity, otherwise a rational position
    std::vector<Position> out;
    size_t pos = 0;
    while (pos < spec.size()) {
        size_t next = spec.find(',', pos);
        std::string tok = spec.substr(pos, next == std::string::npos ? next : next - pos);
        if (tok == "i") {
            out.push_back(Position::at_infinity());
        } else {
            out.push_back(Position::finite(Rational::from_string(tok)));
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

int satellite_count(const Cluster& cl) {
    int n = 0;
    for (const auto& p : cl.points) {
        if (is_satellite(p)) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("position ordering and display") {
    CHECK(Position::finite(Rational(0)) < Position::finite(Rational(1)));
    CHECK(Position::finite(Rational(7)) < Position::at_infinity());
    CHECK(!(Position::at_infinity() < Position::at_infinity()));
    CHECK(Position::at_infinity().str() == "inf");
    CHECK(Position::finite(Rational(-1, 2)).str() == "-1/2");
}

TEST_CASE("cusp walk") {
    Cluster cl = resolve(curve_of("x^2 - y^3"));
    CHECK(cl.points.size() == 4);
    CHECK(chain_positions(cl, 0) == mkchain("i,0,1"));
    CHECK(chain_mults(cl, 0) == std::vector<long>{2, 1, 1, 1});
    CHECK(satellite_count(cl) == 1);
    CHECK(is_satellite(cl.point(2)));

    CHECK(cl.tangency_at(0, 0) == TangencyKind::None);
    CHECK(cl.tangency_at(1, 0) == TangencyKind::LastPasted);
    CHECK(cl.tangency_at(2, 0) == TangencyKind::None);
    CHECK(cl.tangency_at(3, 0) == TangencyKind::None);
}

TEST_CASE("higher cusp walks") {
    SUBCASE("t^5 vs t^2") {
        Cluster cl = resolve(curve_of("x^2 - y^5"));
        CHECK(cl.points.size() == 5);
        CHECK(chain_positions(cl, 0) == mkchain("i,i,0,1"));
        CHECK(chain_mults(cl, 0) == std::vector<long>{2, 2, 1, 1, 1});
        CHECK(satellite_count(cl) == 1);
    }
    SUBCASE("t^5 vs t^3") {
        Cluster cl = resolve(curve_of("x^3 - y^5"));
        CHECK(cl.points.size() == 5);
        CHECK(chain_positions(cl, 0) == mkchain("i,0,i,1"));
        CHECK(chain_mults(cl, 0) == std::vector<long>{3, 2, 1, 1, 1});
        CHECK(satellite_count(cl) == 2);
    }
    SUBCASE("t^7 vs t^3") {
        Cluster cl = resolve(curve_of("x^3 - y^7"));
        CHECK(cl.points.size() == 6);
        CHECK(chain_positions(cl, 0) == mkchain("i,i,0,0,1"));
        CHECK(chain_mults(cl, 0) == std::vector<long>{3, 3, 1, 1, 1, 1});
        CHECK(satellite_count(cl) == 2);
        // the second satellite leans on an earlier component
        CHECK(cl.tangency_at(2, 0) == TangencyKind::LastPasted);
        CHECK(cl.tangency_at(3, 0) == TangencyKind::EarlierPasted);
    }
}

TEST_CASE("smooth and axis germs") {
    CurveSpec sm;
    sm.branches = {param_branch(0, "t", "0")};
    Cluster cl = resolve(sm);
    CHECK(cl.points.size() == 2);
    CHECK(chain_positions(cl, 0) == mkchain("0"));
    CHECK(chain_mults(cl, 0) == std::vector<long>{1, 1});

    CurveSpec ax;
    ax.branches = {param_branch(0, "0", "t")};
    Cluster ca = resolve(ax);
    CHECK(ca.points.size() == 2);
    CHECK(chain_positions(ca, 0) == mkchain("i"));
}

TEST_CASE("two transversal lines separate at the origin") {
    CurveSpec s;
    s.branches = {param_branch(0, "t", "0"), param_branch(1, "0", "t")};
    Cluster cl = resolve(s);
    CHECK(cl.points.size() == 3);
    CHECK(cl.branch_multiplicity(0, 0) == 1);
    CHECK(cl.branch_multiplicity(0, 1) == 1);
    CHECK(cl.total_multiplicity(0) == 2);
    CHECK(cl.point(0).branches == std::vector<int>{0, 1});
    CHECK(cl.chain(0).size() == 2);
    CHECK(cl.chain(1).size() == 2);
}

TEST_CASE("two cusps sharing five points") {
    Cluster cl = resolve(curve_of("x^4 - 2*x^2*y^3 - x^2*y^4 + y^6 + y^7"));
    CHECK(cl.points.size() == 7);
    CHECK(cl.chain(0).size() == 6);
    CHECK(cl.chain(1).size() == 6);
    int shared = 0;
    for (const auto& p : cl.points) {
        if (p.branches.size() == 2) ++shared;
    }
    CHECK(shared == 5);
}

TEST_CASE("tangency kind names") {
    CHECK(tangency_name(TangencyKind::None) == "transversal");
    CHECK(tangency_name(TangencyKind::LastPasted) == "tangent-latest");
    CHECK(tangency_name(TangencyKind::EarlierPasted) == "tangent-earlier");
}

TEST_CASE("shared-branch input is rejected") {
    CurveSpec s;
    s.branches = {param_branch(0, "t^3", "t^2"), param_branch(1, "0 - t^3", "t^2")};
    CHECK_THROWS_AS(resolve(s), CommonBranch);
}

TEST_CASE("duplicate branch ids are rejected") {
    std::vector<BranchParam> bs = {param_branch(0, "t", "0"), param_branch(0, "0", "t")};
    CHECK_THROWS_AS(resolve_once(bs, 16), InternalError);
}

TEST_CASE("working precision does not change the certified cluster") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 30; ++iter) {
        CurveSpec s = testsupport::random_curve(rng);
        Cluster a = resolve_once(s.branches, 64);
        Cluster b = resolve_once(s.branches, 128);
        CHECK(a == b);
    }
}

TEST_CASE("state replay follows the recorded chain") {
    CurveSpec s = curve_of("x^3 - y^7");
    Cluster cl = resolve(s);
    std::vector<int> ids = cl.chain(0);
    std::vector<Position> ch = cl.position_chain(ids.back());
    BranchTransformState st = state_at(s.branches[0], ch, 64);
    CHECK(state_multiplicity(st) == cl.branch_multiplicity(ids.back(), 0));

    // a chain the branch does not follow is called out
    std::vector<Position> wrong = ch;
    wrong[0] = Position::finite(Rational(5));
    CHECK_THROWS_AS(state_at(s.branches[0], wrong, 64), InternalError);
}

TEST_CASE("proximity check trips on corrupted multiplicities") {
    Cluster cl = resolve(curve_of("x^2 - y^3"));
    CHECK_NOTHROW(verify_proximity(cl));
    Cluster bad = cl;
    bad.mult[{0, 0}] = 7;
    CHECK_THROWS_AS(verify_proximity(bad), InternalError);
}

TEST_CASE("resolution modes agree on the same curve") {
    BivariatePolynomial f = parse_polynomial("x^2 - y^3 - y^4");

    // backed by the equation, starting from few known terms
    CurveSpec backed;
    backed.branches = branches(f, 8);
    backed.implicit_equation = f;
    Cluster a = resolve(backed);

    // richer data, no equation
    CurveSpec capped;
    capped.branches = branches(f, 32);
    Cluster b = resolve(capped);

    // full exact reference does not exist for this germ, but the two
    // independent certifications must agree point for point
    CHECK(a == b);
}

TEST_CASE("hopelessly truncated data is refused") {
    BivariatePolynomial f = parse_polynomial("x^2 - y^3 - y^4");
    CurveSpec s;
    s.branches = branches(f, 32);
    s.branches[0].x = s.branches[0].x.truncate_to(4);
    s.branches[0].y = s.branches[0].y.truncate_to(4);
    CHECK_THROWS_AS(resolve(s), PrecisionExhausted);
}

TEST_CASE("every chain ends at a free simple point") {
    std::mt19937_64 rng(123);
    for (int iter = 0; iter < 40; ++iter) {
        CurveSpec s = testsupport::random_curve(rng);
        Cluster cl = resolve(s);
        for (const auto& b : s.branches) {
            std::vector<int> ids = cl.chain(b.id);
            int last = ids.back();
            CHECK(cl.branch_multiplicity(last, b.id) == 1);
            CHECK(cl.point(last).components.size() == 1);
            CHECK(cl.point(last).branches.size() == 1);
            CHECK(cl.tangency_at(last, b.id) == TangencyKind::None);
        }
    }
}

TEST_CASE("multiplicities never increase along a chain") {
    std::mt19937_64 rng(321);
    for (int iter = 0; iter < 40; ++iter) {
        CurveSpec s = testsupport::random_curve(rng);
        Cluster cl = resolve(s);
        for (const auto& b : s.branches) {
            std::vector<int> ids = cl.chain(b.id);
            for (size_t k = 1; k < ids.size(); ++k) {
                CHECK(cl.branch_multiplicity(ids[k], b.id) <=
                      cl.branch_multiplicity(ids[k - 1], b.id));
            }
        }
    }
}
