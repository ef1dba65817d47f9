#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "singcurve/curve_input.hpp"
#include "singcurve/enriques.hpp"
#include "singcurve/errors.hpp"
#include "support/oracles.hpp"

using namespace singcurve;
using testsupport::curve_of;
using testsupport::param_branch;

namespace {

std::vector<EdgeKind> edge_kinds(const EnriquesDiagram& d, int branch) {
    std::vector<int> ids = d.chain(branch);
    std::vector<EdgeKind> out;
    for (size_t k = 1; k < ids.size(); ++k) out.push_back(d.vertex(ids[k]).inbound);
    return out;
}

}  // namespace

TEST_CASE("cusp diagram") {
    EnriquesDiagram d = build_diagram(resolve(curve_of("x^2 - y^3")));
    REQUIRE(d.vertices.size() == 4);
    CHECK(d.vertex(0).weight() == 2);
    CHECK(d.vertex(1).weight() == 1);
    CHECK(edge_kinds(d, 0) ==
          std::vector<EdgeKind>{EdgeKind::Curved, EdgeKind::StraightPerp,
                                EdgeKind::Curved});
    CHECK(canonical_code(d) == "(r(c(p(c))))");
}

TEST_CASE("edge kinds on deeper cusps") {
    EnriquesDiagram d = build_diagram(resolve(curve_of("x^3 - y^7")));
    CHECK(edge_kinds(d, 0) ==
          std::vector<EdgeKind>{EdgeKind::Curved, EdgeKind::Curved,
                                EdgeKind::StraightPerp, EdgeKind::StraightExt,
                                EdgeKind::Curved});

    EnriquesDiagram e = build_diagram(resolve(curve_of("x^2 - y^5")));
    CHECK(edge_kinds(e, 0) ==
          std::vector<EdgeKind>{EdgeKind::Curved, EdgeKind::Curved,
                                EdgeKind::StraightPerp, EdgeKind::Curved});

    EnriquesDiagram f = build_diagram(resolve(curve_of("x^3 - y^5")));
    CHECK(edge_kinds(f, 0) ==
          std::vector<EdgeKind>{EdgeKind::Curved, EdgeKind::StraightPerp,
                                EdgeKind::StraightPerp, EdgeKind::Curved});
}

TEST_CASE("edge kind names") {
    CHECK(edge_kind_name(EdgeKind::Curved) == "curved");
    CHECK(edge_kind_name(EdgeKind::StraightPerp) == "straight");
    CHECK(edge_kind_name(EdgeKind::StraightExt) == "straight-extension");
}

TEST_CASE("same class gives equal codes, different classes differ") {
    std::string cusp = canonical_code(build_diagram(resolve(curve_of("x^2 - y^3"))));
    std::string cusp2 = canonical_code(build_diagram(resolve(curve_of("(x - y)^2 - y^3"))));
    std::string cusp3 = canonical_code(build_diagram(resolve(curve_of("x^2 - y^3 - y^4"))));
    CHECK(cusp == cusp2);
    CHECK(cusp == cusp3);

    std::string e25 = canonical_code(build_diagram(resolve(curve_of("x^2 - y^5"))));
    std::string e35 = canonical_code(build_diagram(resolve(curve_of("x^3 - y^5"))));
    CHECK(cusp != e25);
    CHECK(cusp != e35);
    CHECK(e25 != e35);
}

TEST_CASE("codes ignore branch labels") {
    CurveSpec a;
    a.branches = {param_branch(0, "t", "0"), param_branch(1, "0", "t")};
    CurveSpec b;
    b.branches = {param_branch(0, "0", "t"), param_branch(1, "t", "0")};
    CHECK(canonical_code(build_diagram(resolve(a))) ==
          canonical_code(build_diagram(resolve(b))));
}

TEST_CASE("isomorphic returns a checked vertex map") {
    EnriquesDiagram a = build_diagram(resolve(curve_of("x^2 - y^3")));
    EnriquesDiagram b = build_diagram(resolve(curve_of("(x - y)^2 - y^3")));
    auto m = isomorphic(a, b);
    REQUIRE(m.has_value());
    CHECK(m->size() == a.vertices.size());
    CHECK(m->at(0) == 0);  // roots correspond
    for (const auto& [va, vb] : *m) {
        CHECK(a.vertex(va).level == b.vertex(vb).level);
        CHECK(a.vertex(va).inbound == b.vertex(vb).inbound);
        if (a.vertex(va).parent >= 0) {
            CHECK(m->at(a.vertex(va).parent) == b.vertex(vb).parent);
        }
    }

    CHECK(!isomorphic(a, build_diagram(resolve(curve_of("x^2 - y^5")))).has_value());
}

TEST_CASE("subdiagram extracts one branch") {
    EnriquesDiagram joint =
        build_diagram(resolve(curve_of("x^4 - 2*x^2*y^3 - x^2*y^4 + y^6 + y^7")));
    REQUIRE(joint.vertices.size() == 7);
    EnriquesDiagram sub = subdiagram(joint, 0);
    CHECK(sub.vertices.size() == 6);
    for (const auto& v : sub.vertices) {
        CHECK(v.branch_weight.count(0) == 1);
        CHECK(v.branch_weight.size() == 1);
    }
    // travelling beside the second cusp stretches the chain: the standalone
    // cusp diagram is shorter, so the shapes must differ
    EnriquesDiagram alone = build_diagram(resolve(curve_of("x^2 - y^3")));
    CHECK(alone.vertices.size() == 4);
    CHECK(canonical_code(sub) != canonical_code(alone));
}

TEST_CASE("dot rendering is deterministic and styled") {
    EnriquesDiagram d = build_diagram(resolve(curve_of("x^3 - y^7")));
    std::string dot = to_dot(d);
    CHECK(dot == to_dot(d));
    CHECK(dot.find("graph diagram {") == 0);
    CHECK(dot.find("style=solid") != std::string::npos);   // curved
    CHECK(dot.find("style=bold") != std::string::npos);    // straight
    CHECK(dot.find("style=dashed") != std::string::npos);  // straight-extension
    CHECK(dot.find("label=\"3\"") != std::string::npos);
}

TEST_CASE("first and last edges of every chain are curved") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        CurveSpec s = testsupport::random_curve(rng);
        EnriquesDiagram d = build_diagram(resolve(s));
        for (const auto& b : s.branches) {
            std::vector<int> ids = d.chain(b.id);
            REQUIRE(ids.size() >= 2);
            CHECK(d.vertex(ids[1]).inbound == EdgeKind::Curved);
            CHECK(d.vertex(ids.back()).inbound == EdgeKind::Curved);
        }
    }
}

TEST_CASE("an extension edge never follows a curved edge") {
    std::mt19937_64 rng(8);
    for (int iter = 0; iter < 40; ++iter) {
        CurveSpec s = testsupport::random_curve(rng);
        EnriquesDiagram d = build_diagram(resolve(s));
        for (const auto& v : d.vertices) {
            if (v.inbound != EdgeKind::StraightExt) continue;
            const auto& p = d.vertex(v.parent);
            REQUIRE(p.parent >= 0);
            CHECK(p.inbound != EdgeKind::Curved);
        }
    }
}

TEST_CASE("canonical code survives a relabeling round-trip") {
    std::mt19937_64 rng(9);
    for (int iter = 0; iter < 25; ++iter) {
        CurveSpec s = testsupport::random_curve(rng);
        if (s.branches.size() < 2) continue;
        CurveSpec r = s;
        std::reverse(r.branches.begin(), r.branches.end());
        for (size_t i = 0; i < r.branches.size(); ++i) r.branches[i].id = static_cast<int>(i);
        EnriquesDiagram da = build_diagram(resolve(s));
        EnriquesDiagram db = build_diagram(resolve(r));
        CHECK(canonical_code(da) == canonical_code(db));
        CHECK(isomorphic(da, db).has_value());
    }
}
