#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "singcurve/curve_input.hpp"
#include "singcurve/errors.hpp"
#include "support/oracles.hpp"

using namespace singcurve;

TEST_CASE("polynomial parser handles the full grammar") {
    BivariatePolynomial f = parse_polynomial("(x - y)^2 - y^3");
    CHECK(f == parse_polynomial("x^2 - 2*x*y + y^2 - y^3"));
    CHECK(parse_polynomial("3/2*x") == parse_polynomial("x*3/2"));
    CHECK(parse_polynomial("-x^2") == parse_polynomial("0 - x^2"));
    CHECK(parse_polynomial("x^0").total_degree() == 0);
}

TEST_CASE("polynomial parser reports positions") {
    try {
        parse_polynomial("x^2 + ");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_polynomial("x^2 + z"), UnknownVariable);
    CHECK_THROWS_AS(parse_polynomial("2x"), SyntaxError);     // implicit product
    CHECK_THROWS_AS(parse_polynomial("x^-1"), SyntaxError);   // negative exponent
    CHECK_THROWS_AS(parse_polynomial("x^(2)"), SyntaxError);  // exponent is a literal
    CHECK_THROWS_AS(parse_polynomial(""), SyntaxError);
}

TEST_CASE("series parser uses t") {
    PowerSeries s = parse_series("t^2 - 1/3*t^4");
    CHECK(s.coeff(2) == Rational(1));
    CHECK(s.coeff(4) == Rational(-1, 3));
    CHECK(s.is_exact());
    CHECK_THROWS_AS(parse_series("x"), UnknownVariable);
}

TEST_CASE("parametrization parser") {
    BranchParam b = parse_parametrization("x(t) = t^3; y(t) = t^2 + t^5");
    CHECK(b.x == parse_series("t^3"));
    CHECK(b.y == parse_series("t^2 + t^5"));
    CHECK_THROWS_AS(parse_parametrization("t^3; t^2"), SyntaxError);
    CHECK_THROWS_AS(parse_parametrization("x(t) = t^3"), SyntaxError);
    CHECK_THROWS_AS(parse_parametrization("y(t) = t^2; x(t) = t^3"), SyntaxError);
}

TEST_CASE("branch validation") {
    BranchParam ok = testsupport::param_branch(0, "t^3", "t^2");
    CHECK_NOTHROW(validate_branch(ok));

    // constant term: the branch misses the origin
    BranchParam off = testsupport::param_branch(0, "1 + t", "t^2");
    CHECK_THROWS_AS(validate_branch(off), NonPositiveOrder);

    // identically zero point
    BranchParam zero = testsupport::param_branch(0, "0", "0");
    CHECK_THROWS_AS(validate_branch(zero), NonPositiveOrder);

    // all exponents even: parameter is not primitive
    BranchParam imp = testsupport::param_branch(0, "t^4", "t^2");
    CHECK_THROWS_AS(validate_branch(imp), ImprimitiveBranch);

    // one axis component is allowed
    BranchParam axis = testsupport::param_branch(0, "0", "t");
    CHECK_NOTHROW(validate_branch(axis));
}

TEST_CASE("curve validation") {
    CurveSpec s;
    s.branches.push_back(testsupport::param_branch(0, "t^3", "t^2"));
    s.branches.push_back(testsupport::param_branch(0, "t", "0"));
    CHECK_THROWS_AS(validate_curve(s), ConsistencyError);  // duplicate ids

    s.branches[1].id = 1;
    CHECK_NOTHROW(validate_curve(s));

    // implicit equation must vanish on every branch
    s.implicit_equation = parse_polynomial("x^2 - y^3");
    CHECK_THROWS_AS(validate_curve(s), ConsistencyError);

    s.branches.pop_back();
    CHECK_NOTHROW(validate_curve(s));
}

TEST_CASE("json polynomial document") {
    CurveSpec s = load_curve(R"({"polynomial": "x^2 - y^3"})", 16);
    REQUIRE(s.branches.size() == 1);
    CHECK(s.implicit_equation.has_value());
    CHECK(s.branches[0].x == parse_series("t^3"));
    CHECK(s.branches[0].y == parse_series("t^2"));
}

TEST_CASE("json branches document and round-trip") {
    std::string doc = R"({
      "branches": [
        {"x": "t^3", "y": "t^2"},
        {"x": "0", "y": "t", "label": "axis"}
      ]
    })";
    CurveSpec s = load_curve(doc);
    REQUIRE(s.branches.size() == 2);
    CHECK(s.branches[0].id == 0);
    CHECK(s.branches[1].id == 1);
    CHECK(s.branches[1].label == "axis");
    CHECK(!s.implicit_equation.has_value());

    CurveSpec again = load_curve(save_curve(s));
    CHECK(again.branches.size() == s.branches.size());
    for (size_t i = 0; i < s.branches.size(); ++i) {
        CHECK(again.branches[i].x == s.branches[i].x);
        CHECK(again.branches[i].y == s.branches[i].y);
        CHECK(again.branches[i].label == s.branches[i].label);
    }
}

TEST_CASE("json truncation applies to branch documents") {
    std::string doc = R"({
      "branches": [{"x": "t^3", "y": "t^2 + t^9"}],
      "truncation": 6
    })";
    CurveSpec s = load_curve(doc);
    REQUIRE(s.branches.size() == 1);
    CHECK(!s.branches[0].exact());
    CHECK(s.branches[0].truncation_order() == 6);
    // the t^9 term is beyond the declared knowledge and must be dropped
    CHECK(s.branches[0].y.coeffs().count(9) == 0);
}

TEST_CASE("json shape errors") {
    CHECK_THROWS_AS(load_curve("[]"), SchemaError);
    CHECK_THROWS_AS(load_curve("{}"), SchemaError);
    CHECK_THROWS_AS(load_curve(R"({"branches": []})"), SchemaError);
    CHECK_THROWS_AS(load_curve(R"({"polynomial": 3})"), SchemaError);
    CHECK_THROWS_AS(load_curve(R"({"branches": [{"x": "t"}]})"), SchemaError);
    CHECK_THROWS_AS(load_curve(R"({"branches": [{"x": "t", "y": "t"}], "truncation": 0})"),
                    SchemaError);
    CHECK_THROWS_AS(load_curve("not json at all"), SchemaError);
}

TEST_CASE("polynomial round-trip keeps the equation") {
    CurveSpec s = load_curve(R"({"polynomial": "x^2 - y^3"})");
    std::string out = save_curve(s);
    CurveSpec again = load_curve(out);
    CHECK(again.implicit_equation == s.implicit_equation);
    CHECK(again.branches[0].x == s.branches[0].x);
}
