#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace plectic;
using namespace plectic::testing;

namespace {

const std::vector<std::string> xt{"x", "t"};
const std::vector<std::string> field_vars{"x", "t", "u", "rho_x", "rho_t"};

ScalarExpr P(const std::string& s, const std::vector<std::string>& vars = xt) { return parse_expr(s, vars); }

} // namespace

TEST_CASE("zero literal parses to the zero element", "[coeff]") {
    ScalarExpr z = P("0");
    CHECK(z.is_zero());
    CHECK(z == ScalarExpr(2));
}

TEST_CASE("coordinate name parses to the coordinate function", "[coeff]") {
    ScalarExpr r = P("rho_x", field_vars);
    CHECK(r == ScalarExpr::variable(5, 3));
    CHECK(P("-rho_x", field_vars) == -ScalarExpr::variable(5, 3));
}

TEST_CASE("rational function equal to a polynomial under cross multiplication", "[coeff]") {
    ScalarExpr q = P("(x^2-1)/(x-1)");
    ScalarExpr p = P("x+1");
    // Oracle: (x^2 - 1) * 1 - (x + 1) * (x - 1) expands to the zero polynomial.
    Poly x = Poly::variable(2, 0);
    Poly one = Poly::constant(2, Rational(1));
    Poly expanded = (x * x - one) * one - (x + one) * (x - one);
    CHECK(expanded.is_zero());
    CHECK(q == p);
    CHECK_FALSE(q == P("x-1"));
}

TEST_CASE("derivative of a coordinate is one", "[coeff]") {
    CHECK(P("rho_x", field_vars).derivative(3) == ScalarExpr::constant(5, Rational(1)));
    CHECK(P("rho_x", field_vars).derivative(0).is_zero());
}

TEST_CASE("partial derivative matches a symmetric difference quotient", "[coeff]") {
    ScalarExpr f = P("x^2*t");
    ScalarExpr fx = f.derivative(0);
    RationalVector at{Rational(3), Rational(2)};
    CHECK(fx.evaluate(at) == 12);
    // f is quadratic in x, so the symmetric quotient is exact for every h.
    Rational h(1, 7);
    RationalVector plus{at[0] + h, at[1]}, minus{at[0] - h, at[1]};
    Rational quotient = (f.evaluate(plus) - f.evaluate(minus)) / (2 * h);
    CHECK(quotient == fx.evaluate(at));
}

TEST_CASE("field inverse", "[coeff]") {
    CHECK(P("1/x") * P("x") == ScalarExpr::constant(2, Rational(1)));
    CHECK_THROWS_AS(P("x") / ScalarExpr(2), std::domain_error);
}

TEST_CASE("evaluation", "[coeff]") {
    RationalVector pt{Rational(0), Rational(0), Rational(0), Rational(1), Rational(0)};
    CHECK(P("rho_x", field_vars).evaluate(pt) == 1);
    // (3 + 1) / (3 - 1) = 2.
    CHECK(P("(x+1)/(x-1)").evaluate(RationalVector{Rational(3), Rational(0)}) == 2);
    CHECK_THROWS_AS(P("1/x").evaluate(RationalVector{Rational(0), Rational(5)}), PoleError);
    CHECK(P("1/x").has_pole_at(RationalVector{Rational(0), Rational(5)}));
}

TEST_CASE("decimal and rational literals are exact", "[coeff]") {
    CHECK(P("0.25*x") == P("x/4"));
    CHECK(P("3/6") == ScalarExpr::constant(2, Rational(1, 2)));
    CHECK(P("-(-x)") == P("x"));
    CHECK(P("2^3*x^0") == ScalarExpr::constant(2, Rational(8)));
}

TEST_CASE("parse errors carry a position", "[coeff]") {
    try {
        P("x + y");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
        CHECK(std::string(e.what()).find("position 4") != std::string::npos);
    }
    CHECK_THROWS_AS(P("x + * 2"), ParseError);
    CHECK_THROWS_AS(P("(x"), ParseError);
    CHECK_THROWS_AS(P(""), ParseError);
    CHECK_THROWS_AS(P("x/(t-t)"), ParseError);
    CHECK_THROWS_AS(P("x^-1"), ParseError);
}

TEST_CASE("printing", "[coeff]") {
    CHECK(P("x^2*t - 3/2").to_string(xt) == "x^2*t - 3/2");
    CHECK(ScalarExpr(2).to_string(xt) == "0");
}

TEST_CASE("property: field axioms", "[coeff][property]") {
    Random rnd(1001);
    for (int i = 0; i < 250; ++i) {
        ScalarExpr a = rnd.scalar(3), b = rnd.scalar(3), c = rnd.scalar(3);
        ScalarExpr zero(3), one = ScalarExpr::constant(3, Rational(1));
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a + (-a) == zero);
        REQUIRE(a * one == a);
        if (!a.is_zero()) REQUIRE(a * (one / a) == one);
    }
}

TEST_CASE("property: mixed partials commute", "[coeff][property]") {
    Random rnd(1002);
    for (int i = 0; i < 250; ++i) {
        ScalarExpr a = rnd.scalar(3);
        std::size_t u = rnd.integer(0, 2), v = rnd.integer(0, 2);
        REQUIRE(a.derivative(u).derivative(v) == a.derivative(v).derivative(u));
    }
}

TEST_CASE("property: Leibniz rule", "[coeff][property]") {
    Random rnd(1003);
    for (int i = 0; i < 250; ++i) {
        ScalarExpr a = rnd.scalar(3), b = rnd.scalar(3);
        std::size_t v = rnd.integer(0, 2);
        REQUIRE((a * b).derivative(v) == a * b.derivative(v) + b * a.derivative(v));
    }
}

TEST_CASE("property: parse after print is the identity", "[coeff][property]") {
    Random rnd(1004);
    const std::vector<std::string> names{"x", "t", "rho_x"};
    for (int i = 0; i < 250; ++i) {
        ScalarExpr a = rnd.scalar(3) + rnd.scalar(3) * rnd.scalar(3);
        REQUIRE(parse_expr(a.to_string(names), names) == a);
    }
}

TEST_CASE("property: symbolic derivative agrees with difference quotients", "[coeff][property]") {
    Random rnd(1005);
    for (int i = 0; i < 250; ++i) {
        // Degree <= 2 polynomials make the symmetric quotient exact.
        ScalarExpr a(rnd.poly(3));
        std::size_t v = rnd.integer(0, 2);
        RationalVector p = rnd.point(3);
        Rational h = Rational(1, rnd.integer(1, 9));
        RationalVector plus = p, minus = p;
        plus[v] += h;
        minus[v] -= h;
        REQUIRE((a.evaluate(plus) - a.evaluate(minus)) / (2 * h) == a.derivative(v).evaluate(p));
    }
}
