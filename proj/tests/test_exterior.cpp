#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace plectic;
using namespace plectic::testing;

namespace {

int sign_pow(std::size_t p) { return p % 2 == 0 ? 1 : -1; }

Form signed_form(int s, Form f) { return s > 0 ? f : -f; }

CoordinateMap random_map(Random& rnd, const ChartPtr& source, const ChartPtr& target) {
    CoordinateMap m{source, target, {}};
    for (std::size_t i = 0; i < target->dim(); ++i) m.components.push_back(rnd.scalar(source->dim(), false));
    return m;
}

} // namespace

TEST_CASE("wedge basics", "[exterior]") {
    auto c = make_chart("xt", {"x", "t"});
    Form dx = Form::differential(c, 0), dt = Form::differential(c, 1);
    CHECK(wedge(dx, dx).is_zero());
    CHECK(wedge(dx, dt) == -wedge(dt, dx));
}

TEST_CASE("wedge rebuilds the first summand of the degenerate form", "[exterior]") {
    ScalarField sf;
    Form du = Form::differential(sf.chart, 2), dt = Form::differential(sf.chart, 1),
         drx = Form::differential(sf.chart, 3);
    Form first = wedge(wedge(drx, du), dt);
    Form expected(sf.chart, 3);
    expected.add_term({3, 2, 1}, expr(sf.chart, "1"));
    CHECK(first == expected);
    CHECK(sf.omega - first == [&] {
        Form rest(sf.chart, 3);
        rest.add_term({3, 0, 1}, expr(sf.chart, "-rho_x"));
        return rest;
    }());
}

TEST_CASE("interior product", "[exterior]") {
    auto c = make_chart("xt", {"x", "t"});
    Form dtdx(c, 2);
    dtdx.add_term({1, 0}, ScalarExpr::constant(2, Rational(1)));
    CHECK(interior(VectorField::coordinate(c, 1), dtdx) == Form::differential(c, 0));

    ScalarField sf;
    CHECK(interior(sf.kernel_x(), sf.omega).is_zero());
    CHECK(interior(VectorField::coordinate(sf.chart, 4), sf.omega).is_zero());

    Form w = remark_form(4);
    CHECK(interior(VectorField::coordinate(w.chart(), 3), w).is_zero());
    CHECK_THROWS(interior(VectorField::coordinate(c, 0), Form::scalar(c, ScalarExpr(2))));
}

TEST_CASE("multi-contraction agrees with nested contractions", "[exterior]") {
    auto c = make_chart("xtu", {"x", "t", "u"});
    Form w(c, 3);
    w.add_term({1, 0, 2}, ScalarExpr::constant(3, Rational(1))); // dt^dx^du
    std::vector<VectorField> xs{VectorField::coordinate(c, 1), VectorField::coordinate(c, 0)};
    Form nested = interior(xs[1], interior(xs[0], w));
    Form multi = interior_multi(xs, w);
    CHECK(multi == nested);
    // w(dt, dx, .) = du under the declared ordering.
    CHECK(multi == Form::differential(c, 2));

    std::vector<VectorField> swapped{xs[1], xs[0]};
    CHECK(interior_multi(swapped, w) == -multi);

    ScalarField sf;
    std::vector<VectorField> kx{sf.kernel_x(), VectorField::coordinate(sf.chart, 1)};
    CHECK(interior_multi(kx, sf.omega).is_zero());
    // Oracle: expand omega(K, dt, .) term by term in the monomial basis.
    Form by_hand(sf.chart, 1);
    for (const auto& [idx, coeff] : sf.omega.terms()) {
        Form mono(sf.chart, 3);
        mono.add_term(idx, coeff);
        by_hand += interior(kx[1], interior(kx[0], mono));
    }
    CHECK(by_hand.is_zero());
}

TEST_CASE("exterior derivative", "[exterior]") {
    ScalarField sf;
    CHECK(d(sf.omega).is_zero());
    CHECK(d(sf.hamiltonian).is_zero());
    auto c = make_chart("xt", {"x", "t"});
    Form xdt(c, 1);
    xdt.add_term({1}, expr(c, "x"));
    Form expected(c, 2);
    expected.add_term({0, 1}, ScalarExpr::constant(2, Rational(1)));
    CHECK(d(xdt) == expected);
}

TEST_CASE("pullback along the identity", "[exterior]") {
    ScalarField sf;
    CHECK(pullback(CoordinateMap::identity(sf.chart), sf.omega) == sf.omega);
}

TEST_CASE("evaluation on vectors", "[exterior]") {
    auto c = make_chart("xt", {"x", "t"});
    Form dxdt = wedge(Form::differential(c, 0), Form::differential(c, 1));
    RationalVector origin(2);
    std::vector<RationalVector> fwd{unit(2, 0), unit(2, 1)}, back{unit(2, 1), unit(2, 0)};
    CHECK(eval_form(dxdt, origin, fwd) == 1);
    CHECK(eval_form(dxdt, origin, back) == -1);

    // omega at rho_x = 2 on (d/drho_x, d/du, d/dt): the first summand gives
    // det = 1, the second vanishes because dx(d/du) = dx(d/dt) = 0 on these.
    ScalarField sf;
    RationalVector pt{Rational(0), Rational(0), Rational(0), Rational(2), Rational(0)};
    std::vector<RationalVector> vs{unit(5, 3), unit(5, 2), unit(5, 1)};
    CHECK(eval_form(sf.omega, pt, vs) == 1);

    Form pole(c, 1);
    pole.add_term({0}, expr(c, "1/x"));
    CHECK_THROWS_AS(eval_form(pole, origin, std::vector<RationalVector>{unit(2, 0)}), PoleError);
    CHECK_THROWS(eval_form(dxdt, origin, std::vector<RationalVector>{unit(2, 0)}));
}

TEST_CASE("chart mismatch is rejected", "[exterior]") {
    auto a = make_chart("a", {"x", "t"});
    auto b = make_chart("b", {"x", "y"});
    CHECK_THROWS_AS(Form::differential(a, 0) + Form::differential(b, 0), ChartMismatch);
    CHECK_THROWS(make_chart("dup", {"x", "x"}));
}

TEST_CASE("property: d of d is zero", "[exterior][property]") {
    Random rnd(3001);
    auto c = make_chart("c4", {"a", "b", "c", "e"});
    for (int i = 0; i < 250; ++i) {
        std::size_t deg = rnd.integer(0, 4);
        Form f = rnd.form(c, deg);
        REQUIRE(d(d(f)).is_zero());
    }
}

TEST_CASE("property: wedge is graded commutative and associative", "[exterior][property]") {
    Random rnd(3002);
    auto c = make_chart("c4", {"a", "b", "c", "e"});
    for (int i = 0; i < 250; ++i) {
        std::size_t p = rnd.integer(0, 2), q = rnd.integer(0, 2), r = rnd.integer(0, 1);
        Form a = rnd.form(c, p), b = rnd.form(c, q), e = rnd.form(c, r);
        REQUIRE(wedge(a, b) == signed_form(sign_pow(p * q), wedge(b, a)));
        REQUIRE(wedge(wedge(a, b), e) == wedge(a, wedge(b, e)));
    }
}

TEST_CASE("property: graded Leibniz rule for d", "[exterior][property]") {
    Random rnd(3003);
    auto c = make_chart("c4", {"a", "b", "c", "e"});
    for (int i = 0; i < 250; ++i) {
        std::size_t p = rnd.integer(0, 2), q = rnd.integer(0, 2);
        Form a = rnd.form(c, p), b = rnd.form(c, q);
        REQUIRE(d(wedge(a, b)) == wedge(d(a), b) + signed_form(sign_pow(p), wedge(a, d(b))));
    }
}

TEST_CASE("property: interior product is a graded derivation", "[exterior][property]") {
    Random rnd(3004);
    auto c = make_chart("c4", {"a", "b", "c", "e"});
    for (int i = 0; i < 250; ++i) {
        std::size_t p = rnd.integer(1, 2), q = rnd.integer(1, 2);
        Form a = rnd.form(c, p), b = rnd.form(c, q);
        VectorField x = rnd.field(c);
        REQUIRE(interior(x, wedge(a, b)) ==
                wedge(interior(x, a), b) + signed_form(sign_pow(p), wedge(a, interior(x, b))));
        REQUIRE(interior(x, interior(x, wedge(a, b))).is_zero());
    }
}

TEST_CASE("property: pullback is functorial, multiplicative and commutes with d", "[exterior][property]") {
    Random rnd(3005);
    auto A = make_chart("A", {"s1", "s2", "s3"});
    auto B = make_chart("B", {"y1", "y2", "y3"});
    auto C = make_chart("C", {"z1", "z2", "z3"});
    for (int i = 0; i < 250; ++i) {
        CoordinateMap psi = random_map(rnd, A, B);
        CoordinateMap phi = random_map(rnd, B, C);
        std::size_t p = rnd.integer(0, 2), q = rnd.integer(0, 1);
        Form alpha = rnd.form(C, p, 2), beta = rnd.form(C, q, 2);
        REQUIRE(pullback(compose(phi, psi), alpha) == pullback(psi, pullback(phi, alpha)));
        REQUIRE(pullback(phi, d(alpha)) == d(pullback(phi, alpha)));
        REQUIRE(pullback(phi, wedge(alpha, beta)) == wedge(pullback(phi, alpha), pullback(phi, beta)));
    }
}

TEST_CASE("property: evaluation is alternating", "[exterior][property]") {
    Random rnd(3006);
    auto c = make_chart("c4", {"a", "b", "c", "e"});
    for (int i = 0; i < 250; ++i) {
        std::size_t deg = rnd.integer(2, 4);
        Form f = rnd.form(c, deg, 3, false);
        RationalVector pt = rnd.point(4);
        std::vector<RationalVector> vs;
        for (std::size_t k = 0; k < deg; ++k) vs.push_back(rnd.point(4));
        std::size_t a = rnd.integer(0, deg - 1), b = rnd.integer(0, deg - 2);
        if (b >= a) ++b;
        auto swapped = vs;
        std::swap(swapped[a], swapped[b]);
        REQUIRE(eval_form(f, pt, swapped) == -eval_form(f, pt, vs));
        // Point evaluation and symbolic contraction agree.
        PointForm pf = evaluate_at(f, pt);
        REQUIRE(pf.apply(vs) == eval_form(f, pt, vs));
    }
}
