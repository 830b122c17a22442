#include <catch2/catch_amalgamated.hpp>

#include "plectic/fieldtheory.hpp"
#include "support.hpp"

using namespace plectic;
using namespace plectic::testing;

namespace {

struct Setup {
    ScalarField sf;
    PreMultisymplecticManifold m{sf.omega};
    SplitFrame frame = sf.frame(m);
    Thickening t = build_thickening(m, frame);
    FiberedChart base = make_fibered_chart(sf.chart, {"x", "t"});
    FiberedChart big = [this] {
        std::vector<std::string> aux;
        for (const auto& f : t.fibers) aux.push_back(f.name);
        return make_fibered_chart(t.big_chart, {"x", "t"}, aux);
    }();

    Section section(const FiberedChart& f, const std::map<std::string, std::string>& comps) const {
        Section chi;
        for (std::size_t k = 0; k < f.fiber_dim(); ++k) {
            auto it = comps.find(f.fiber_name(k));
            chi.components.push_back(it == comps.end() ? ScalarExpr(2)
                                                       : parse_expr(it->second, f.base_chart->coords));
        }
        return chi;
    }
};

ScalarExpr jet(const EOMSystem& s, const std::string& src) { return parse_expr(src, s.jets.chart->coords); }

std::string random_poly_text(Random& rnd) {
    Poly p = rnd.poly(2, 4, 3);
    return p.is_zero() ? "0" : p.to_string(std::vector<std::string>{"x", "t"});
}

} // namespace

TEST_CASE("solution family has zero residual", "[fieldtheory]") {
    Setup s;
    auto r = eom_residual(s.sf.omega, s.base, s.section(s.base, {{"u", "3*x + 5"}, {"rho_x", "3"}, {"rho_t", "x^3*t - t^2/7"}}));
    CHECK(r.is_zero());
    CHECK(r.directions.size() == 3);
}

TEST_CASE("quadratic section leaves a residual", "[fieldtheory]") {
    Setup s;
    auto r = eom_residual(s.sf.omega, s.base, s.section(s.base, {{"u", "x^2"}, {"rho_x", "x"}, {"rho_t", "0"}}));
    CHECK_FALSE(r.is_zero());
    // Oracle: along d/du the residual is -dP^x/dx = -1; along d/drho_x it is
    // dphi/dx - P^x = 2x - x = x.
    std::vector<std::string> xt{"x", "t"};
    CHECK(r.directions[0].direction == "u");
    CHECK(r.directions[0].coefficient == parse_expr("-1", xt));
    CHECK(r.directions[1].coefficient == parse_expr("x", xt));
    CHECK(r.directions[2].coefficient.is_zero());
}

TEST_CASE("thickened residuals vanish on the physical fields and fix the time dependence", "[fieldtheory]") {
    Setup s;
    // phi = a + b x, P^x = b, P^t = c, every auxiliary field 0.
    auto chi = s.section(s.big, {{"u", "2 + 7*x"}, {"rho_x", "7"}, {"rho_t", "-3"}});
    auto r = eom_residual(s.t.omega_tilde, s.big, chi);
    CHECK(r.physical_zero());
    // A time-dependent phi breaks the thickened system but not the base one.
    auto moving = s.section(s.big, {{"u", "2 + 7*x + t"}, {"rho_x", "7"}, {"rho_t", "-3"}});
    auto rm = eom_residual(s.t.omega_tilde, s.big, moving);
    bool p_x_u_nonzero = false;
    for (const auto& d : rm.directions) p_x_u_nonzero = p_x_u_nonzero || (d.direction == "p_x_u" && !d.coefficient.is_zero());
    CHECK(p_x_u_nonzero);
    CHECK(eom_residual(s.sf.omega, s.base, s.section(s.base, {{"u", "2 + 7*x + t"}, {"rho_x", "7"}, {"rho_t", "-3"}}))
              .is_zero());
}

TEST_CASE("symbolic base system", "[fieldtheory]") {
    Setup s;
    EOMSystem sys = eom_symbolic_system(s.sf.omega, s.base);
    std::vector<ScalarExpr> expected{jet(sys, "rho_x_dx"), jet(sys, "u_dx - rho_x")};
    CHECK(same_system_up_to_sign(sys.physical(), expected));
    CHECK(sys.of_kind(EquationKind::Obstruction).empty());
}

TEST_CASE("symbolic thickened system", "[fieldtheory]") {
    Setup s;
    EOMSystem sys = eom_symbolic_system(s.t.omega_tilde, s.big);
    std::vector<ScalarExpr> expected{jet(sys, "u_dx - rho_x"), jet(sys, "u_dt"),      jet(sys, "rho_x_dx"),
                                     jet(sys, "rho_x_dt"),     jet(sys, "rho_t_dx"), jet(sys, "rho_t_dt")};
    CHECK(same_system_up_to_sign(sys.physical(), expected));
    // The constant residual along d/dp_x_t is surfaced, not hidden.
    auto obstructions = sys.of_kind(EquationKind::Obstruction);
    REQUIRE(obstructions.size() == 1);
    CHECK(obstructions.front()->direction == "p_x_t");
    CHECK(sys.of_kind(EquationKind::Derived).size() == 2);
    CHECK(sys.of_kind(EquationKind::Constraint).empty());
    std::size_t aux = 0;
    for (const auto& r : sys.residuals) aux += r.auxiliary ? 1 : 0;
    CHECK(aux == 7);
}

TEST_CASE("zero form gives an empty system", "[fieldtheory]") {
    Setup s;
    EOMSystem sys = eom_symbolic_system(Form(s.sf.chart, 3), s.base);
    CHECK(sys.equations.empty());
}

TEST_CASE("degree and section errors", "[fieldtheory]") {
    Setup s;
    Form two(s.sf.chart, 2);
    CHECK_THROWS_AS(eom_residual(two, s.base, s.section(s.base, {{"u", "0"}, {"rho_x", "0"}, {"rho_t", "0"}})),
                    FieldTheoryError);
    CHECK_THROWS_AS(eom_symbolic_system(two, s.base), FieldTheoryError);
    Section short_chi{{ScalarExpr(2)}};
    CHECK_THROWS_AS(eom_residual(s.sf.omega, s.base, short_chi), FieldTheoryError);
    auto polar = s.section(s.base, {{"u", "1/x"}, {"rho_x", "0"}, {"rho_t", "0"}});
    CHECK_THROWS_AS(eom_residual(s.sf.omega, s.base, polar), PoleError);
    CHECK_THROWS_AS(make_fibered_chart(s.sf.chart, {"x", "y"}), FieldTheoryError);
}

TEST_CASE("monic normalization", "[fieldtheory]") {
    Setup s;
    EOMSystem sys = eom_symbolic_system(s.sf.omega, s.base);
    auto m = monic_in_leading_jet(jet(sys, "2*u_dt - 4*rho_x_dx + 6*x"), sys.jets);
    REQUIRE(m);
    CHECK(m->first == jet(sys, "u_dt - 2*rho_x_dx + 3*x"));
    CHECK(sys.jets.chart->coords[m->second] == "u_dt");
    CHECK_FALSE(monic_in_leading_jet(jet(sys, "u_dx*u_dt"), sys.jets));
    CHECK_FALSE(monic_in_leading_jet(jet(sys, "rho_x"), sys.jets));
}

TEST_CASE("property: gauge freedom in the momentum P^t", "[fieldtheory][property]") {
    Setup s;
    Random rnd(6001);
    for (int i = 0; i < 200; ++i) {
        std::string a = rnd.rational().get_str(), b = rnd.rational().get_str();
        std::string g = random_poly_text(rnd), h = random_poly_text(rnd);
        std::string phi = a + " + (" + b + ")*x";
        auto r = eom_residual(s.sf.omega, s.base, s.section(s.base, {{"u", phi}, {"rho_x", b}, {"rho_t", g}}));
        REQUIRE(r.is_zero());
        // Arbitrary phi, P^x: residuals do not see P^t at all.
        std::string f = random_poly_text(rnd), px = random_poly_text(rnd);
        auto r1 = eom_residual(s.sf.omega, s.base, s.section(s.base, {{"u", f}, {"rho_x", px}, {"rho_t", g}}));
        auto r2 = eom_residual(s.sf.omega, s.base, s.section(s.base, {{"u", f}, {"rho_x", px}, {"rho_t", h}}));
        for (std::size_t k = 0; k < r1.directions.size(); ++k) {
            REQUIRE(r1.directions[k].coefficient == r2.directions[k].coefficient);
        }
    }
}

TEST_CASE("property: residuals are linear in the form", "[fieldtheory][property]") {
    Setup s;
    Random rnd(6002);
    for (int i = 0; i < 200; ++i) {
        Form w1 = rnd.form(s.sf.chart, 3, 3, false), w2 = rnd.form(s.sf.chart, 3, 3, false);
        auto chi = s.section(s.base, {{"u", random_poly_text(rnd)}, {"rho_x", random_poly_text(rnd)},
                                      {"rho_t", random_poly_text(rnd)}});
        auto a = eom_residual(w1, s.base, chi), b = eom_residual(w2, s.base, chi), sum = eom_residual(w1 + w2, s.base, chi);
        for (std::size_t k = 0; k < sum.directions.size(); ++k) {
            REQUIRE(sum.directions[k].coefficient == a.directions[k].coefficient + b.directions[k].coefficient);
        }
    }
}

TEST_CASE("property: symbolic residuals specialize to concrete residuals", "[fieldtheory][property]") {
    Setup s;
    Random rnd(6003);
    EOMSystem sys = eom_symbolic_system(s.sf.omega, s.base);
    const std::size_t n = sys.jets.chart->dim();
    for (int i = 0; i < 200; ++i) {
        std::vector<std::string> texts{random_poly_text(rnd), random_poly_text(rnd), random_poly_text(rnd)};
        auto chi = s.section(s.base, {{"u", texts[0]}, {"rho_x", texts[1]}, {"rho_t", texts[2]}});
        auto concrete = eom_residual(s.sf.omega, s.base, chi);
        // Substitute fields and their partials into the jet-variable residuals.
        std::vector<ScalarExpr> values(n, ScalarExpr(2));
        values[0] = ScalarExpr::variable(2, 0);
        values[1] = ScalarExpr::variable(2, 1);
        for (std::size_t k = 0; k < 3; ++k) {
            values[sys.jets.fiber_index(k)] = chi.components[k];
            for (std::size_t b = 0; b < 2; ++b) values[sys.jets.jet_index(k, b)] = chi.components[k].derivative(b);
        }
        for (std::size_t k = 0; k < 3; ++k) {
            REQUIRE(sys.residuals[k].coefficient.compose(values) == concrete.directions[k].coefficient);
        }
    }
}
