#pragma once

#include <random>
#include <string>
#include <vector>

#include "plectic/parse.hpp"
#include "plectic/splitting.hpp"
#include "plectic/thicken.hpp"

namespace plectic::testing {

inline std::string fixture(const std::string& name) { return std::string(PLECTIC_FIXTURES_DIR) + "/" + name; }

inline ScalarExpr expr(const ChartPtr& chart, const std::string& src) { return parse_expr(src, chart->coords); }

/// The scalar-field example: coordinates (x, t, u, rho_x, rho_t).
struct ScalarField {
    ChartPtr chart = make_chart("scalar_field_2d", {"x", "t", "u", "rho_x", "rho_t"});
    Form omega{chart, 3};
    Form hamiltonian{chart, 3};

    ScalarField() {
        omega.add_term({3, 2, 1}, expr(chart, "1"));
        omega.add_term({3, 0, 1}, expr(chart, "-rho_x"));
        hamiltonian.add_term({4, 2, 0}, expr(chart, "1"));
        hamiltonian.add_term({3, 2, 1}, expr(chart, "1"));
        hamiltonian.add_term({4, 0, 1}, expr(chart, "-rho_t"));
        hamiltonian.add_term({3, 0, 1}, expr(chart, "-rho_x"));
    }

    VectorField kernel_x() const { return {chart, {expr(chart, "1"), expr(chart, "0"), expr(chart, "rho_x"), expr(chart, "0"), expr(chart, "0")}}; }

    SplitFrame frame(const PreMultisymplecticManifold& m) const {
        return build_split_frame(m, {kernel_x(), VectorField::coordinate(chart, 4)},
                                 {VectorField::coordinate(chart, 1), VectorField::coordinate(chart, 2),
                                  VectorField::coordinate(chart, 3)});
    }
};

/// dx1^dx2^dx3 on R^n with coordinates x1..xn.
inline Form remark_form(std::size_t n, bool with_x5_term = false, bool with_x6_term = false) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    ChartPtr chart = make_chart("R" + std::to_string(n), names);
    Form w(chart, 3);
    w.add_term({0, 1, 2}, ScalarExpr::constant(n, Rational(1)));
    if (with_x5_term) w.add_term({0, 3, 4}, ScalarExpr::constant(n, Rational(1)));
    if (with_x6_term) w.add_term({1, 3, 5}, ScalarExpr::constant(n, Rational(1)));
    return w;
}

inline RationalVector unit(std::size_t dim, std::size_t i) {
    RationalVector e(dim);
    e[i] = 1;
    return e;
}

/// Random generators for property tests; all draws come from one seeded engine.
class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }
    std::mt19937_64& engine() { return rng_; }

    Rational rational() {
        Rational q(integer(-9, 9), integer(1, 4));
        q.canonicalize();
        return q;
    }

    RationalVector point(std::size_t dim) {
        RationalVector p(dim);
        for (auto& x : p) x = rational();
        return p;
    }

    Poly poly(std::size_t arity, std::size_t max_terms = 3, unsigned max_degree = 2) {
        Poly p(arity);
        std::size_t terms = integer(0, static_cast<long>(max_terms));
        for (std::size_t t = 0; t < terms; ++t) {
            Exponents e(arity, 0);
            unsigned deg = integer(0, max_degree);
            for (unsigned k = 0; k < deg; ++k) ++e[integer(0, static_cast<long>(arity) - 1)];
            p.add_term(e, Rational(integer(-3, 3)));
        }
        return p;
    }

    /// Polynomial, or occasionally a quotient by 1 + q_i^2 (pole-free on Q).
    ScalarExpr scalar(std::size_t arity, bool allow_rational = true) {
        Poly num = poly(arity);
        if (!allow_rational || integer(0, 3) != 0) return ScalarExpr(num);
        std::size_t i = integer(0, static_cast<long>(arity) - 1);
        Poly den = Poly::constant(arity, Rational(1)) + Poly::variable(arity, i) * Poly::variable(arity, i);
        return ScalarExpr(num, den);
    }

    Form form(const ChartPtr& chart, std::size_t degree, std::size_t max_terms = 3, bool allow_rational = true) {
        Form f(chart, degree);
        auto all = combinations(chart->dim(), degree);
        if (all.empty()) return f;
        std::size_t terms = integer(1, static_cast<long>(max_terms));
        for (std::size_t t = 0; t < terms; ++t) {
            f.add_term(all[integer(0, static_cast<long>(all.size()) - 1)], scalar(chart->dim(), allow_rational));
        }
        return f;
    }

    VectorField field(const ChartPtr& chart) {
        VectorField v = VectorField::zero(chart);
        for (auto& c : v.components) c = scalar(chart->dim(), false);
        return v;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        std::shuffle(v.begin(), v.end(), rng_);
    }

private:
    std::mt19937_64 rng_;
};

} // namespace plectic::testing
