#include "plectic/fieldtheory.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace plectic {

FiberedChart make_fibered_chart(ChartPtr total, const std::vector<std::string>& base,
                                const std::vector<std::string>& auxiliary) {
    FiberedChart f;
    std::set<std::size_t> in_base;
    for (const auto& name : base) {
        auto idx = total->index_of(name);
        if (!idx) throw FieldTheoryError("fibration base coordinate '" + name + "' is not a chart coordinate");
        if (!in_base.insert(*idx).second) throw FieldTheoryError("fibration base repeats '" + name + "'");
        f.base.push_back(*idx);
    }
    if (f.base.empty()) throw FieldTheoryError("fibration base is empty");
    std::set<std::size_t> aux;
    for (const auto& name : auxiliary) {
        auto idx = total->index_of(name);
        if (!idx) throw FieldTheoryError("auxiliary field '" + name + "' is not a chart coordinate");
        if (in_base.count(*idx)) throw FieldTheoryError("auxiliary field '" + name + "' is a base coordinate");
        aux.insert(*idx);
    }
    for (std::size_t i = 0; i < total->dim(); ++i) {
        if (in_base.count(i)) continue;
        f.fiber.push_back(i);
        f.auxiliary.push_back(aux.count(i) > 0);
    }
    std::vector<std::string> names;
    for (auto b : f.base) names.push_back(total->coords[b]);
    f.base_chart = make_chart(total->name + "/base", std::move(names));
    f.total = std::move(total);
    return f;
}

void validate_section(const FiberedChart& f, const Section& chi) {
    if (chi.components.size() != f.fiber_dim()) {
        throw FieldTheoryError("section has " + std::to_string(chi.components.size()) + " components but the fiber has " +
                               std::to_string(f.fiber_dim()) + " coordinates");
    }
    for (std::size_t k = 0; k < chi.components.size(); ++k) {
        const auto& c = chi.components[k];
        if (c.arity() != f.base_dim()) throw FieldTheoryError("section component has the wrong arity");
        if (!c.is_polynomial()) {
            throw PoleError("section component for '" + f.fiber_name(k) +
                            "' has a non-constant denominator and may have poles");
        }
    }
}

CoordinateMap graph_map(const FiberedChart& f, const Section& chi) {
    validate_section(f, chi);
    const std::size_t b = f.base_dim();
    std::vector<ScalarExpr> comps(f.total->dim(), ScalarExpr(b));
    for (std::size_t i = 0; i < b; ++i) comps[f.base[i]] = ScalarExpr::variable(b, i);
    for (std::size_t k = 0; k < f.fiber_dim(); ++k) comps[f.fiber[k]] = chi.components[k];
    return CoordinateMap{f.base_chart, f.total, std::move(comps)};
}

bool EOMResidual::is_zero() const {
    return std::all_of(directions.begin(), directions.end(),
                       [](const DirectionResidual& r) { return r.coefficient.is_zero(); });
}

bool EOMResidual::physical_zero() const {
    return std::all_of(directions.begin(), directions.end(),
                       [](const DirectionResidual& r) { return r.auxiliary || r.coefficient.is_zero(); });
}

namespace {

void require_top_degree(const Form& omega, const FiberedChart& f) {
    if (!same_chart(omega.chart(), f.total)) throw ChartMismatch("form does not live on the fibered chart");
    if (omega.degree() != f.base_dim() + 1) {
        throw FieldTheoryError("form degree " + std::to_string(omega.degree()) + " does not equal base dimension + 1 = " +
                               std::to_string(f.base_dim() + 1));
    }
}

MultiIndex volume_index(std::size_t b) {
    MultiIndex idx(b);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

} // namespace

EOMResidual eom_residual(const Form& omega, const FiberedChart& f, const Section& chi) {
    require_top_degree(omega, f);
    CoordinateMap g = graph_map(f, chi);
    const MultiIndex vol = volume_index(f.base_dim());
    EOMResidual out;
    for (std::size_t k = 0; k < f.fiber_dim(); ++k) {
        Form contracted = interior(VectorField::coordinate(f.total, f.fiber[k]), omega);
        Form pulled = pullback(g, contracted);
        out.directions.push_back({f.fiber_name(k), f.auxiliary[k], pulled.coefficient(vol)});
    }
    return out;
}

JetChart make_jet_chart(const FiberedChart& f) {
    JetChart j;
    j.base_dim = f.base_dim();
    j.fiber_dim = f.fiber_dim();
    std::vector<std::string> names = f.base_chart->coords;
    for (std::size_t k = 0; k < f.fiber_dim(); ++k) names.push_back(f.fiber_name(k));
    for (std::size_t k = 0; k < f.fiber_dim(); ++k) {
        for (const auto& b : f.base_chart->coords) names.push_back(f.fiber_name(k) + "_d" + b);
    }
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second) throw FieldTheoryError("jet variable '" + n + "' collides with a coordinate name");
    }
    j.chart = make_chart(f.total->name + "/jets", std::move(names));
    return j;
}

std::string to_string(EquationKind kind) {
    switch (kind) {
    case EquationKind::Physical: return "physical";
    case EquationKind::Derived: return "derived";
    case EquationKind::Obstruction: return "obstruction";
    case EquationKind::Constraint: return "constraint";
    }
    return "?";
}

std::optional<std::pair<ScalarExpr, std::size_t>> monic_in_leading_jet(const ScalarExpr& e, const JetChart& jets) {
    const std::size_t n = jets.chart->dim();
    if (e.arity() != n) throw std::invalid_argument("expression does not live on the jet chart");
    for (std::size_t v = 0; v < n; ++v) {
        if (jets.is_jet(v) && e.denominator().degree_in(v) > 0) return std::nullopt;
    }
    std::optional<std::size_t> lead;
    for (const auto& [exps, c] : e.numerator().terms()) {
        std::uint32_t jet_degree = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (!jets.is_jet(v) || exps[v] == 0) continue;
            jet_degree += exps[v];
            if (!lead || v < *lead) lead = v;
        }
        if (jet_degree > 1) return std::nullopt;
    }
    if (!lead) return std::nullopt;
    Poly coeff(n);
    for (const auto& [exps, c] : e.numerator().terms()) {
        if (exps[*lead] != 1) continue;
        auto reduced = exps;
        reduced[*lead] = 0;
        coeff.add_term(reduced, c);
    }
    return std::make_pair(ScalarExpr(e.numerator(), coeff), *lead);
}

std::vector<ScalarExpr> EOMSystem::physical() const {
    std::vector<ScalarExpr> out;
    for (const auto& eq : equations) {
        if (eq.kind == EquationKind::Physical) out.push_back(eq.lhs);
    }
    return out;
}

std::vector<const Equation*> EOMSystem::of_kind(EquationKind kind) const {
    std::vector<const Equation*> out;
    for (const auto& eq : equations) {
        if (eq.kind == kind) out.push_back(&eq);
    }
    return out;
}

std::string EOMSystem::format(const ScalarExpr& e) const { return e.to_string(jets.chart->coords) + " = 0"; }

EOMSystem eom_symbolic_system(const Form& omega, const FiberedChart& f) {
    require_top_degree(omega, f);
    EOMSystem sys;
    sys.jets = make_jet_chart(f);
    const JetChart& jc = sys.jets;
    const std::size_t n = jc.chart->dim();
    const std::size_t b = f.base_dim();

    // Graph of the formal section: fiber k has value q_k and partials q_k_d<base>.
    std::vector<ScalarExpr> values(f.total->dim(), ScalarExpr(n));
    std::vector<std::vector<ScalarExpr>> jac(f.total->dim(), std::vector<ScalarExpr>(n, ScalarExpr(n)));
    for (std::size_t i = 0; i < b; ++i) {
        values[f.base[i]] = ScalarExpr::variable(n, i);
        jac[f.base[i]][i] = ScalarExpr::constant(n, Rational(1));
    }
    for (std::size_t k = 0; k < f.fiber_dim(); ++k) {
        values[f.fiber[k]] = ScalarExpr::variable(n, jc.fiber_index(k));
        for (std::size_t i = 0; i < b; ++i) jac[f.fiber[k]][i] = ScalarExpr::variable(n, jc.jet_index(k, i));
    }
    const MultiIndex vol = volume_index(b);

    // Auxiliary fields and their partials frozen at zero.
    std::vector<ScalarExpr> freeze;
    for (std::size_t v = 0; v < n; ++v) freeze.push_back(ScalarExpr::variable(n, v));
    for (std::size_t k = 0; k < f.fiber_dim(); ++k) {
        if (!f.auxiliary[k]) continue;
        freeze[jc.fiber_index(k)] = ScalarExpr(n);
        for (std::size_t i = 0; i < b; ++i) freeze[jc.jet_index(k, i)] = ScalarExpr(n);
    }

    std::vector<Equation> nonlinear;
    for (std::size_t k = 0; k < f.fiber_dim(); ++k) {
        Form contracted = interior(VectorField::coordinate(f.total, f.fiber[k]), omega);
        Form pulled = pullback_with_jacobian(jc.chart, values, jac, contracted);
        ScalarExpr raw = pulled.coefficient(vol);
        sys.residuals.push_back({f.fiber_name(k), f.auxiliary[k], raw});

        ScalarExpr frozen = raw.compose(freeze);
        if (frozen.is_zero()) continue;
        Equation eq{f.fiber_name(k), EquationKind::Constraint, frozen, std::nullopt};
        if (frozen.is_constant()) {
            eq.kind = EquationKind::Obstruction;
        } else if (auto monic = monic_in_leading_jet(frozen, jc)) {
            eq.kind = EquationKind::Physical;
            eq.lhs = monic->first;
            eq.leading_jet = monic->second;
            bool duplicate = std::any_of(sys.equations.begin(), sys.equations.end(), [&](const Equation& o) {
                return o.kind == EquationKind::Physical && (o.lhs == eq.lhs || o.lhs == -eq.lhs);
            });
            if (duplicate) continue;
        } else {
            nonlinear.push_back(std::move(eq));
            continue;
        }
        sys.equations.push_back(std::move(eq));
    }

    // Solve each physical equation for its leading jet and test whether the
    // nonlinear residuals vanish on that solution set.
    std::vector<ScalarExpr> solve;
    for (std::size_t v = 0; v < n; ++v) solve.push_back(ScalarExpr::variable(n, v));
    std::size_t solved = 0;
    for (const auto& eq : sys.equations) {
        if (eq.kind != EquationKind::Physical) continue;
        std::size_t j = *eq.leading_jet;
        if (!(solve[j] == ScalarExpr::variable(n, j))) continue;
        solve[j] = ScalarExpr::variable(n, j) - eq.lhs;
        ++solved;
    }
    for (auto& eq : nonlinear) {
        ScalarExpr reduced = eq.lhs;
        for (std::size_t pass = 0; pass <= solved && !reduced.is_zero(); ++pass) reduced = reduced.compose(solve);
        eq.kind = reduced.is_zero() ? EquationKind::Derived : EquationKind::Constraint;
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

bool same_system_up_to_sign(const std::vector<ScalarExpr>& a, const std::vector<ScalarExpr>& b) {
    auto covered = [](const std::vector<ScalarExpr>& xs, const std::vector<ScalarExpr>& ys) {
        return std::all_of(xs.begin(), xs.end(), [&](const ScalarExpr& x) {
            return std::any_of(ys.begin(), ys.end(), [&](const ScalarExpr& y) { return x == y || x == -y; });
        });
    };
    return a.size() == b.size() && covered(a, b) && covered(b, a);
}

} // namespace plectic
