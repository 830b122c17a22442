#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plectic/exterior.hpp"

namespace plectic {

class FieldTheoryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Total chart split into base coordinates (in volume-form order) and fiber
/// coordinates (in chart order). Fibers listed in `auxiliary` are the extra
/// momenta of a thickening.
struct FiberedChart {
    ChartPtr total;
    ChartPtr base_chart;
    std::vector<std::size_t> base;
    std::vector<std::size_t> fiber;
    std::vector<bool> auxiliary; // per fiber entry

    std::size_t base_dim() const { return base.size(); }
    std::size_t fiber_dim() const { return fiber.size(); }
    const std::string& fiber_name(std::size_t f) const { return total->coords[fiber[f]]; }
};

FiberedChart make_fibered_chart(ChartPtr total, const std::vector<std::string>& base,
                                const std::vector<std::string>& auxiliary = {});

/// One expression in base coordinates per fiber coordinate.
struct Section {
    std::vector<ScalarExpr> components;
};

/// Validates arity and pole-freeness; only sections with constant
/// denominators are accepted, since those are certainly pole-free.
void validate_section(const FiberedChart& f, const Section& chi);

/// The graph map base -> total of a section.
CoordinateMap graph_map(const FiberedChart& f, const Section& chi);

struct DirectionResidual {
    std::string direction;
    bool auxiliary = false;
    /// Coefficient of the base volume form, a function of the base coordinates.
    ScalarExpr coefficient;
};

struct EOMResidual {
    std::vector<DirectionResidual> directions;

    bool is_zero() const;
    /// Zero along every non-auxiliary direction.
    bool physical_zero() const;
};

/// chi^*(i_V omega) for every fiber coordinate field V.
EOMResidual eom_residual(const Form& omega, const FiberedChart& f, const Section& chi);

/// Ring of a symbolic section: base coordinates, fiber coordinates, then one
/// jet variable "<fiber>_d<base>" per pair, fiber-major.
struct JetChart {
    ChartPtr chart;
    std::size_t base_dim = 0;
    std::size_t fiber_dim = 0;

    std::size_t fiber_index(std::size_t f) const { return base_dim + f; }
    std::size_t jet_index(std::size_t f, std::size_t b) const { return base_dim + fiber_dim + f * base_dim + b; }
    bool is_jet(std::size_t var) const { return var >= base_dim + fiber_dim; }
};

JetChart make_jet_chart(const FiberedChart& f);

enum class EquationKind {
    Physical,    // linear in jets, monic in its leading jet
    Derived,     // nonlinear, vanishes once the physical equations hold
    Obstruction, // nonzero constant
    Constraint,  // anything else (jet-free or unresolved nonlinear)
};

std::string to_string(EquationKind kind);

struct Equation {
    std::string direction;
    EquationKind kind = EquationKind::Physical;
    ScalarExpr lhs;
    std::optional<std::size_t> leading_jet;
};

struct EOMSystem {
    JetChart jets;
    /// Raw residual per direction with every field kept symbolic.
    std::vector<DirectionResidual> residuals;
    /// Classified residuals with auxiliary fields frozen at zero; physical
    /// equations are deduplicated.
    std::vector<Equation> equations;

    std::vector<ScalarExpr> physical() const;
    std::vector<const Equation*> of_kind(EquationKind kind) const;
    std::string format(const ScalarExpr& e) const;
};

/// Residuals of a formal section whose first partials are jet variables.
EOMSystem eom_symbolic_system(const Form& omega, const FiberedChart& f);

/// Scales a linear jet expression so its first jet (in jet-chart order) has
/// coefficient 1. Returns nullopt if the expression is not linear in jets or
/// contains no jet.
std::optional<std::pair<ScalarExpr, std::size_t>> monic_in_leading_jet(const ScalarExpr& e, const JetChart& jets);

/// Same set of expressions up to sign (ScalarExpr equality).
bool same_system_up_to_sign(const std::vector<ScalarExpr>& a, const std::vector<ScalarExpr>& b);

} // namespace plectic
