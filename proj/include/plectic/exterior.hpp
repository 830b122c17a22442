#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plectic/linalg.hpp"
#include "plectic/scalar.hpp"

namespace plectic {

/// Coordinate chart: an ordered list of unique coordinate names.
struct Chart {
    std::string name;
    std::vector<std::string> coords;

    std::size_t dim() const { return coords.size(); }
    std::optional<std::size_t> index_of(std::string_view coord) const;
    std::size_t require_index(std::string_view coord) const;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Throws std::invalid_argument on duplicate coordinate names.
ChartPtr make_chart(std::string name, std::vector<std::string> coords);

/// Charts are interchangeable when their coordinate lists agree.
bool same_chart(const ChartPtr& a, const ChartPtr& b);

class ChartMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Strictly increasing list of coordinate positions.
using MultiIndex = std::vector<std::size_t>;

/// All strictly increasing k-subsets of {0, ..., n-1} in lexicographic order.
std::vector<MultiIndex> combinations(std::size_t n, std::size_t k);

/// Sorts `indices` and returns the sign of the sorting permutation, or
/// nullopt if an index repeats.
std::optional<int> sort_with_sign(MultiIndex& indices);

/// Differential form of fixed degree stored over increasing multi-indices.
/// Zero coefficients are never stored, so `is_zero` is structural.
class Form {
public:
    using Terms = std::map<MultiIndex, ScalarExpr>;

    Form(ChartPtr chart, std::size_t degree);

    static Form scalar(ChartPtr chart, ScalarExpr value);
    static Form differential(ChartPtr chart, std::size_t coord);

    const ChartPtr& chart() const { return chart_; }
    std::size_t degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds coeff * dq^{i1} ^ ... ^ dq^{ik}; indices may be in any order.
    void add_term(MultiIndex indices, const ScalarExpr& coeff);
    ScalarExpr coefficient(const MultiIndex& sorted) const;
    /// Value of a 0-form.
    ScalarExpr value() const;

    Form operator-() const;
    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const ScalarExpr& f);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const ScalarExpr& f, Form a) { return a *= f; }

    /// Field equality of all coefficients on the same chart.
    friend bool operator==(const Form& a, const Form& b);

    std::string to_string() const;
    /// Prints basis elements with the chart's names and coefficients with
    /// `coefficient_names`; used for frame-basis forms whose coefficients are
    /// functions of another chart's coordinates.
    std::string to_string(std::span<const std::string> coefficient_names) const;

private:
    void require_compatible(const Form& o) const;

    ChartPtr chart_;
    std::size_t degree_;
    Terms terms_;
};

struct VectorField {
    ChartPtr chart;
    std::vector<ScalarExpr> components;

    static VectorField zero(ChartPtr chart);
    static VectorField coordinate(ChartPtr chart, std::size_t coord);

    RationalVector evaluate(std::span<const Rational> point) const;
    std::string to_string() const;
};

/// Rational map source -> target given by one expression (in source
/// coordinates) per target coordinate.
struct CoordinateMap {
    ChartPtr source;
    ChartPtr target;
    std::vector<ScalarExpr> components;

    static CoordinateMap identity(ChartPtr chart);
    void validate() const;
};

/// outer o inner.
CoordinateMap compose(const CoordinateMap& outer, const CoordinateMap& inner);

Form wedge(const Form& a, const Form& b);
Form interior(const VectorField& x, const Form& alpha);

/// Contraction by X1 ^ ... ^ Xl, defined as i_{Xl} o ... o i_{X1}; the result
/// is alpha(X1, ..., Xl, ...).
Form interior_multi(std::span<const VectorField> xs, const Form& alpha);

Form d(const Form& alpha);

/// Partial derivative of a 0-form coefficient, exposed for callers that work
/// with raw coefficients.
Form d_scalar(const ChartPtr& chart, const ScalarExpr& f);

Form pullback(const CoordinateMap& phi, const Form& alpha);

/// Pullback with an explicitly supplied Jacobian: `values[i]` is target
/// coordinate i as a function on `source`, `jacobian[i][j]` is its derivative
/// along source coordinate j. `pullback` is the special case where the
/// Jacobian is obtained by differentiation.
Form pullback_with_jacobian(const ChartPtr& source, std::span<const ScalarExpr> values,
                            const std::vector<std::vector<ScalarExpr>>& jacobian, const Form& alpha);

/// Coefficients of a form evaluated at a point.
struct PointForm {
    std::size_t dim = 0;
    std::size_t degree = 0;
    std::map<MultiIndex, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    PointForm interior(const RationalVector& v) const;
    /// alpha(v1, ..., vk).
    Rational apply(std::span<const RationalVector> vectors) const;
    /// Matrix of X -> i_X alpha: one row per (degree-1)-multi-index in
    /// lexicographic order, one column per coordinate.
    RationalMatrix contraction_matrix() const;
};

/// Throws PoleError if a coefficient has a pole at `point`.
PointForm evaluate_at(const Form& alpha, std::span<const Rational> point);

/// True if some coefficient of alpha has a pole at `point`.
bool has_pole_at(const Form& alpha, std::span<const Rational> point);

/// alpha_point(v1, ..., vk), exact and alternating.
Rational eval_form(const Form& alpha, std::span<const Rational> point, std::span<const RationalVector> vectors);

} // namespace plectic
