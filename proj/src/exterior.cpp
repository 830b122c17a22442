#include "plectic/exterior.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace plectic {

std::optional<std::size_t> Chart::index_of(std::string_view coord) const {
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == coord) return i;
    }
    return std::nullopt;
}

std::size_t Chart::require_index(std::string_view coord) const {
    if (auto i = index_of(coord)) return *i;
    throw std::invalid_argument("unknown coordinate '" + std::string(coord) + "' on chart " + name);
}

ChartPtr make_chart(std::string name, std::vector<std::string> coords) {
    std::set<std::string> seen;
    for (const auto& c : coords) {
        if (!seen.insert(c).second) throw std::invalid_argument("duplicate coordinate name '" + c + "'");
    }
    return std::make_shared<const Chart>(Chart{std::move(name), std::move(coords)});
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) { return a == b || (a && b && a->coords == b->coords); }

namespace {

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
    if (!same_chart(a, b)) throw ChartMismatch("operands live on different charts");
}

void require_arity(const ChartPtr& chart, const ScalarExpr& e) {
    if (e.arity() != chart->dim()) throw std::invalid_argument("coefficient arity does not match chart dimension");
}

// Sign of merging two sorted disjoint index lists.
std::optional<int> merge_sign(const MultiIndex& a, const MultiIndex& b, MultiIndex& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    std::size_t inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return std::nullopt;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining a's.
            inversions += a.size() - i;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return inversions % 2 == 0 ? 1 : -1;
}

Rational small_det(std::vector<Rational> m, std::size_t n) {
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = n;
        for (std::size_t r = col; r < n; ++r) {
            if (sgn(m[r * n + col]) != 0) {
                p = r;
                break;
            }
        }
        if (p == n) return 0;
        if (p != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m[p * n + c], m[col * n + c]);
            det = -det;
        }
        det *= m[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(m[r * n + col]) == 0) continue;
            Rational f = m[r * n + col] / m[col * n + col];
            for (std::size_t c = col; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
        }
    }
    return det;
}

} // namespace

std::vector<MultiIndex> combinations(std::size_t n, std::size_t k) {
    std::vector<MultiIndex> out;
    if (k > n) return out;
    MultiIndex idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        out.push_back(idx);
        if (k == 0) return out;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return out;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::optional<int> sort_with_sign(MultiIndex& indices) {
    int sign = 1;
    // Insertion sort; degrees are tiny.
    for (std::size_t i = 1; i < indices.size(); ++i) {
        for (std::size_t j = i; j > 0 && indices[j - 1] > indices[j]; --j) {
            std::swap(indices[j - 1], indices[j]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < indices.size(); ++i) {
        if (indices[i] == indices[i - 1]) return std::nullopt;
    }
    return sign;
}

Form::Form(ChartPtr chart, std::size_t degree) : chart_(std::move(chart)), degree_(degree) {
    if (!chart_) throw std::invalid_argument("form needs a chart");
}

Form Form::scalar(ChartPtr chart, ScalarExpr value) {
    Form f(std::move(chart), 0);
    f.add_term({}, value);
    return f;
}

Form Form::differential(ChartPtr chart, std::size_t coord) {
    std::size_t dim = chart->dim();
    if (coord >= dim) throw std::out_of_range("coordinate index out of range");
    Form f(std::move(chart), 1);
    f.add_term({coord}, ScalarExpr::constant(dim, Rational(1)));
    return f;
}

void Form::add_term(MultiIndex indices, const ScalarExpr& coeff) {
    if (indices.size() != degree_) throw std::invalid_argument("multi-index length does not match form degree");
    require_arity(chart_, coeff);
    for (auto i : indices) {
        if (i >= chart_->dim()) throw std::out_of_range("multi-index position outside chart");
    }
    if (coeff.is_zero()) return;
    auto sign = sort_with_sign(indices);
    if (!sign) return;
    auto it = terms_.find(indices);
    if (it == terms_.end()) {
        terms_.emplace(std::move(indices), *sign > 0 ? coeff : -coeff);
        return;
    }
    if (*sign > 0) {
        it->second += coeff;
    } else {
        it->second -= coeff;
    }
    if (it->second.is_zero()) terms_.erase(it);
}

ScalarExpr Form::coefficient(const MultiIndex& sorted) const {
    auto it = terms_.find(sorted);
    return it == terms_.end() ? ScalarExpr(chart_->dim()) : it->second;
}

ScalarExpr Form::value() const {
    if (degree_ != 0) throw std::logic_error("value() is only defined for 0-forms");
    return coefficient({});
}

void Form::require_compatible(const Form& o) const {
    require_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_) throw std::invalid_argument("cannot add forms of different degree");
}

Form Form::operator-() const {
    Form r = *this;
    for (auto& [i, c] : r.terms_) c = -c;
    return r;
}

Form& Form::operator+=(const Form& o) {
    require_compatible(o);
    for (const auto& [i, c] : o.terms_) add_term(i, c);
    return *this;
}

Form& Form::operator-=(const Form& o) {
    require_compatible(o);
    for (const auto& [i, c] : o.terms_) add_term(i, -c);
    return *this;
}

Form& Form::operator*=(const ScalarExpr& f) {
    require_arity(chart_, f);
    if (f.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= f;
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    return *this;
}

bool operator==(const Form& a, const Form& b) {
    if (!same_chart(a.chart_, b.chart_) || a.degree_ != b.degree_) return false;
    return (a - b).is_zero();
}

std::string Form::to_string() const { return to_string(chart_->coords); }

std::string Form::to_string(std::span<const std::string> coefficient_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string coeff = c.to_string(coefficient_names);
        bool one = c.is_constant() && c.constant_value() == 1;
        if (idx.empty()) {
            os << coeff;
            continue;
        }
        if (!one) os << '(' << coeff << ")*";
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (k) os << '^';
            os << "d(" << chart_->coords[idx[k]] << ')';
        }
    }
    return os.str();
}

VectorField VectorField::zero(ChartPtr chart) {
    std::size_t dim = chart->dim();
    return VectorField{std::move(chart), std::vector<ScalarExpr>(dim, ScalarExpr(dim))};
}

VectorField VectorField::coordinate(ChartPtr chart, std::size_t coord) {
    VectorField v = zero(std::move(chart));
    v.components.at(coord) = ScalarExpr::constant(v.chart->dim(), Rational(1));
    return v;
}

RationalVector VectorField::evaluate(std::span<const Rational> point) const {
    RationalVector out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back(c.evaluate(point));
    return out;
}

std::string VectorField::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        const auto& c = components[i];
        if (!(c.is_constant() && c.constant_value() == 1)) os << '(' << c.to_string(chart->coords) << ")*";
        os << "D(" << chart->coords[i] << ')';
    }
    return first ? "0" : os.str();
}

CoordinateMap CoordinateMap::identity(ChartPtr chart) {
    CoordinateMap m{chart, chart, {}};
    for (std::size_t i = 0; i < chart->dim(); ++i) m.components.push_back(ScalarExpr::variable(chart->dim(), i));
    return m;
}

void CoordinateMap::validate() const {
    if (!source || !target) throw std::invalid_argument("coordinate map needs source and target charts");
    if (components.size() != target->dim()) throw std::invalid_argument("coordinate map has wrong component count");
    for (const auto& c : components) require_arity(source, c);
}

CoordinateMap compose(const CoordinateMap& outer, const CoordinateMap& inner) {
    outer.validate();
    inner.validate();
    require_same_chart(inner.target, outer.source);
    CoordinateMap out{inner.source, outer.target, {}};
    for (const auto& c : outer.components) out.components.push_back(c.compose(inner.components));
    return out;
}

Form wedge(const Form& a, const Form& b) {
    require_same_chart(a.chart(), b.chart());
    Form out(a.chart(), a.degree() + b.degree());
    MultiIndex merged;
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            auto sign = merge_sign(ia, ib, merged);
            if (!sign) continue;
            ScalarExpr c = ca * cb;
            out.add_term(merged, *sign > 0 ? c : -c);
        }
    }
    return out;
}

Form interior(const VectorField& x, const Form& alpha) {
    require_same_chart(x.chart, alpha.chart());
    if (alpha.degree() == 0) throw std::invalid_argument("cannot contract a 0-form");
    if (x.components.size() != alpha.chart()->dim()) throw std::invalid_argument("vector field has wrong dimension");
    Form out(alpha.chart(), alpha.degree() - 1);
    for (const auto& [idx, c] : alpha.terms()) {
        for (std::size_t p = 0; p < idx.size(); ++p) {
            const ScalarExpr& xp = x.components[idx[p]];
            if (xp.is_zero()) continue;
            MultiIndex rest;
            rest.reserve(idx.size() - 1);
            for (std::size_t q = 0; q < idx.size(); ++q) {
                if (q != p) rest.push_back(idx[q]);
            }
            ScalarExpr term = c * xp;
            out.add_term(std::move(rest), p % 2 == 0 ? term : -term);
        }
    }
    return out;
}

Form interior_multi(std::span<const VectorField> xs, const Form& alpha) {
    if (xs.size() > alpha.degree()) throw std::invalid_argument("more vector fields than the form degree");
    Form out = alpha;
    for (const auto& x : xs) out = interior(x, out);
    return out;
}

Form d_scalar(const ChartPtr& chart, const ScalarExpr& f) {
    require_arity(chart, f);
    Form out(chart, 1);
    for (std::size_t j = 0; j < chart->dim(); ++j) out.add_term({j}, f.derivative(j));
    return out;
}

Form d(const Form& alpha) {
    Form out(alpha.chart(), alpha.degree() + 1);
    const std::size_t dim = alpha.chart()->dim();
    for (const auto& [idx, c] : alpha.terms()) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (std::binary_search(idx.begin(), idx.end(), j)) continue;
            ScalarExpr dc = c.derivative(j);
            if (dc.is_zero()) continue;
            MultiIndex full;
            full.reserve(idx.size() + 1);
            full.push_back(j);
            full.insert(full.end(), idx.begin(), idx.end());
            out.add_term(std::move(full), dc);
        }
    }
    return out;
}

Form pullback_with_jacobian(const ChartPtr& source, std::span<const ScalarExpr> values,
                            const std::vector<std::vector<ScalarExpr>>& jacobian, const Form& alpha) {
    const std::size_t tdim = alpha.chart()->dim();
    if (values.size() != tdim || jacobian.size() != tdim) {
        throw std::invalid_argument("pullback data does not match target dimension");
    }
    // Pulled-back coordinate differentials, built lazily.
    std::vector<std::optional<Form>> dphi(tdim);
    auto differential = [&](std::size_t i) -> const Form& {
        if (!dphi[i]) {
            if (jacobian[i].size() != source->dim()) throw std::invalid_argument("jacobian row has wrong length");
            Form f(source, 1);
            for (std::size_t j = 0; j < source->dim(); ++j) f.add_term({j}, jacobian[i][j]);
            dphi[i] = std::move(f);
        }
        return *dphi[i];
    };
    Form out(source, alpha.degree());
    for (const auto& [idx, c] : alpha.terms()) {
        ScalarExpr coeff = c.compose(values);
        if (coeff.is_zero()) continue;
        Form piece = Form::scalar(source, coeff);
        for (auto i : idx) {
            piece = wedge(piece, differential(i));
            if (piece.is_zero()) break;
        }
        // A piece that died early still has an intermediate degree.
        if (!piece.is_zero()) out += piece;
    }
    return out;
}

Form pullback(const CoordinateMap& phi, const Form& alpha) {
    phi.validate();
    require_same_chart(phi.target, alpha.chart());
    std::vector<std::vector<ScalarExpr>> jac(phi.target->dim());
    for (std::size_t i = 0; i < phi.target->dim(); ++i) {
        for (std::size_t j = 0; j < phi.source->dim(); ++j) jac[i].push_back(phi.components[i].derivative(j));
    }
    return pullback_with_jacobian(phi.source, phi.components, jac, alpha);
}

PointForm PointForm::interior(const RationalVector& v) const {
    if (degree == 0) throw std::invalid_argument("cannot contract a 0-form");
    if (v.size() != dim) throw std::invalid_argument("vector has wrong dimension");
    PointForm out{dim, degree - 1, {}};
    for (const auto& [idx, c] : terms) {
        for (std::size_t p = 0; p < idx.size(); ++p) {
            if (sgn(v[idx[p]]) == 0) continue;
            MultiIndex rest;
            for (std::size_t q = 0; q < idx.size(); ++q) {
                if (q != p) rest.push_back(idx[q]);
            }
            Rational t = c * v[idx[p]];
            if (p % 2) t = -t;
            auto& slot = out.terms[rest];
            slot += t;
            if (sgn(slot) == 0) out.terms.erase(rest);
        }
    }
    return out;
}

Rational PointForm::apply(std::span<const RationalVector> vectors) const {
    if (vectors.size() != degree) throw std::invalid_argument("number of vectors does not match form degree");
    for (const auto& v : vectors) {
        if (v.size() != dim) throw std::invalid_argument("vector has wrong dimension");
    }
    Rational sum = 0;
    const std::size_t k = degree;
    for (const auto& [idx, c] : terms) {
        if (k == 0) {
            sum += c;
            continue;
        }
        std::vector<Rational> m(k * k);
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) m[a * k + b] = vectors[b][idx[a]];
        }
        sum += c * small_det(std::move(m), k);
    }
    return sum;
}

RationalMatrix PointForm::contraction_matrix() const {
    if (degree == 0) throw std::invalid_argument("cannot contract a 0-form");
    auto rows = combinations(dim, degree - 1);
    std::map<MultiIndex, std::size_t> row_of;
    for (std::size_t r = 0; r < rows.size(); ++r) row_of.emplace(rows[r], r);
    RationalMatrix m(rows.size(), dim);
    for (const auto& [idx, c] : terms) {
        for (std::size_t p = 0; p < idx.size(); ++p) {
            MultiIndex rest;
            for (std::size_t q = 0; q < idx.size(); ++q) {
                if (q != p) rest.push_back(idx[q]);
            }
            Rational t = p % 2 ? Rational(-c) : c;
            m(row_of.at(rest), idx[p]) += t;
        }
    }
    return m;
}

PointForm evaluate_at(const Form& alpha, std::span<const Rational> point) {
    if (point.size() != alpha.chart()->dim()) throw std::invalid_argument("point has wrong dimension");
    PointForm out{alpha.chart()->dim(), alpha.degree(), {}};
    for (const auto& [idx, c] : alpha.terms()) {
        Rational v = c.evaluate(point);
        if (sgn(v) != 0) out.terms.emplace(idx, v);
    }
    return out;
}

bool has_pole_at(const Form& alpha, std::span<const Rational> point) {
    for (const auto& [idx, c] : alpha.terms()) {
        if (c.has_pole_at(point)) return true;
    }
    return false;
}

Rational eval_form(const Form& alpha, std::span<const Rational> point, std::span<const RationalVector> vectors) {
    if (vectors.size() != alpha.degree()) throw std::invalid_argument("number of vectors does not match form degree");
    return evaluate_at(alpha, point).apply(vectors);
}

} // namespace plectic
