#include "plectic/scalar.hpp"

#include <algorithm>

namespace plectic {

namespace {

bool is_one(const Poly& p) { return p.is_constant() && p.constant_term() == 1; }

} // namespace

ScalarExpr::ScalarExpr(std::size_t arity) : num_(arity), den_(Poly::constant(arity, Rational(1))) {}

ScalarExpr::ScalarExpr(Poly numerator) : num_(std::move(numerator)), den_(Poly::constant(num_.arity(), Rational(1))) {}

ScalarExpr::ScalarExpr(Poly numerator, Poly denominator) : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (num_.arity() != den_.arity()) throw std::invalid_argument("numerator/denominator arity mismatch");
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
}

ScalarExpr ScalarExpr::constant(std::size_t arity, const Rational& c) { return ScalarExpr(Poly::constant(arity, c)); }

ScalarExpr ScalarExpr::variable(std::size_t arity, std::size_t index) {
    return ScalarExpr(Poly::variable(arity, index));
}

Rational ScalarExpr::constant_value() const {
    if (!is_constant()) throw std::logic_error("expression is not constant");
    return num_.constant_term() / den_.constant_term();
}

void ScalarExpr::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.arity(), Rational(1));
        return;
    }
    if (is_one(den_)) return;
    if (den_.is_constant()) {
        num_ *= Rational(1) / den_.constant_term();
        den_ = Poly::constant(num_.arity(), Rational(1));
        return;
    }
    // Cancel the common monomial factor.
    Exponents mn = num_.monomial_content();
    Exponents md = den_.monomial_content();
    Exponents common(mn.size());
    bool any = false;
    for (std::size_t i = 0; i < mn.size(); ++i) {
        common[i] = std::min(mn[i], md[i]);
        any = any || common[i] != 0;
    }
    if (any) {
        num_ = num_.divided_by_monomial(common);
        den_ = den_.divided_by_monomial(common);
    }
    // Make the denominator primitive with positive leading coefficient.
    Rational c = den_.content();
    if (c != 1) {
        Rational inv = Rational(1) / c;
        num_ *= inv;
        den_ *= inv;
    }
    if (den_.is_constant()) {
        num_ *= Rational(1) / den_.constant_term();
        den_ = Poly::constant(num_.arity(), Rational(1));
        return;
    }
    if (auto q = num_.divide_exact(den_)) {
        num_ = std::move(*q);
        den_ = Poly::constant(num_.arity(), Rational(1));
        return;
    }
    if (auto q = den_.divide_exact(num_)) {
        den_ = std::move(*q);
        num_ = Poly::constant(num_.arity(), Rational(1));
        Rational c2 = den_.content();
        if (c2 != 1) {
            Rational inv = Rational(1) / c2;
            num_ *= inv;
            den_ *= inv;
        }
    }
}

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr r = *this;
    r.num_ = -r.num_;
    return r;
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (is_one(den_) && is_one(o.den_)) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) { return *this += -o; }

ScalarExpr& ScalarExpr::operator*=(const ScalarExpr& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = ScalarExpr(arity());
    if (is_one(den_) && is_one(o.den_)) {
        num_ = num_ * o.num_;
        return *this;
    }
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

ScalarExpr& ScalarExpr::operator/=(const ScalarExpr& o) {
    if (o.is_zero()) throw std::domain_error("division by the zero element");
    if (is_zero()) return *this;
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
}

bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.arity() != b.arity()) return false;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

ScalarExpr ScalarExpr::pow(unsigned n) const {
    ScalarExpr r = *this;
    r.num_ = num_.pow(n);
    r.den_ = den_.pow(n);
    return r;
}

ScalarExpr ScalarExpr::derivative(std::size_t var) const {
    if (is_one(den_)) return ScalarExpr(num_.derivative(var));
    Poly top = den_ * num_.derivative(var) - num_ * den_.derivative(var);
    return ScalarExpr(std::move(top), den_ * den_);
}

Rational ScalarExpr::evaluate(std::span<const Rational> point) const {
    Rational d = den_.evaluate(point);
    if (sgn(d) == 0) throw PoleError("pole: denominator vanishes at evaluation point");
    return num_.evaluate(point) / d;
}

bool ScalarExpr::has_pole_at(std::span<const Rational> point) const { return sgn(den_.evaluate(point)) == 0; }

namespace {

ScalarExpr compose_poly(const Poly& p, std::span<const ScalarExpr> values, std::size_t out_arity) {
    if (values.size() != p.arity()) throw std::invalid_argument("substitution has wrong number of values");
    // Cache of powers per variable.
    std::vector<std::vector<ScalarExpr>> powers(values.size());
    auto power = [&](std::size_t var, std::uint32_t n) -> const ScalarExpr& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(ScalarExpr::constant(out_arity, Rational(1)));
        while (cache.size() <= n) cache.push_back(cache.back() * values[var]);
        return cache[n];
    };
    ScalarExpr sum(out_arity);
    for (const auto& [e, c] : p.terms()) {
        ScalarExpr term = ScalarExpr::constant(out_arity, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) term *= power(i, e[i]);
        }
        sum += term;
    }
    return sum;
}

} // namespace

ScalarExpr ScalarExpr::compose(std::span<const ScalarExpr> values) const {
    std::size_t out_arity = values.empty() ? 0 : values.front().arity();
    for (const auto& v : values) {
        if (v.arity() != out_arity) throw std::invalid_argument("substituted values have mixed arity");
    }
    ScalarExpr top = compose_poly(num_, values, out_arity);
    if (is_one(den_)) return top;
    ScalarExpr bottom = compose_poly(den_, values, out_arity);
    if (bottom.is_zero()) throw std::domain_error("substitution makes the denominator vanish");
    return top / bottom;
}

ScalarExpr ScalarExpr::extended(std::size_t arity) const {
    ScalarExpr r(arity);
    r.num_ = num_.extended(arity);
    r.den_ = den_.extended(arity);
    return r;
}

ScalarExpr ScalarExpr::remapped(std::size_t arity, std::span<const std::size_t> mapping) const {
    ScalarExpr r(arity);
    r.num_ = num_.remapped(arity, mapping);
    r.den_ = den_.remapped(arity, mapping);
    return r;
}

std::string ScalarExpr::to_string(std::span<const std::string> names) const {
    std::string top = num_.to_string(names);
    if (is_one(den_)) return top;
    return "(" + top + ")/(" + den_.to_string(names) + ")";
}

} // namespace plectic
