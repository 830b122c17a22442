#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "plectic/poly.hpp"

namespace plectic {

/// Raised when a rational function is evaluated where its denominator vanishes.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Element of the rational-function field Q(q1, ..., qd).
///
/// Kept in a lightly normalized form: zero is 0/1, constant denominators are
/// folded into the numerator, monomial and rational content are cancelled and
/// exact polynomial quotients are taken when one side divides the other.
/// Equality is decided by cross-multiplication and never depends on how far
/// that normalization got.
class ScalarExpr {
public:
    explicit ScalarExpr(std::size_t arity = 0);
    ScalarExpr(Poly numerator);
    ScalarExpr(Poly numerator, Poly denominator);

    static ScalarExpr constant(std::size_t arity, const Rational& c);
    static ScalarExpr variable(std::size_t arity, std::size_t index);

    std::size_t arity() const { return num_.arity(); }
    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    /// Value of a constant expression; throws if the expression is not constant.
    Rational constant_value() const;

    ScalarExpr operator-() const;
    ScalarExpr& operator+=(const ScalarExpr& o);
    ScalarExpr& operator-=(const ScalarExpr& o);
    ScalarExpr& operator*=(const ScalarExpr& o);
    ScalarExpr& operator/=(const ScalarExpr& o);
    friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
    friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
    friend ScalarExpr operator*(ScalarExpr a, const ScalarExpr& b) { return a *= b; }
    friend ScalarExpr operator/(ScalarExpr a, const ScalarExpr& b) { return a /= b; }

    /// Field equality: p/q == r/s iff p*s - r*q is the zero polynomial.
    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b);

    ScalarExpr pow(unsigned n) const;
    /// Partial derivative (q p' - p q') / q^2.
    ScalarExpr derivative(std::size_t var) const;

    /// Exact value at a rational point. Throws PoleError if the denominator vanishes.
    Rational evaluate(std::span<const Rational> point) const;
    bool has_pole_at(std::span<const Rational> point) const;

    /// Substitutes values[i] for variable i; all values share one arity.
    ScalarExpr compose(std::span<const ScalarExpr> values) const;
    ScalarExpr extended(std::size_t arity) const;
    ScalarExpr remapped(std::size_t arity, std::span<const std::size_t> mapping) const;

    std::string to_string(std::span<const std::string> names) const;

private:
    void normalize();

    Poly num_;
    Poly den_;
};

} // namespace plectic
