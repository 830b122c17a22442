#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace plectic {

using Rational = mpq_class;
using Integer = mpz_class;

/// Per-variable exponents of a monomial. Compared lexicographically, so the
/// first variable dominates.
using Exponents = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// The polynomial knows only how many variables it ranges over; names live
/// in the owning chart and are passed to the printer/parser. Stored terms
/// never carry a zero coefficient.
class Poly {
public:
    using Terms = std::map<Exponents, Rational>;

    explicit Poly(std::size_t arity = 0) : arity_(arity) {}

    static Poly constant(std::size_t arity, const Rational& c);
    static Poly variable(std::size_t arity, std::size_t index);

    std::size_t arity() const { return arity_; }
    const Terms& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero if absent).
    Rational constant_term() const;
    std::size_t total_degree() const;
    std::uint32_t degree_in(std::size_t var) const;

    /// Adds c * x^e, pruning the term if it cancels.
    void add_term(const Exponents& e, const Rational& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b) = default;

    Poly pow(unsigned n) const;
    Poly derivative(std::size_t var) const;
    Rational evaluate(std::span<const Rational> point) const;

    /// Same polynomial over `arity` variables; new variables are appended.
    Poly extended(std::size_t arity) const;
    /// Renames variable i to mapping[i] in a polynomial over `arity` variables.
    Poly remapped(std::size_t arity, std::span<const std::size_t> mapping) const;

    /// Leading term in lexicographic order (first variable dominates).
    const Terms::value_type& leading() const;

    /// Positive rational c such that p / c has coprime integer coefficients
    /// and a positive leading coefficient. Zero polynomial gives 1.
    Rational content() const;
    /// Componentwise minimum exponent over all terms.
    Exponents monomial_content() const;
    Poly divided_by_monomial(const Exponents& e) const;

    /// Quotient if `divisor` divides this polynomial exactly.
    std::optional<Poly> divide_exact(const Poly& divisor) const;

    std::string to_string(std::span<const std::string> names) const;

private:
    std::size_t arity_;
    Terms terms_;
};

std::string rational_to_string(const Rational& q);

} // namespace plectic
