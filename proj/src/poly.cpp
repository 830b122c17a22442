#include "plectic/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace plectic {

namespace {

void require_same_arity(const Poly& a, const Poly& b) {
    if (a.arity() != b.arity()) {
        throw std::invalid_argument("polynomial arity mismatch: " + std::to_string(a.arity()) + " vs " +
                                    std::to_string(b.arity()));
    }
}

bool divides(const Exponents& small, const Exponents& big) {
    for (std::size_t i = 0; i < small.size(); ++i) {
        if (small[i] > big[i]) return false;
    }
    return true;
}

} // namespace

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Poly Poly::constant(std::size_t arity, const Rational& c) {
    Poly p(arity);
    p.add_term(Exponents(arity, 0), c);
    return p;
}

Poly Poly::variable(std::size_t arity, std::size_t index) {
    if (index >= arity) throw std::out_of_range("variable index out of range");
    Poly p(arity);
    Exponents e(arity, 0);
    e[index] = 1;
    p.add_term(e, Rational(1));
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents(arity_, 0));
}

Rational Poly::constant_term() const {
    auto it = terms_.find(Exponents(arity_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

std::size_t Poly::total_degree() const {
    std::size_t best = 0;
    for (const auto& [e, c] : terms_) {
        std::size_t s = 0;
        for (auto x : e) s += x;
        best = std::max(best, s);
    }
    return best;
}

std::uint32_t Poly::degree_in(std::size_t var) const {
    std::uint32_t best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, e[var]);
    return best;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
    if (e.size() != arity_) throw std::invalid_argument("exponent vector has wrong length");
    if (sgn(c) == 0) return;
    // Callers may pass an uncanonicalized mpq; GMP equality assumes canonical form.
    Rational v = c;
    v.canonicalize();
    auto [it, inserted] = terms_.try_emplace(e, v);
    if (!inserted) {
        it->second += v;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    require_same_arity(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    require_same_arity(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_arity(a, b);
    Poly r(a.arity_);
    Exponents e(a.arity_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::pow(unsigned n) const {
    Poly result = constant(arity_, Rational(1));
    Poly base = *this;
    while (n > 0) {
        if (n & 1u) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

Poly Poly::derivative(std::size_t var) const {
    if (var >= arity_) throw std::out_of_range("derivative variable out of range");
    Poly r(arity_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents de = e;
        --de[var];
        r.add_term(de, c * e[var]);
    }
    return r;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
    if (point.size() != arity_) throw std::invalid_argument("evaluation point has wrong dimension");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < arity_; ++i) {
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
        }
        sum += t;
    }
    return sum;
}

Poly Poly::extended(std::size_t arity) const {
    if (arity < arity_) throw std::invalid_argument("cannot shrink polynomial arity");
    Poly r(arity);
    for (const auto& [e, c] : terms_) {
        Exponents ne = e;
        ne.resize(arity, 0);
        r.terms_.emplace(std::move(ne), c);
    }
    return r;
}

Poly Poly::remapped(std::size_t arity, std::span<const std::size_t> mapping) const {
    if (mapping.size() != arity_) throw std::invalid_argument("variable mapping has wrong length");
    Poly r(arity);
    for (const auto& [e, c] : terms_) {
        Exponents ne(arity, 0);
        for (std::size_t i = 0; i < arity_; ++i) {
            if (e[i] == 0) continue;
            if (mapping[i] >= arity) throw std::out_of_range("variable mapping out of range");
            ne[mapping[i]] += e[i];
        }
        r.add_term(ne, c);
    }
    return r;
}

const Poly::Terms::value_type& Poly::leading() const {
    if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
    return *terms_.rbegin();
}

Rational Poly::content() const {
    if (terms_.empty()) return Rational(1);
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    Rational r(num_gcd, den_lcm);
    r.canonicalize();
    if (sgn(leading().second) < 0) r = -r;
    return r;
}

Exponents Poly::monomial_content() const {
    if (terms_.empty()) return Exponents(arity_, 0);
    Exponents m = terms_.begin()->first;
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < arity_; ++i) m[i] = std::min(m[i], e[i]);
    }
    return m;
}

Poly Poly::divided_by_monomial(const Exponents& m) const {
    Poly r(arity_);
    for (const auto& [e, c] : terms_) {
        if (!divides(m, e)) throw std::invalid_argument("monomial does not divide polynomial");
        Exponents ne = e;
        for (std::size_t i = 0; i < arity_; ++i) ne[i] -= m[i];
        r.terms_.emplace(std::move(ne), c);
    }
    return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
    require_same_arity(*this, divisor);
    if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
    Poly remainder = *this;
    Poly quotient(arity_);
    const auto& [lead_e, lead_c] = divisor.leading();
    while (!remainder.is_zero()) {
        const auto& [re, rc] = remainder.leading();
        if (!divides(lead_e, re)) return std::nullopt;
        Exponents qe = re;
        for (std::size_t i = 0; i < arity_; ++i) qe[i] -= lead_e[i];
        Rational qc = rc / lead_c;
        Poly step(arity_);
        step.add_term(qe, qc);
        quotient.add_term(qe, qc);
        remainder -= divisor * step;
    }
    return quotient;
}

std::string Poly::to_string(std::span<const std::string> names) const {
    if (names.size() != arity_) throw std::invalid_argument("name list does not match polynomial arity");
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = abs(c);
        bool negative = sgn(c) < 0;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        bool any_var = std::any_of(e.begin(), e.end(), [](auto x) { return x != 0; });
        bool wrote = false;
        if (mag != 1 || !any_var) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < arity_; ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << '*';
            os << names[i];
            if (e[i] > 1) os << '^' << e[i];
            wrote = true;
        }
    }
    return os.str();
}

} // namespace plectic
