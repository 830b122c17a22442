#include "plectic/parse.hpp"

#include <cctype>

namespace plectic {

namespace {

class Parser {
public:
    Parser(std::string_view src, std::span<const std::string> vars) : src_(src), vars_(vars) {}

    ScalarExpr parse() {
        ScalarExpr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ScalarExpr expr() {
        ScalarExpr acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    ScalarExpr term() {
        ScalarExpr acc = factor();
        for (;;) {
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                std::size_t at = pos_;
                ScalarExpr divisor = factor();
                if (divisor.is_zero()) throw ParseError("division by zero", at);
                acc /= divisor;
            } else {
                return acc;
            }
        }
    }

    ScalarExpr factor() {
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        ScalarExpr b = base();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a non-negative integer exponent");
            std::string digits(src_.substr(start, pos_ - start));
            if (digits.size() > 6) throw ParseError("exponent too large", start);
            b = b.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return b;
    }

    ScalarExpr base() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of expression");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            ScalarExpr inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    ScalarExpr number() {
        std::size_t start = pos_;
        std::string digits;
        std::size_t frac_digits = 0;
        bool seen_dot = false;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                digits.push_back(c);
                if (seen_dot) ++frac_digits;
            } else if (c == '.' && !seen_dot) {
                seen_dot = true;
            } else {
                break;
            }
            ++pos_;
        }
        if (digits.empty()) throw ParseError("malformed number", start);
        Integer n(digits, 10);
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_digits);
        Rational q(n, scale);
        q.canonicalize();
        return ScalarExpr::constant(vars_.size(), q);
    }

    ScalarExpr identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        std::string_view name = src_.substr(start, pos_ - start);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == name) return ScalarExpr::variable(vars_.size(), i);
        }
        throw ParseError("unknown variable '" + std::string(name) + "'", start);
    }

    std::string_view src_;
    std::span<const std::string> vars_;
    std::size_t pos_ = 0;
};

} // namespace

ScalarExpr parse_expr(std::string_view src, std::span<const std::string> vars) { return Parser(src, vars).parse(); }

} // namespace plectic
