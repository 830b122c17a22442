#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "plectic/scalar.hpp"

namespace plectic {

/// Syntax or semantic error in a coefficient expression. `position()` is the
/// zero-based byte offset into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Parses a coefficient expression over the ordered variable names `vars`.
///
///     expr   := term (('+'|'-') term)*
///     term   := factor (('*'|'/') factor)*
///     factor := ('+'|'-') factor | base ('^' nat)?
///     base   := number | ident | '(' expr ')'
///
/// Numbers are integers or decimals, both read exactly. Whitespace is ignored.
ScalarExpr parse_expr(std::string_view src, std::span<const std::string> vars);

} // namespace plectic
