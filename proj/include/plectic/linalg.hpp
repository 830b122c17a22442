#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "plectic/scalar.hpp"

namespace plectic {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);
    /// Matrix whose columns are the given vectors (all of length `dim`).
    static RationalMatrix from_columns(const std::vector<RationalVector>& columns, std::size_t dim);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalMatrix transposed() const;
    RationalVector apply(const RationalVector& v) const;
    void append_row(const RationalVector& row);

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank by fraction-free (Bareiss) elimination on the integer-scaled rows.
std::size_t rank(const RationalMatrix& m);

/// Reduced row echelon form over Q; `pivots` receives the pivot column of each nonzero row.
RationalMatrix rref(const RationalMatrix& m, std::vector<std::size_t>* pivots = nullptr);

/// Basis of {v : M v = 0}. Vectors are read off the reduced echelon form, one per
/// free column, so they are independent and there are cols - rank of them.
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);

/// Whether every vector of `a` lies in span(b), by comparing rank([B]) with rank([B|v]).
/// Throws std::invalid_argument if the vectors do not share `dim`.
bool subspace_contained(const std::vector<RationalVector>& a, const std::vector<RationalVector>& b, std::size_t dim);

/// Symbolically singular matrix (determinant is the zero rational function).
class SingularMatrixError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Square or rectangular matrix of rational functions.
class SymbolicMatrix {
public:
    SymbolicMatrix() = default;
    SymbolicMatrix(std::size_t rows, std::size_t cols, std::size_t arity)
        : rows_(rows), cols_(cols), data_(rows * cols, ScalarExpr(arity)) {}

    static SymbolicMatrix identity(std::size_t n, std::size_t arity);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    ScalarExpr& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const ScalarExpr& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend SymbolicMatrix operator*(const SymbolicMatrix& a, const SymbolicMatrix& b);
    friend bool operator==(const SymbolicMatrix& a, const SymbolicMatrix& b);

    RationalMatrix evaluate(std::span<const Rational> point) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<ScalarExpr> data_;
};

ScalarExpr determinant(const SymbolicMatrix& m);

/// Gauss-Jordan inverse over the rational-function field. Pivots are the first
/// symbolically nonzero entry in each column. Throws SingularMatrixError.
SymbolicMatrix invert(const SymbolicMatrix& m);

} // namespace plectic
