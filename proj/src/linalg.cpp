#include "plectic/linalg.hpp"

#include <utility>

namespace plectic {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<RationalVector>& columns, std::size_t dim) {
    RationalMatrix m(dim, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != dim) throw std::invalid_argument("vector has wrong ambient dimension");
        for (std::size_t r = 0; r < dim; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
}

RationalVector RationalMatrix::apply(const RationalVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length does not match matrix columns");
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational s = 0;
        for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

void RationalMatrix::append_row(const RationalVector& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw std::invalid_argument("row length does not match matrix columns");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

std::size_t rank(const RationalMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    // Scale each row to integers.
    std::vector<Integer> a(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        Integer lcm = 1;
        for (std::size_t c = 0; c < cols; ++c) {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
        }
        for (std::size_t c = 0; c < cols; ++c) {
            a[r * cols + c] = m(r, c).get_num() * (lcm / m(r, c).get_den());
        }
    }
    auto at = [&](std::size_t r, std::size_t c) -> Integer& { return a[r * cols + c]; };

    Integer prev = 1;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        std::size_t found = rows;
        for (std::size_t r = pivot_row; r < rows; ++r) {
            if (sgn(at(r, col)) != 0) {
                found = r;
                break;
            }
        }
        if (found == rows) continue;
        if (found != pivot_row) {
            for (std::size_t c = 0; c < cols; ++c) std::swap(at(found, c), at(pivot_row, c));
        }
        const Integer pivot = at(pivot_row, col);
        for (std::size_t r = pivot_row + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c) {
                Integer v = at(r, c) * pivot - at(r, col) * at(pivot_row, c);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                at(r, c) = v;
            }
            at(r, col) = 0;
        }
        prev = pivot;
        ++pivot_row;
    }
    return pivot_row;
}

RationalMatrix rref(const RationalMatrix& m, std::vector<std::size_t>* pivots) {
    RationalMatrix a = m;
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t found = a.rows();
        for (std::size_t r = row; r < a.rows(); ++r) {
            if (sgn(a(r, col)) != 0) {
                found = r;
                break;
            }
        }
        if (found == a.rows()) continue;
        if (found != row) {
            for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(found, c), a(row, c));
        }
        Rational inv = Rational(1) / a(row, col);
        for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || sgn(a(r, col)) == 0) continue;
            Rational f = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
        }
        piv.push_back(col);
        ++row;
    }
    if (pivots) *pivots = std::move(piv);
    return a;
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
    std::vector<std::size_t> pivots;
    RationalMatrix r = rref(m, &pivots);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool subspace_contained(const std::vector<RationalVector>& a, const std::vector<RationalVector>& b, std::size_t dim) {
    for (const auto& v : a) {
        if (v.size() != dim) throw std::invalid_argument("ambient dimension mismatch");
    }
    RationalMatrix base = RationalMatrix::from_columns(b, dim);
    std::size_t base_rank = rank(base);
    for (const auto& v : a) {
        auto cols = b;
        cols.push_back(v);
        if (rank(RationalMatrix::from_columns(cols, dim)) != base_rank) return false;
    }
    return true;
}

SymbolicMatrix SymbolicMatrix::identity(std::size_t n, std::size_t arity) {
    SymbolicMatrix m(n, n, arity);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarExpr::constant(arity, Rational(1));
    return m;
}

SymbolicMatrix operator*(const SymbolicMatrix& a, const SymbolicMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    std::size_t arity = a.data_.empty() ? 0 : a.data_.front().arity();
    SymbolicMatrix out(a.rows_, b.cols_, arity);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < b.cols_; ++j) {
            ScalarExpr s(arity);
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
                s += a(i, k) * b(k, j);
            }
            out(i, j) = std::move(s);
        }
    }
    return out;
}

bool operator==(const SymbolicMatrix& a, const SymbolicMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        if (!(a.data_[i] == b.data_[i])) return false;
    }
    return true;
}

RationalMatrix SymbolicMatrix::evaluate(std::span<const Rational> point) const {
    RationalMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c).evaluate(point);
    }
    return out;
}

namespace {

// Forward elimination shared by determinant and inverse. Returns false when a
// column has no symbolically nonzero pivot.
bool gauss_jordan(SymbolicMatrix& a, SymbolicMatrix* aug, ScalarExpr* det) {
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t found = n;
        for (std::size_t r = col; r < n; ++r) {
            if (!a(r, col).is_zero()) {
                found = r;
                break;
            }
        }
        if (found == n) return false;
        if (found != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(found, c), a(col, c));
            if (aug) {
                for (std::size_t c = 0; c < aug->cols(); ++c) std::swap((*aug)(found, c), (*aug)(col, c));
            }
            if (det) *det = -*det;
        }
        ScalarExpr pivot = a(col, col);
        if (det) *det *= pivot;
        for (std::size_t c = 0; c < n; ++c) {
            if (!a(col, c).is_zero()) a(col, c) /= pivot;
        }
        if (aug) {
            for (std::size_t c = 0; c < aug->cols(); ++c) {
                if (!(*aug)(col, c).is_zero()) (*aug)(col, c) /= pivot;
            }
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col).is_zero()) continue;
            ScalarExpr f = a(r, col);
            for (std::size_t c = 0; c < n; ++c) {
                if (!a(col, c).is_zero()) a(r, c) -= f * a(col, c);
            }
            if (aug) {
                for (std::size_t c = 0; c < aug->cols(); ++c) {
                    if (!(*aug)(col, c).is_zero()) (*aug)(r, c) -= f * (*aug)(col, c);
                }
            }
        }
    }
    return true;
}

std::size_t arity_of(const SymbolicMatrix& m) { return m.rows() * m.cols() == 0 ? 0 : m(0, 0).arity(); }

} // namespace

ScalarExpr determinant(const SymbolicMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    SymbolicMatrix a = m;
    ScalarExpr det = ScalarExpr::constant(arity_of(m), Rational(1));
    if (!gauss_jordan(a, nullptr, &det)) return ScalarExpr(arity_of(m));
    return det;
}

SymbolicMatrix invert(const SymbolicMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    SymbolicMatrix a = m;
    SymbolicMatrix inv = SymbolicMatrix::identity(m.rows(), arity_of(m));
    if (!gauss_jordan(a, &inv, nullptr)) throw SingularMatrixError("matrix is symbolically singular");
    return inv;
}

} // namespace plectic
