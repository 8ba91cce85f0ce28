#pragma once

// Dense exact matrices. Vectors are rows throughout the library and linear
// maps act on the right: an F^n -> F^m map is an n x m matrix M, v |-> v*M.

#include <algorithm>
#include <optional>
#include <vector>

#include "grex/field.hpp"

namespace grex {

template <class K>
class Matrix {
public:
    using Ctx = typename K::Ctx;

    Matrix() : rows_(0), cols_(0), ctx_{} {}
    Matrix(std::size_t rows, std::size_t cols, Ctx ctx)
        : rows_(rows), cols_(cols), ctx_(ctx), data_(rows * cols, K::zero(ctx)) {}

    static Matrix identity(std::size_t n, Ctx ctx) {
        Matrix m(n, n, ctx);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = K::one(ctx);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Ctx ctx() const { return ctx_; }

    K& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const K& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const K& x) { return x.is_zero(); });
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    /// row-major entry order; ties broken by shape
    bool operator<(const Matrix& o) const {
        if (rows_ != o.rows_) return rows_ < o.rows_;
        if (cols_ != o.cols_) return cols_ < o.cols_;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (data_[i] != o.data_[i]) return data_[i] < o.data_[i];
        }
        return false;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, ctx_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Matrix out(rows_, o.cols_, ctx_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t i = 0; i < cols_; ++i) {
                const K& a = at(r, i);
                if (a.is_zero()) continue;
                for (std::size_t c = 0; c < o.cols_; ++c) {
                    out.at(r, c) += a * o.at(i, c);
                }
            }
        }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shape mismatch");
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
        return out;
    }
    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix diff shape mismatch");
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
        return out;
    }
    Matrix scaled(const K& s) const {
        Matrix out = *this;
        for (auto& x : out.data_) x *= s;
        return out;
    }

    std::vector<K> row(std::size_t r) const {
        return std::vector<K>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    }
    void set_row(std::size_t r, const std::vector<K>& v) {
        std::copy(v.begin(), v.end(), data_.begin() + r * cols_);
    }

    Matrix rows_slice(std::size_t first, std::size_t count) const {
        Matrix out(count, cols_, ctx_);
        for (std::size_t r = 0; r < count; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(first + r, c);
        return out;
    }
    Matrix cols_slice(std::size_t first, std::size_t count) const {
        Matrix out(rows_, count, ctx_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < count; ++c) out.at(r, c) = at(r, first + c);
        return out;
    }
    Matrix select_cols(const std::vector<std::size_t>& cols) const {
        Matrix out(rows_, cols.size(), ctx_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols.size(); ++c) out.at(r, c) = at(r, cols[c]);
        return out;
    }

    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.cols_) throw DimensionMismatch("vstack width mismatch");
        Matrix out(a.rows_ + b.rows_, a.cols_, a.ctx_);
        std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
        std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + a.data_.size());
        return out;
    }
    static Matrix hstack(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) throw DimensionMismatch("hstack height mismatch");
        Matrix out(a.rows_, a.cols_ + b.cols_, a.ctx_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t c = 0; c < a.cols_; ++c) out.at(r, c) = a.at(r, c);
            for (std::size_t c = 0; c < b.cols_; ++c) out.at(r, a.cols_ + c) = b.at(r, c);
        }
        return out;
    }

private:
    std::size_t rows_, cols_;
    Ctx ctx_;
    std::vector<K> data_;
};

/// In-place reduced row echelon form; returns the pivot columns.
template <class K>
std::vector<std::size_t> rref_in_place(Matrix<K>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t sel = r;
        while (sel < m.rows() && m.at(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
        }
        K inv = m.at(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            K f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// The unique reduced row echelon form (zero rows retained, at the bottom).
template <class K>
Matrix<K> rref(Matrix<K> m) {
    rref_in_place(m);
    return m;
}

template <class K>
std::size_t rank(Matrix<K> m) {
    return rref_in_place(m).size();
}

/// Rows spanning {v : v*M = 0}, canonicalized.
template <class K>
Matrix<K> left_kernel(const Matrix<K>& m) {
    Matrix<K> t = m.transpose();
    auto pivots = rref_in_place(t);
    // free columns of t (= free "rows" of m) parameterize the kernel
    std::vector<bool> is_pivot(t.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::size_t nfree = t.cols() - pivots.size();
    Matrix<K> ker(nfree, t.cols(), m.ctx());
    std::size_t kr = 0;
    for (std::size_t j = 0; j < t.cols(); ++j) {
        if (is_pivot[j]) continue;
        ker.at(kr, j) = K::one(m.ctx());
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            ker.at(kr, pivots[i]) = -t.at(i, j);
        }
        ++kr;
    }
    rref_in_place(ker);
    return ker;
}

/// Least-pivot particular solution X of A*X = B (free variables zero), if any.
template <class K>
std::optional<Matrix<K>> solve_columns(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("solve_columns shape mismatch");
    Matrix<K> aug = Matrix<K>::hstack(a, b);
    auto pivots = rref_in_place(aug);
    for (auto c : pivots) {
        if (c >= a.cols()) return std::nullopt;  // inconsistent
    }
    Matrix<K> x(a.cols(), b.cols(), a.ctx());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) x.at(pivots[i], j) = aug.at(i, a.cols() + j);
    }
    return x;
}

/// Inverse of a square matrix, if it exists.
template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
    auto x = solve_columns(m, Matrix<K>::identity(m.rows(), m.ctx()));
    if (x && rank(m) == m.rows()) return x;
    return std::nullopt;
}

template <class K>
K determinant(Matrix<K> m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    K det = K::one(m.ctx());
    std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m.at(sel, c).is_zero()) ++sel;
        if (sel == n) return K::zero(m.ctx());
        if (sel != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(c, j));
            det = -det;
        }
        det *= m.at(c, c);
        K inv = m.at(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m.at(i, c).is_zero()) continue;
            K f = m.at(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
        }
    }
    return det;
}

}  // namespace grex
