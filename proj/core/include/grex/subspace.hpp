#pragma once

// Canonical subspaces of F^n: the basis is the reduced row echelon form with
// zero rows dropped, so equality of subspaces is equality of representations.

#include <optional>
#include <vector>

#include "grex/matrix.hpp"

namespace grex {

template <class K>
class Subspace {
public:
    using Ctx = typename K::Ctx;

    Subspace() : ambient_(0) {}

    /// zero subspace of F^n
    static Subspace zero(std::size_t ambient, Ctx ctx) {
        Subspace s;
        s.ambient_ = ambient;
        s.basis_ = Matrix<K>(0, ambient, ctx);
        return s;
    }
    static Subspace full(std::size_t ambient, Ctx ctx) {
        return from_rows(Matrix<K>::identity(ambient, ctx));
    }
    /// row space of an arbitrary generating matrix
    static Subspace from_rows(Matrix<K> gens) {
        auto pivots = rref_in_place(gens);
        Subspace s;
        s.ambient_ = gens.cols();
        s.basis_ = gens.rows_slice(0, pivots.size());
        s.pivots_ = std::move(pivots);
        return s;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix<K>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    Ctx ctx() const { return basis_.ctx(); }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const {
        if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
        if (dim() != o.dim()) return dim() < o.dim();
        return basis_ < o.basis_;
    }

    bool contains_vector(const std::vector<K>& v) const {
        if (v.size() != ambient_) throw DimensionMismatch("vector/ambient mismatch");
        std::vector<K> w = v;
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            const K& c = w[pivots_[i]];
            if (c.is_zero()) continue;
            K f = c;
            for (std::size_t j = 0; j < ambient_; ++j) w[j] -= f * basis_.at(i, j);
        }
        for (const auto& x : w)
            if (!x.is_zero()) return false;
        return true;
    }

private:
    std::size_t ambient_;
    Matrix<K> basis_;
    std::vector<std::size_t> pivots_;
};

template <class K>
void check_same_ambient(const Subspace<K>& a, const Subspace<K>& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("subspace ambient dimensions differ");
}

template <class K>
Subspace<K> span(const Matrix<K>& vectors) {
    return Subspace<K>::from_rows(vectors);
}

template <class K>
Subspace<K> sum(const Subspace<K>& a, const Subspace<K>& b) {
    check_same_ambient(a, b);
    return Subspace<K>::from_rows(Matrix<K>::vstack(a.basis(), b.basis()));
}

/// a contains b
template <class K>
bool contains(const Subspace<K>& a, const Subspace<K>& b) {
    check_same_ambient(a, b);
    if (b.dim() > a.dim()) return false;
    for (std::size_t r = 0; r < b.dim(); ++r) {
        if (!a.contains_vector(b.basis().row(r))) return false;
    }
    return true;
}

/// Zassenhaus: row reduce [A|A; B|0], rows with zero left half carry the
/// intersection on the right.
template <class K>
Subspace<K> intersect(const Subspace<K>& a, const Subspace<K>& b) {
    check_same_ambient(a, b);
    std::size_t n = a.ambient_dim();
    Matrix<K> top = Matrix<K>::hstack(a.basis(), a.basis());
    Matrix<K> botR(b.dim(), n, a.ctx());
    Matrix<K> bot = Matrix<K>::hstack(b.basis(), botR);
    Matrix<K> block = Matrix<K>::vstack(top, bot);
    rref_in_place(block);
    Matrix<K> inter(0, n, a.ctx());
    for (std::size_t r = 0; r < block.rows(); ++r) {
        bool left_zero = true;
        for (std::size_t c = 0; c < n && left_zero; ++c) left_zero = block.at(r, c).is_zero();
        if (!left_zero) continue;
        Matrix<K> rowm(1, n, a.ctx());
        for (std::size_t c = 0; c < n; ++c) rowm.at(0, c) = block.at(r, n + c);
        if (!rowm.is_zero()) inter = Matrix<K>::vstack(inter, rowm);
    }
    return Subspace<K>::from_rows(inter);
}

/// {v : v*M = 0} for an n x m matrix M (map F^n -> F^m)
template <class K>
Subspace<K> kernel(const Matrix<K>& m) {
    return Subspace<K>::from_rows(left_kernel(m));
}

/// Row functionals vanishing on s, as a subspace of the (coordinate) dual.
template <class K>
Subspace<K> annihilator(const Subspace<K>& s) {
    // f with B_s * f^T = 0, i.e. f in the left kernel of B_s^T
    return Subspace<K>::from_rows(left_kernel(s.basis().transpose()));
}

/// {v : v*M in s} for M : F^n -> F^m and s subspace of F^m
template <class K>
Subspace<K> preimage(const Matrix<K>& m, const Subspace<K>& s) {
    if (m.cols() != s.ambient_dim()) throw DimensionMismatch("preimage target mismatch");
    Subspace<K> ann = annihilator(s);
    if (ann.dim() == 0) return Subspace<K>::full(m.rows(), m.ctx());
    return kernel(m * ann.basis().transpose());
}

template <class K>
Subspace<K> image(const Matrix<K>& m, const Subspace<K>& s) {
    if (m.rows() != s.ambient_dim()) throw DimensionMismatch("image source mismatch");
    return Subspace<K>::from_rows(s.basis() * m);
}

/// inner <= outer, same ambient
template <class K>
struct FlagPair {
    Subspace<K> inner;
    Subspace<K> outer;

    FlagPair() = default;
    FlagPair(Subspace<K> in, Subspace<K> out) : inner(std::move(in)), outer(std::move(out)) {
        check_same_ambient(inner, outer);
        if (!contains(outer, inner)) throw InvalidDescriptor("flag is not nested");
    }
    bool operator==(const FlagPair&) const = default;
    bool operator<(const FlagPair& o) const {
        if (inner != o.inner) return inner < o.inner;
        return outer < o.outer;
    }
};

/// Rows of `whole`'s basis that extend `part` to a basis of `part + whole`,
/// taken greedily in order. The complement is a chosen basis, not a canonical
/// subspace; the choice is deterministic.
template <class K>
Matrix<K> greedy_complement(const Subspace<K>& part, const Subspace<K>& whole) {
    check_same_ambient(part, whole);
    Matrix<K> current = part.basis();
    Matrix<K> out(0, part.ambient_dim(), part.ctx());
    std::size_t r = rank(current);
    for (std::size_t i = 0; i < whole.dim(); ++i) {
        Matrix<K> rowm(1, part.ambient_dim(), part.ctx());
        for (std::size_t c = 0; c < part.ambient_dim(); ++c) rowm.at(0, c) = whole.basis().at(i, c);
        Matrix<K> cand = Matrix<K>::vstack(current, rowm);
        if (rank(cand) > r) {
            current = cand;
            ++r;
            out = Matrix<K>::vstack(out, rowm);
        }
    }
    return out;
}

/// num/den with den <= num; subspaces of the quotient live in F^r with
/// r = dim num - dim den, coordinates with respect to a pivot-greedy
/// complement basis recorded in `comp`.
template <class K>
class QuotientSpace {
public:
    QuotientSpace(Subspace<K> num, Subspace<K> den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (!contains(num_, den_)) throw InvalidDescriptor("quotient denominator not inside numerator");
        comp_ = greedy_complement(den_, num_);
    }

    const Subspace<K>& num() const { return num_; }
    const Subspace<K>& den() const { return den_; }
    /// chosen complement basis, rows in the big ambient
    const Matrix<K>& comp() const { return comp_; }
    std::size_t dim() const { return comp_.rows(); }
    std::size_t ambient_dim() const { return num_.ambient_dim(); }

    /// coordinates of v (in num) along comp, modulo den
    std::vector<K> project_vector(const std::vector<K>& v) const {
        Matrix<K> sys = Matrix<K>::vstack(den_.basis(), comp_).transpose();  // n x (d + r)
        Matrix<K> rhs(num_.ambient_dim(), 1, num_.ctx());
        for (std::size_t i = 0; i < v.size(); ++i) rhs.at(i, 0) = v[i];
        auto sol = solve_columns(sys, rhs);
        if (!sol) throw DimensionMismatch("vector not inside quotient numerator");
        std::vector<K> out;
        for (std::size_t i = 0; i < comp_.rows(); ++i) out.push_back(sol->at(den_.dim() + i, 0));
        return out;
    }

    /// image of s (a subspace of num) in the quotient, as a subspace of F^r
    Subspace<K> project(const Subspace<K>& s) const {
        if (!contains(num_, s)) throw DimensionMismatch("subspace not inside quotient numerator");
        Matrix<K> rows(s.dim(), dim(), num_.ctx());
        for (std::size_t i = 0; i < s.dim(); ++i) rows.set_row(i, project_vector(s.basis().row(i)));
        return Subspace<K>::from_rows(rows);
    }

    /// full preimage in the big ambient of a subspace of F^r
    Subspace<K> lift(const Subspace<K>& s) const {
        if (s.ambient_dim() != dim()) throw DimensionMismatch("quotient coordinate mismatch");
        Matrix<K> lifted = s.basis() * comp_;
        return Subspace<K>::from_rows(Matrix<K>::vstack(den_.basis(), lifted));
    }

private:
    Subspace<K> num_;
    Subspace<K> den_;
    Matrix<K> comp_;
};

}  // namespace grex
