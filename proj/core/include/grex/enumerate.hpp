#pragma once

// Streaming enumeration of k-dimensional subspaces of GF(p)^n in lexicographic
// order of their canonical (RREF) basis matrices, with optional isotropy
// pruning for a bilinear form. One generator per pivot-column pattern yields
// its matrices in lex order; a k-way merge produces the global order.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "grex/counts.hpp"
#include "grex/matrix.hpp"
#include "grex/subspace.hpp"

namespace grex {

namespace detail {

struct FreeCell {
    std::size_t row, col;
};

/// RREF matrices for one fixed pivot pattern, entries as small ints mod p.
class PatternGen {
public:
    // gram empty => no isotropy filter; check_diagonal distinguishes the
    // symmetric case (rows must be self-orthogonal) from the alternating one.
    PatternGen(std::size_t n, std::size_t k, Int p, std::vector<std::size_t> pivots,
               const std::vector<Int>* gram, bool check_diagonal)
        : n_(n), k_(k), p_(p), pivots_(std::move(pivots)), gram_(gram),
          check_diagonal_(check_diagonal), grid_(k * n, 0) {
        std::vector<bool> is_pivot(n_, false);
        for (auto c : pivots_) is_pivot[c] = true;
        row_cells_.resize(k_);
        for (std::size_t r = 0; r < k_; ++r) {
            grid_[r * n_ + pivots_[r]] = 1;
            for (std::size_t c = pivots_[r] + 1; c < n_; ++c) {
                if (!is_pivot[c]) row_cells_[r].push_back(c);
            }
        }
        alive_ = seek_valid(0);
    }

    bool alive() const { return alive_; }
    const std::vector<Int>& grid() const { return grid_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    void advance() {
        std::size_t r = k_;
        while (r > 0) {
            --r;
            if (increment_row(r)) {
                alive_ = seek_valid(r);
                return;
            }
            // row r wrapped to zeros; carry into the previous row
        }
        alive_ = false;
    }

private:
    bool row_ok(std::size_t r) const {
        if (!gram_) return true;
        for (std::size_t j = 0; j < r; ++j) {
            if (!pair_orthogonal(r, j)) return false;
        }
        if (check_diagonal_ && !pair_orthogonal(r, r)) return false;
        return true;
    }

    bool pair_orthogonal(std::size_t a, std::size_t b) const {
        // row_a * G * row_b^T mod p
        Int acc = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            Int va = grid_[a * n_ + i];
            if (va == 0) continue;
            Int inner = 0;
            for (std::size_t j = 0; j < n_; ++j) {
                Int g = (*gram_)[i * n_ + j];
                if (g == 0) continue;
                inner = (inner + g * grid_[b * n_ + j]) % p_;
            }
            acc = (acc + va * inner) % p_;
        }
        return acc % p_ == 0;
    }

    bool increment_row(std::size_t r) {
        auto& cells = row_cells_[r];
        for (std::size_t i = cells.size(); i > 0; --i) {
            Int& v = grid_[r * n_ + cells[i - 1]];
            if (v + 1 < p_) {
                ++v;
                for (std::size_t j = i; j < cells.size(); ++j) grid_[r * n_ + cells[j]] = 0;
                return true;
            }
            v = 0;
        }
        return false;
    }

    void reset_rows_from(std::size_t r) {
        for (std::size_t i = r; i < k_; ++i)
            for (auto c : row_cells_[i]) grid_[i * n_ + c] = 0;
    }

    /// Rows before `row` are valid; position rows row..k-1 at the least
    /// assignment passing the filter, or return false if none remains.
    bool seek_valid(std::size_t row) {
        reset_rows_from(row + 1);
        std::size_t r = row;
        while (r < k_) {
            if (row_ok(r)) {
                ++r;
                continue;
            }
            while (!increment_row(r)) {
                if (r == 0) return false;
                --r;
            }
            reset_rows_from(r + 1);
        }
        return true;
    }

    std::size_t n_, k_;
    Int p_;
    std::vector<std::size_t> pivots_;
    const std::vector<Int>* gram_;
    bool check_diagonal_;
    std::vector<Int> grid_;
    std::vector<std::vector<std::size_t>> row_cells_;
    bool alive_ = false;
};

inline void for_each_combination(std::size_t n, std::size_t k,
                                 const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (k > n) return;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        fn(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace detail

/// Lexicographic stream of canonical k-subspaces of GF(p)^n, optionally
/// restricted to subspaces isotropic for `gram`.
class SubspaceStream {
public:
    struct Options {
        std::optional<Matrix<Fp>> gram;  // isotropy filter when present
        bool symmetric_kind = false;     // true: also require self-orthogonal rows
    };

    SubspaceStream(std::size_t n, std::size_t k, Int p) : SubspaceStream(n, k, p, Options{}) {}

    SubspaceStream(std::size_t n, std::size_t k, Int p, Options opts)
        : n_(n), k_(k), p_(p) {
        if (opts.gram) {
            gram_flat_.assign(n * n, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) gram_flat_[i * n + j] = opts.gram->at(i, j).value();
            check_diag_ = opts.symmetric_kind;
            use_gram_ = true;
        }
        detail::for_each_combination(n, k, [&](const std::vector<std::size_t>& piv) {
            auto gen = std::make_unique<detail::PatternGen>(
                n_, k_, p_, piv, use_gram_ ? &gram_flat_ : nullptr, check_diag_);
            if (gen->alive()) heap_.push_back(std::move(gen));
        });
        std::make_heap(heap_.begin(), heap_.end(), cmp);
    }

    /// next canonical basis matrix, or nullopt when exhausted
    std::optional<Matrix<Fp>> next_matrix() {
        if (heap_.empty()) return std::nullopt;
        std::pop_heap(heap_.begin(), heap_.end(), cmp);
        auto& gen = heap_.back();
        Matrix<Fp> out(k_, n_, p_);
        for (std::size_t r = 0; r < k_; ++r)
            for (std::size_t c = 0; c < n_; ++c) out.at(r, c) = Fp(gen->grid()[r * n_ + c], p_);
        gen->advance();
        if (gen->alive()) {
            std::push_heap(heap_.begin(), heap_.end(), cmp);
        } else {
            heap_.pop_back();
        }
        return out;
    }

    std::optional<Subspace<Fp>> next() {
        auto m = next_matrix();
        if (!m) return std::nullopt;
        return Subspace<Fp>::from_rows(std::move(*m));
    }

private:
    // max-heap with "greater" comparator acts as a min-heap on the grids
    static bool cmp(const std::unique_ptr<detail::PatternGen>& a,
                    const std::unique_ptr<detail::PatternGen>& b) {
        return b->grid() < a->grid();
    }

    std::size_t n_, k_;
    Int p_;
    bool use_gram_ = false;
    bool check_diag_ = false;
    std::vector<Int> gram_flat_;
    std::vector<std::unique_ptr<detail::PatternGen>> heap_;
};

/// All k-subspaces of GF(p)^n in canonical order, materialized.
/// `cap` bounds the predicted count before any work happens.
inline std::vector<Subspace<Fp>> enumerate_subspaces(std::size_t n, std::size_t k, Int p,
                                                     BigInt cap = BigInt(2000000)) {
    BigInt bound = gaussian_binomial(n, k, p);
    if (bound > cap)
        throw CapExceeded("subspace enumeration would yield " + bound.str() + " > cap " + cap.str(),
                          bound);
    std::vector<Subspace<Fp>> out;
    SubspaceStream st(n, k, p);
    while (auto s = st.next()) out.push_back(std::move(*s));
    return out;
}

}  // namespace grex
