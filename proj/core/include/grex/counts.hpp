#pragma once

// Exact point counts over GF(q) for subspace and isotropic-subspace families,
// computed by counting ordered bases: the i-th basis vector of an isotropic
// k-space ranges over the perp of the previous ones, minus the span so far.
// Big integers keep every intermediate exact.

#include "grex/field.hpp"

namespace grex {

inline BigInt big_pow(Int q, std::size_t e) {
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= q;
    return r;
}

inline BigInt exact_div(const BigInt& a, const BigInt& b) {
    if (b == 0 || a % b != 0) throw Error("count division not exact");
    return a / b;
}

/// |GL_k(F_q)| = prod (q^k - q^i)
inline BigInt gl_order(std::size_t k, Int q) {
    BigInt r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= big_pow(q, k) - big_pow(q, i);
    return r;
}

/// Number of k-dimensional subspaces of F_q^n (Gaussian binomial).
inline BigInt gaussian_binomial(std::size_t n, std::size_t k, Int q) {
    if (k > n) return 0;
    BigInt num = 1;
    for (std::size_t i = 0; i < k; ++i) num *= big_pow(q, n) - big_pow(q, i);
    return exact_div(num, gl_order(k, q));
}

/// Isotropic vectors (zero included) of a split symmetric form on F_q^m,
/// char != 2. Splitting off a hyperbolic plane x*y + Q'(z) gives
/// I(m) = (2q-1) I(m-2) + (q-1) (q^{m-2} - I(m-2)).
inline BigInt split_isotropic_vectors(std::size_t m, Int q) {
    if (m == 0) return 1;
    if (m == 1) return 1;
    BigInt prev = split_isotropic_vectors(m - 2, q);
    return BigInt(2 * q - 1) * prev + BigInt(q - 1) * (big_pow(q, m - 2) - prev);
}

/// Isotropic k-subspaces of F_q^{2n} with a nondegenerate symplectic form.
inline BigInt symplectic_isotropic_count(std::size_t two_n, std::size_t k, Int q) {
    if (two_n % 2 != 0) throw InvalidDescriptor("symplectic space dimension must be even");
    if (k > two_n / 2) return 0;
    BigInt num = 1;
    for (std::size_t i = 0; i < k; ++i) num *= big_pow(q, two_n - i) - big_pow(q, i);
    return exact_div(num, gl_order(k, q));
}

/// Isotropic k-subspaces of F_q^m with the split symmetric form, char != 2.
inline BigInt orthogonal_isotropic_count(std::size_t m, std::size_t k, Int q) {
    if (q == 2) throw InvalidDescriptor("orthogonal counts need odd characteristic");
    if (k > m / 2) return 0;
    BigInt num = 1;
    for (std::size_t i = 0; i < k; ++i) {
        num *= big_pow(q, i) * (split_isotropic_vectors(m - 2 * i, q) - 1);
    }
    return exact_div(num, gl_order(k, q));
}

/// Points of a split quadric in P(F_q^m), i.e. isotropic lines.
inline BigInt split_quadric_points(std::size_t m, Int q) {
    return exact_div(split_isotropic_vectors(m, q) - 1, BigInt(q - 1));
}

/// Points of P^d over F_q.
inline BigInt projective_space_points(std::size_t d, Int q) {
    return exact_div(big_pow(q, d + 1) - 1, BigInt(q - 1));
}

}  // namespace grex
