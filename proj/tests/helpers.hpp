#pragma once

#include <random>
#include <vector>

#include "grex/matrix.hpp"
#include "grex/subspace.hpp"

namespace testutil {

using grex::Fp;
using grex::Int;
using grex::Matrix;
using grex::Rat;
using grex::Subspace;

template <class K>
Matrix<K> mat(std::size_t r, std::size_t c, std::vector<Int> vals, typename K::Ctx ctx) {
    Matrix<K> m(r, c, ctx);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = K::from_int(vals[i * c + j], ctx);
    return m;
}

inline Matrix<Fp> random_matrix(std::size_t r, std::size_t c, Int p, std::mt19937_64& rng) {
    std::uniform_int_distribution<Int> d(0, p - 1);
    Matrix<Fp> m(r, c, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Fp(d(rng), p);
    return m;
}

inline Subspace<Fp> random_subspace(std::size_t ambient, std::size_t gens, Int p,
                                    std::mt19937_64& rng) {
    return Subspace<Fp>::from_rows(random_matrix(gens, ambient, p, rng));
}

/// unit coordinate vector subspace span{e_i}
template <class K>
Subspace<K> axis(std::size_t ambient, std::size_t i, typename K::Ctx ctx) {
    Matrix<K> m(1, ambient, ctx);
    m.at(0, i) = K::one(ctx);
    return Subspace<K>::from_rows(m);
}

template <class K>
Subspace<K> axes(std::size_t ambient, std::vector<std::size_t> idx, typename K::Ctx ctx) {
    Matrix<K> m(idx.size(), ambient, ctx);
    for (std::size_t r = 0; r < idx.size(); ++r) m.at(r, idx[r]) = K::one(ctx);
    return Subspace<K>::from_rows(m);
}

}  // namespace testutil
