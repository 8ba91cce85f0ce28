#include "doctest.h"
#include "grex/matrix.hpp"

using namespace grex;

namespace {

template <class K>
Matrix<K> from_ints(std::size_t r, std::size_t c, std::vector<Int> vals, typename K::Ctx ctx) {
    Matrix<K> m(r, c, ctx);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = K::from_int(vals[i * c + j], ctx);
    return m;
}

}  // namespace

TEST_CASE("rref is idempotent and fixes the identity") {
    auto id = Matrix<Fp>::identity(3, 5);
    CHECK(rref(id) == id);
    auto m = from_ints<Fp>(2, 3, {1, 2, 0, 2, 4, 1}, 5);
    auto r = rref(m);
    CHECK(rref(r) == r);
}

TEST_CASE("rref over Q by hand elimination") {
    // [[2,4],[1,3]] reduces to the identity
    auto m = from_ints<Rat>(2, 2, {2, 4, 1, 3}, Rat::Ctx{});
    CHECK(rref(m) == Matrix<Rat>::identity(2, Rat::Ctx{}));
}

TEST_CASE("rref keeps zero rows at the bottom") {
    auto m = from_ints<Fp>(2, 2, {0, 1, 0, 2}, 3);
    auto r = rref(m);
    CHECK(r.at(0, 0).is_zero());
    CHECK(r.at(0, 1).is_one());
    CHECK(r.rows_slice(1, 1).is_zero());
    CHECK(rank(m) == 1);
}

TEST_CASE("left kernel annihilates") {
    auto m = from_ints<Fp>(3, 2, {1, 2, 2, 4, 0, 1}, 5);
    auto k = left_kernel(m);
    CHECK(k.rows() == 1);
    CHECK((k * m).is_zero());
}

TEST_CASE("solve_columns finds the least-pivot particular solution") {
    auto a = from_ints<Fp>(2, 3, {1, 0, 1, 0, 1, 1}, 7);
    auto b = from_ints<Fp>(2, 1, {3, 4}, 7);
    auto x = solve_columns(a, b);
    REQUIRE(x.has_value());
    CHECK((a * *x) == b);
    // free variable (third) stays zero
    CHECK(x->at(2, 0).is_zero());

    auto bad = solve_columns(from_ints<Fp>(2, 1, {0, 0}, 7), b);
    CHECK_FALSE(bad.has_value());
}

TEST_CASE("inverse and determinant") {
    auto m = from_ints<Fp>(2, 2, {1, 2, 3, 4}, 11);
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK((m * *inv) == Matrix<Fp>::identity(2, 11));
    CHECK(determinant(m) == Fp(-2, 11));
    CHECK(determinant(from_ints<Fp>(2, 2, {1, 2, 2, 4}, 11)).is_zero());
    auto q = from_ints<Rat>(3, 3, {2, 0, 0, 0, 3, 0, 0, 0, 5}, Rat::Ctx{});
    CHECK(determinant(q) == Rat(30, 1));
}
