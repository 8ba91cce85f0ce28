#include "doctest.h"
#include "grex/enumerate.hpp"
#include "grex/forms.hpp"
#include "helpers.hpp"

using namespace grex;
using namespace testutil;

TEST_CASE("standard hyperbolic constructions") {
    auto symp4 = standard_hyperbolic<Fp>(FormKind::symplectic, 4, 3);
    CHECK(symp4.form->nondegenerate());
    CHECK_FALSE(determinant(symp4.gram()).is_zero());

    auto q2 = standard_hyperbolic<Rat>(FormKind::symmetric, 2, Rat::Ctx{});
    // e1 is isotropic in the hyperbolic plane
    auto e1 = axis<Rat>(2, 0, Rat::Ctx{});
    CHECK(is_isotropic(q2, e1));

    CHECK_THROWS_AS(standard_hyperbolic<Fp>(FormKind::symplectic, 5, 3), InvalidDescriptor);
    CHECK_THROWS_AS(standard_hyperbolic<Fp>(FormKind::symmetric, 4, 2), InvalidDescriptor);
}

TEST_CASE("maximal isotropic dimension of the split symmetric form, dim 7") {
    auto sp = standard_hyperbolic<Fp>(FormKind::symmetric, 7, 3);
    SubspaceStream::Options opt;
    opt.gram = sp.gram();
    opt.symmetric_kind = true;
    SubspaceStream st3(7, 3, 3, opt);
    std::size_t dim3 = 0;
    while (auto s = st3.next()) {
        CHECK(is_isotropic(sp, *s));
        ++dim3;
    }
    CHECK(dim3 > 0);
    SubspaceStream st4(7, 4, 3, opt);
    CHECK_FALSE(st4.next().has_value());
}

TEST_CASE("perp dimensions and double perp") {
    auto sp = standard_hyperbolic<Fp>(FormKind::symmetric, 6, 3);
    CHECK(perp(sp, Subspace<Fp>::zero(6, 3)) == Subspace<Fp>::full(6, 3));
    CHECK(perp(sp, Subspace<Fp>::full(6, 3)) == Subspace<Fp>::zero(6, 3));

    auto e1 = axis<Fp>(6, 0, 3);
    auto p1 = perp(sp, e1);
    CHECK(p1.dim() == 5);
    CHECK(contains(p1, e1));  // e1 is isotropic for the antidiagonal Gram

    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 25; ++iter) {
        auto s = random_subspace(6, 2, 3, rng);
        CHECK(perp(sp, s).dim() + s.dim() == 6);
        CHECK(perp(sp, perp(sp, s)) == s);
        auto t = random_subspace(6, 3, 3, rng);
        if (contains(t, s)) CHECK(contains(perp(sp, s), perp(sp, t)));
        CHECK(perp(sp, sum(s, t)) == intersect(perp(sp, s), perp(sp, t)));
    }
}

TEST_CASE("isotropy basics") {
    auto sp = standard_hyperbolic<Fp>(FormKind::symplectic, 4, 2);
    CHECK(is_isotropic(sp, Subspace<Fp>::zero(4, 2)));
    CHECK_FALSE(is_isotropic(sp, Subspace<Fp>::full(4, 2)));
    // every line is isotropic for an alternating form
    for (const auto& s : enumerate_subspaces(4, 1, 2)) CHECK(is_isotropic(sp, s));
}

TEST_CASE("induced quotient form") {
    auto sp = standard_hyperbolic<Fp>(FormKind::symmetric, 8, 3);

    SUBCASE("trivial subspace gives the original form") {
        auto qf = induced_quotient_form(sp, Subspace<Fp>::zero(8, 3));
        CHECK(qf.space.dim == 8);
        CHECK(qf.space.gram() == sp.gram());
    }

    SUBCASE("one isotropic line drops the dimension by two and stays split") {
        auto e1 = axis<Fp>(8, 0, 3);
        auto qf = induced_quotient_form(sp, e1);
        CHECK(qf.space.dim == 6);
        CHECK(qf.space.form->nondegenerate());
        // congruent to the standard split Gram of dimension 6
        auto s = hyperbolic_basis(qf.space);
        CHECK(s * qf.space.gram() * s.transpose() == standard_gram<Fp>(FormKind::symmetric, 6, 3));
    }

    SUBCASE("independence of the lift choice") {
        std::mt19937_64 rng(17);
        auto sp6 = standard_hyperbolic<Fp>(FormKind::symplectic, 6, 3);
        SubspaceStream::Options opt;
        opt.gram = sp6.gram();
        SubspaceStream st(6, 2, 3, opt);
        int tried = 0;
        while (auto w = st.next()) {
            if (++tried > 12) break;
            auto qf = induced_quotient_form(sp6, *w);
            CHECK(qf.space.dim == 2);
            CHECK(qf.space.form->nondegenerate());
            // re-derive the gram from randomly shifted lifts; the induced
            // values must not change
            for (int rep = 0; rep < 4; ++rep) {
                Matrix<Fp> shift = random_matrix(qf.quotient.comp().rows(), w->dim(), 3, rng);
                Matrix<Fp> lifted = qf.quotient.comp() + shift * w->basis();
                auto gram2 = lifted * sp6.gram() * lifted.transpose();
                CHECK(gram2 == qf.space.gram());
            }
        }
    }

    SUBCASE("lagrangian quotient is zero dimensional") {
        auto sp4 = standard_hyperbolic<Fp>(FormKind::symplectic, 4, 3);
        auto lag = axes<Fp>(4, {0, 1}, 3);
        REQUIRE(is_isotropic(sp4, lag));
        auto qf = induced_quotient_form(sp4, lag);
        CHECK(qf.space.dim == 0);
    }

    SUBCASE("non-isotropic subspace is rejected") {
        auto sp4 = standard_hyperbolic<Fp>(FormKind::symmetric, 4, 3);
        auto bad = axes<Fp>(4, {0, 3}, 3);
        CHECK_THROWS_AS(induced_quotient_form(sp4, bad), InvalidDescriptor);
    }
}

TEST_CASE("split sums") {
    auto a = standard_hyperbolic<Fp>(FormKind::symmetric, 7, 3);
    auto b = standard_hyperbolic<Fp>(FormKind::symmetric, 2, 3);
    auto dec = split_sum(a, b);
    CHECK(dec.total.dim == 9);
    CHECK(dec.total.form->nondegenerate());
    CHECK(rank(dec.inj_part) == 7);
    CHECK(rank(dec.inj_complement) == 2);
    // the two images are perpendicular and intersect trivially
    auto im_a = Subspace<Fp>::from_rows(dec.inj_part);
    auto im_b = Subspace<Fp>::from_rows(dec.inj_complement);
    CHECK(intersect(im_a, im_b).dim() == 0);
    CHECK((dec.inj_part * dec.total.gram() * dec.inj_complement.transpose()).is_zero());
    CHECK(dec.inj_part * dec.total.gram() * dec.inj_part.transpose() == a.gram());
    CHECK(dec.inj_complement * dec.total.gram() * dec.inj_complement.transpose() == b.gram());

    // the 9-dimensional sum is still split: isotropic dimension reaches 4
    SubspaceStream::Options opt;
    opt.gram = dec.total.gram();
    opt.symmetric_kind = true;
    SubspaceStream st(9, 4, 3, opt);
    auto first = st.next();
    REQUIRE(first.has_value());
    CHECK(is_isotropic(dec.total, *first));

    auto s1 = standard_hyperbolic<Fp>(FormKind::symplectic, 4, 3);
    auto s2 = standard_hyperbolic<Fp>(FormKind::symplectic, 2, 3);
    auto dec2 = split_sum(s1, s2);
    CHECK_FALSE(determinant(dec2.total.gram()).is_zero());

    CHECK_THROWS_AS(split_sum(a, s2), InvalidDescriptor);

    SUBCASE("identity decomposition with a zero complement") {
        auto none = FormedSpace<Fp>{0, 3, BilinearForm<Fp>{FormKind::symmetric, Matrix<Fp>(0, 0, 3)}};
        auto dec3 = split_sum(a, none);
        CHECK(dec3.total.gram() == a.gram());
    }
}

TEST_CASE("hyperbolic basis over several fields and kinds") {
    std::mt19937_64 rng(23);
    for (Int p : {3, 5, 13}) {
        for (std::size_t dim : {2u, 4u, 6u}) {
            auto sp = standard_hyperbolic<Fp>(FormKind::symplectic, dim, p);
            auto s = hyperbolic_basis(sp);
            CHECK(s * sp.gram() * s.transpose() == standard_gram<Fp>(FormKind::symplectic, dim, p));
            auto t = random_isometry(sp, rng);
            CHECK(t * sp.gram() * t.transpose() == sp.gram());
        }
        for (std::size_t dim : {3u, 5u, 7u, 8u}) {
            auto sp = standard_hyperbolic<Fp>(FormKind::symmetric, dim, p);
            auto s = hyperbolic_basis(sp);
            CHECK(s * sp.gram() * s.transpose() == standard_gram<Fp>(FormKind::symmetric, dim, p));
            auto t = random_isometry(sp, rng);
            CHECK(t * sp.gram() * t.transpose() == sp.gram());
        }
    }
}

TEST_CASE("isotropic completion") {
    auto sp = standard_hyperbolic<Fp>(FormKind::symmetric, 9, 3);
    auto start = axis<Fp>(9, 0, 3);
    auto max = isotropic_complete(sp, start, 4);
    REQUIRE(max.has_value());
    CHECK(max->dim() == 4);
    CHECK(is_isotropic(sp, *max));
    CHECK(contains(*max, start));
    // cannot exceed the Witt index
    CHECK_FALSE(isotropic_complete(sp, start, 5).has_value());
}
