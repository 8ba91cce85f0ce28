#include <set>

#include "doctest.h"
#include "grex/grassmann.hpp"
#include "helpers.hpp"

using namespace grex;
using namespace testutil;

TEST_CASE("descriptor validation") {
    CHECK_NOTHROW(standard_desc<Fp>(GrassKind::symp, 2, 6, 3));
    CHECK_NOTHROW(standard_desc<Fp>(GrassKind::ortho, 2, 7, 3));
    CHECK_NOTHROW(standard_desc<Fp>(GrassKind::ortho, 2, 8, 3));
    CHECK_NOTHROW(standard_desc<Rat>(GrassKind::ortho, 3, 9, Rat::Ctx{}));
    // even-dimensional orthogonal hosts exclude the top two values of k
    CHECK_THROWS_AS(standard_desc<Fp>(GrassKind::ortho, 4, 8, 3), InvalidDescriptor);
    CHECK_THROWS_AS(standard_desc<Fp>(GrassKind::ortho, 3, 8, 3), InvalidDescriptor);
    CHECK_THROWS_AS(standard_desc<Fp>(GrassKind::ortho, 1, 6, 3), InvalidDescriptor);
    CHECK_THROWS_AS(standard_desc<Fp>(GrassKind::ortho, 1, 7, 2), InvalidDescriptor);
    CHECK_THROWS_AS(standard_desc<Fp>(GrassKind::symp, 3, 5, 3), InvalidDescriptor);
    CHECK_THROWS_AS(plain_desc<Fp>(0, 4, 3), InvalidDescriptor);
}

TEST_CASE("dimension formulas") {
    CHECK(dimension(standard_desc<Fp>(GrassKind::symp, 2, 6, 3)) == 7);
    CHECK(dimension(standard_desc<Fp>(GrassKind::ortho, 2, 7, 3)) == 7);
    CHECK(dimension(plain_desc<Fp>(1, 9, 3)) == 8);
    CHECK(dimension(plain_desc<Fp>(2, 4, 3)) == 4);
    CHECK(dimension(standard_desc<Fp>(GrassKind::symp, 1, 4, 3)) == 3);
    CHECK(dimension(standard_desc<Fp>(GrassKind::symp, 3, 6, 3)) == 6);
    CHECK(dimension(standard_desc<Fp>(GrassKind::ortho, 1, 9, 3)) == 7);
    CHECK(dimension(standard_desc<Fp>(GrassKind::ortho, 2, 9, 3)) == 11);
}

TEST_CASE("point enumeration and counting agree") {
    // every line of a symplectic space is a point of GS(1, .)
    auto gs14 = standard_desc<Fp>(GrassKind::symp, 1, 4, 2);
    CHECK(enumerate_points(gs14).size() == 15);

    // Lagrangian planes of GF(2)^4 by filtering all 35 planes
    auto gs24 = standard_desc<Fp>(GrassKind::symp, 2, 4, 2);
    auto pts = enumerate_points(gs24);
    std::size_t filtered = 0;
    for (const auto& s : enumerate_subspaces(4, 2, 2)) {
        if (is_isotropic(gs24.space, s)) ++filtered;
    }
    CHECK(filtered == 15);
    CHECK(pts.size() == 15);

    // isotropic lines of the split quadric in 7 variables
    auto go17 = standard_desc<Fp>(GrassKind::ortho, 1, 7, 3);
    CHECK(enumerate_points(go17).size() == 364);

    for (auto [kind, k, dim, p] : std::vector<std::tuple<GrassKind, std::size_t, std::size_t, Int>>{
             {GrassKind::plain, 2, 4, 3},
             {GrassKind::symp, 2, 6, 2},
             {GrassKind::symp, 2, 6, 3},
             {GrassKind::ortho, 2, 7, 3},
             {GrassKind::ortho, 2, 8, 3},
             {GrassKind::ortho, 1, 9, 3}}) {
        auto d = standard_desc<Fp>(kind, k, dim, p);
        CHECK(BigInt(enumerate_points(d).size()) == grass_point_count(kind, k, dim, p));
    }
}

TEST_CASE("pluecker coordinates") {
    auto e12 = axes<Fp>(4, {0, 1}, 3);
    auto coords = plucker(e12);
    REQUIRE(coords.size() == 6);
    CHECK(coords[0].is_one());
    for (std::size_t i = 1; i < 6; ++i) CHECK(coords[i].is_zero());

    // spanning vector of a line, normalized
    Matrix<Fp> v(1, 3, 5);
    v.at(0, 0) = Fp(2, 5);
    v.at(0, 2) = Fp(3, 5);
    auto line = Subspace<Fp>::from_rows(v);
    auto c1 = plucker(line);
    CHECK(c1[0].is_one());

    // exhaustive injectivity on GS(2, GF(3)^6)
    auto gs26 = standard_desc<Fp>(GrassKind::symp, 2, 6, 3);
    auto pts = enumerate_points(gs26);
    std::set<std::vector<Fp>> images;
    for (const auto& p : pts) images.insert(plucker(p));
    CHECK(images.size() == pts.size());
}

TEST_CASE("pencil lines") {
    auto gs26 = standard_desc<Fp>(GrassKind::symp, 2, 6, 3);
    // two planes inside a common Lagrangian, meeting in a line
    auto lag = axes<Fp>(6, {0, 1, 2}, 3);
    REQUIRE(is_isotropic(gs26.space, lag));
    auto p = axes<Fp>(6, {0, 1}, 3);
    auto q = axes<Fp>(6, {0, 2}, 3);
    auto line = pencil_line(gs26, p, q);
    REQUIRE(line.has_value());
    CHECK(line->full);
    CHECK(line->points.size() == 4);
    for (const auto& pt : line->points) CHECK(is_isotropic(gs26.space, pt));

    // canonical object only depends on the flag
    auto r = line->points[1];
    auto s = line->points[3];
    auto line2 = pencil_line(gs26, r, s);
    REQUIRE(line2.has_value());
    CHECK(*line2 == *line);
    CHECK(line2->points == line->points);

    // too small an intersection yields nothing
    auto far = axes<Fp>(6, {3, 4}, 3);
    CHECK_FALSE(pencil_line(gs26, p, far).has_value());
}

TEST_CASE("alpha family members are projective spaces of hyperplanes") {
    auto gs26_f2 = standard_desc<Fp>(GrassKind::symp, 2, 6, 2);
    auto v3 = axes<Fp>(6, {0, 1, 2}, 2);
    REQUIRE(is_isotropic(gs26_f2.space, v3));
    auto m = family_member(gs26_f2, FamilyTag::ps_alpha, v3);
    CHECK(m.points.size() == 7);  // P^2 over GF(2)
    for (const auto& p : m.points) {
        CHECK(is_point(gs26_f2, p));
        CHECK(contains(v3, p));
    }
}

TEST_CASE("beta family members live between the datum and its perp") {
    auto gs26_f2 = standard_desc<Fp>(GrassKind::symp, 2, 6, 2);
    auto v1 = axis<Fp>(6, 0, 2);
    auto m = family_member(gs26_f2, FamilyTag::ps_beta, v1);
    CHECK(m.points.size() == 15);  // P^3 over GF(2), dimension 2n-2k+1 = 3
    auto perp1 = perp(gs26_f2.space, v1);
    for (const auto& p : m.points) {
        CHECK(contains(p, v1));
        CHECK(contains(perp1, p));
        CHECK(is_point(gs26_f2, p));
    }
}

TEST_CASE("quadric members match an independent enumeration") {
    auto go27 = standard_desc<Fp>(GrassKind::ortho, 2, 7, 3);
    auto v1 = axis<Fp>(7, 0, 3);
    auto m = family_member(go27, FamilyTag::qo_beta, v1);
    // second path: filter the full point set
    std::size_t direct = 0;
    for (const auto& p : enumerate_points(go27)) {
        if (contains(p, v1)) ++direct;
    }
    CHECK(m.points.size() == direct);
    CHECK(BigInt(m.points.size()) == split_quadric_points(5, 3));
}

TEST_CASE("gamma members are spans between a nested isotropic flag") {
    auto go28 = standard_desc<Fp>(GrassKind::ortho, 2, 8, 3);
    auto inner = Subspace<Fp>::zero(8, 3);
    auto outer = axes<Fp>(8, {0, 1, 2, 3}, 3);
    REQUIRE(is_isotropic(go28.space, outer));
    auto m = family_member(go28, FamilyTag::qo_gamma, FlagPair<Fp>(inner, outer));
    CHECK(BigInt(m.points.size()) == gaussian_binomial(4, 2, 3));
    for (const auto& p : m.points) CHECK(contains(outer, p));
}

TEST_CASE("k = n orthogonal members on odd-dimensional hosts") {
    auto go37 = standard_desc<Fp>(GrassKind::ortho, 3, 7, 3);
    auto v3 = axes<Fp>(7, {0, 1, 2}, 3);
    REQUIRE(is_isotropic(go37.space, v3));
    auto m = family_member(go37, FamilyTag::po_alpha, v3);
    CHECK(BigInt(m.points.size()) == projective_space_points(3, 3));  // P^3 = 40
    // every member point meets the datum in codimension <= 1
    for (const auto& p : m.points) CHECK(intersect(p, v3).dim() >= 2);
    CHECK(std::binary_search(m.points.begin(), m.points.end(), v3));
}

TEST_CASE("po_beta members on odd hosts") {
    auto go27 = standard_desc<Fp>(GrassKind::ortho, 2, 7, 3);
    auto v1 = axis<Fp>(7, 0, 3);
    auto v3 = axes<Fp>(7, {0, 1, 2}, 3);
    auto m = family_member(go27, FamilyTag::po_beta, FlagPair<Fp>(v1, v3));
    CHECK(BigInt(m.points.size()) == projective_space_points(1, 3));  // P^{n-k} = P^1
    for (const auto& p : m.points) {
        CHECK(contains(p, v1));
        CHECK(contains(v3, p));
    }
}

TEST_CASE("family enumeration") {
    // PS_alpha needs k <= n-1
    auto gs24 = standard_desc<Fp>(GrassKind::symp, 2, 4, 2);
    CHECK_THROWS_AS(enumerate_family_data(gs24, FamilyTag::ps_alpha), InvalidDescriptor);

    // PS_beta on GS(2, GF(2)^4) has one member per point of P^3
    auto data = enumerate_family_data(gs24, FamilyTag::ps_beta);
    CHECK(data.size() == 15);

    // all tags on a small orthogonal host enumerate and materialize
    auto go27 = standard_desc<Fp>(GrassKind::ortho, 2, 7, 3);
    for (auto tag : {FamilyTag::po_alpha, FamilyTag::po_beta, FamilyTag::qo_beta}) {
        auto fams = enumerate_family_data(go27, tag);
        CHECK(!fams.empty());
        auto member = family_member(go27, tag, fams[0]);
        CHECK(!member.points.empty());
    }
    CHECK(enumerate_family_data(go27, FamilyTag::qo_beta).size() == 364);
}

TEST_CASE("projective members are closed under their own pencil lines") {
    auto gs26 = standard_desc<Fp>(GrassKind::symp, 2, 6, 3);
    auto v3 = axes<Fp>(6, {0, 1, 2}, 3);
    auto m = family_member(gs26, FamilyTag::ps_alpha, v3);
    for (std::size_t i = 0; i < m.points.size(); ++i) {
        for (std::size_t j = i + 1; j < m.points.size(); ++j) {
            auto line = pencil_line(gs26, m.points[i], m.points[j]);
            if (!line) continue;
            for (const auto& p : line->points) {
                CHECK(std::binary_search(m.points.begin(), m.points.end(), p));
            }
        }
    }
}

TEST_CASE("intersection typing") {
    auto gs26 = standard_desc<Fp>(GrassKind::symp, 2, 6, 2);

    auto v3a = axes<Fp>(6, {0, 1, 2}, 2);
    auto a = family_member(gs26, FamilyTag::ps_alpha, v3a);

    SUBCASE("a member against itself is higher dimensional") {
        auto t = intersect_type(gs26, a, a);
        CHECK(t.kind == IntersectKind::higher);
        CHECK(t.higher_dim == 2);  // P^k with k = 2
    }

    SUBCASE("two alpha members whose data share a plane meet in a point") {
        // a second isotropic 3-space meeting v3a in dimension 2
        Matrix<Fp> rows(3, 6, 2);
        rows.at(0, 0) = Fp(1, 2);
        rows.at(1, 1) = Fp(1, 2);
        rows.at(2, 3) = Fp(1, 2);
        auto v3b = Subspace<Fp>::from_rows(rows);
        REQUIRE(is_isotropic(gs26.space, v3b));
        REQUIRE(intersect(v3a, v3b).dim() == 2);
        auto b = family_member(gs26, FamilyTag::ps_alpha, v3b);
        auto t = intersect_type(gs26, a, b);
        CHECK(t.kind == IntersectKind::point);
    }

    SUBCASE("alpha and beta members over a nested flag meet in the quotient line") {
        auto v1 = axis<Fp>(6, 0, 2);
        auto beta = family_member(gs26, FamilyTag::ps_beta, v1);
        auto t = intersect_type(gs26, a, beta);
        CHECK(t.kind == IntersectKind::line);
        // the line is exactly { V : v1 < V < v3a }
        auto pts = sorted_intersection(a.points, beta.points);
        QuotientSpace<Fp> q(v3a, v1);
        std::vector<Subspace<Fp>> expect;
        for (const auto& l : enumerate_subspaces(2, 1, 2)) expect.push_back(q.lift(l));
        std::sort(expect.begin(), expect.end());
        CHECK(pts == expect);
    }
}
