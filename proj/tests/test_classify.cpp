#include <random>

#include "doctest.h"
#include "grex/chains.hpp"

using namespace grex;

namespace {

AffineRule affine(Int slope, Int intercept) { return AffineRule{1, {}, slope, intercept}; }

ChainSpec chain(GrassKind kind, AffineRule k, AffineRule n,
                std::optional<Parity> parity = std::nullopt,
                StepClass steps = StepClass::standard) {
    ChainSpec c;
    c.term.kind = kind;
    c.term.k_rule = k;
    c.term.n_rule = n;
    c.term.parity = parity;
    c.steps.eventual = steps;
    c.validate();
    return c;
}

}  // namespace

TEST_CASE("affine rules with prefixes") {
    AffineRule r{3, {5, 9}, 2, 1};
    r.validate();
    CHECK(r.value(1) == 5);
    CHECK(r.value(2) == 9);
    CHECK(r.value(3) == 7);
    CHECK(r.value(10) == 21);
    CHECK_THROWS_AS(r.value(0), InvalidDescriptor);
}

TEST_CASE("limit invariants") {
    // constant k, growing dimension
    auto a = chain(GrassKind::plain, affine(0, 2), affine(1, 4));
    auto ia = limit_invariants(a);
    CHECK(ia.k_limit == 2);
    CHECK_FALSE(ia.c_limit.has_value());

    // growing k with fixed symplectic codimension 3
    auto b = chain(GrassKind::symp, affine(1, 0), affine(2, 6));
    auto ib = limit_invariants(b);
    CHECK_FALSE(ib.k_limit.has_value());
    CHECK(ib.c_limit == 3);

    // odd orthogonal chain with codimension 5
    auto c = chain(GrassKind::ortho, affine(1, 0), affine(2, 11), Parity::odd);
    auto ic = limit_invariants(c);
    CHECK_FALSE(ic.k_limit.has_value());
    CHECK(ic.c_limit == 5);
    CHECK(ic.parity == Parity::odd);
}

TEST_CASE("chain validation rejects bad inputs") {
    CHECK_THROWS_AS(chain(GrassKind::plain, affine(0, 2), affine(0, 9)), InvalidDescriptor);
    CHECK_THROWS_AS(chain(GrassKind::plain, affine(2, 0), affine(1, 4)), InvalidDescriptor);
    CHECK_THROWS_AS(chain(GrassKind::symp, affine(0, 1), affine(1, 4)), InvalidDescriptor);
    CHECK_THROWS_AS(chain(GrassKind::ortho, affine(0, 1), affine(2, 7)), InvalidDescriptor);  // no parity
    CHECK_THROWS_AS(chain(GrassKind::ortho, affine(0, 1), affine(2, 8), Parity::odd),
                    InvalidDescriptor);  // parity mismatch
    // even orthogonal chain running into the excluded top range
    CHECK_THROWS_AS(chain(GrassKind::ortho, affine(1, 0), affine(2, 2), Parity::even),
                    InvalidDescriptor);
    // quadric steps need orthogonal terms
    CHECK_THROWS_AS(chain(GrassKind::symp, affine(0, 1), affine(2, 2), std::nullopt,
                          StepClass::factors_quadric),
                    InvalidDescriptor);
}

TEST_CASE("classification of the standard chains") {
    CHECK(classify_chain(chain(GrassKind::plain, affine(0, 2), affine(1, 4))).family.str() == "G(2)");
    CHECK(classify_chain(chain(GrassKind::plain, affine(1, 0), affine(2, 3))).family.str() == "G(inf)");
    CHECK(classify_chain(chain(GrassKind::symp, affine(1, 0), affine(4, 0))).family.str() ==
          "GS(inf,inf)");
    CHECK(classify_chain(chain(GrassKind::symp, affine(0, 2), affine(2, 4))).family.str() ==
          "GS(2,inf)");
    CHECK(classify_chain(chain(GrassKind::symp, affine(1, 0), affine(2, 2))).family.str() ==
          "GS(inf,1)");
    CHECK(classify_chain(chain(GrassKind::ortho, affine(0, 2), affine(2, 5), Parity::odd)).family.str() ==
          "GO(2,inf)");
    CHECK(classify_chain(chain(GrassKind::ortho, affine(1, 1), affine(2, 6), Parity::even)).family.str() ==
          "GO0(inf,2)");
    CHECK(classify_chain(chain(GrassKind::ortho, affine(1, 0), affine(2, 5), Parity::odd)).family.str() ==
          "GO1(inf,2)");
    CHECK(classify_chain(chain(GrassKind::ortho, affine(1, 0), affine(4, 8), Parity::even)).family.str() ==
          "GO(inf,inf)");
}

TEST_CASE("normalization and aliases") {
    // the k = 1 symplectic chain is the infinite projective space
    auto c = chain(GrassKind::symp, affine(0, 1), affine(2, 2));
    CHECK(classify_chain(c).family.str() == "G(1)");
    CHECK(StandardFamily::parse("P(inf)").str() == "G(1)");
    CHECK(are_isomorphic(StandardFamily::parse("G(1)"), StandardFamily::parse("GS(1,inf)")));
    CHECK_FALSE(are_isomorphic(StandardFamily::parse("GO0(inf,2)"), StandardFamily::parse("GO1(inf,2)")));
    CHECK(are_isomorphic(StandardFamily::parse("G(3)"), StandardFamily::parse("G(3)")));
    CHECK_FALSE(are_isomorphic(StandardFamily::parse("G(3)"), StandardFamily::parse("G(2)")));
}

TEST_CASE("family string round trips") {
    for (const char* s : {"G(1)", "G(7)", "G(inf)", "GO(3,inf)", "GO0(inf,2)", "GO1(inf,0)",
                          "GO(inf,inf)", "GS(2,inf)", "GS(inf,0)", "GS(inf,inf)"}) {
        CHECK(StandardFamily::parse(s).str() == s);
    }
    CHECK_THROWS_AS(StandardFamily::parse("GO(inf,2)"), InvalidDescriptor);
    CHECK_THROWS_AS(StandardFamily::parse("GO0(inf,1)"), InvalidDescriptor);
    CHECK_THROWS_AS(StandardFamily::parse("nonsense"), InvalidDescriptor);
}

TEST_CASE("projective and quadric step chains") {
    auto proj = chain(GrassKind::plain, affine(0, 2), affine(1, 4), std::nullopt,
                      StepClass::factors_projective);
    CHECK(classify_chain(proj).family.str() == "G(1)");

    auto quad = chain(GrassKind::ortho, affine(0, 1), affine(2, 5), Parity::odd,
                      StepClass::factors_quadric);
    auto qc = classify_chain(quad);
    CHECK(qc.family.str() == "GO(1,inf)");
    CHECK(!qc.notes.empty());

    // bounded quadric dimension collapses to the projective limit
    auto quad_bounded = chain(GrassKind::ortho, affine(1, 0), affine(2, 7), Parity::odd,
                              StepClass::factors_quadric);
    CHECK(classify_chain(quad_bounded).family.str() == "G(1)");
}

TEST_CASE("combination chains classify through the plain route") {
    auto c = chain(GrassKind::symp, affine(0, 2), affine(2, 4), std::nullopt,
                   StepClass::combination);
    auto r = classify_chain(c);
    CHECK(r.family.str() == "G(2)");
    CHECK(!r.notes.empty());
}

TEST_CASE("subsequence invariance") {
    std::mt19937_64 rng(5);
    std::vector<ChainSpec> specs = {
        chain(GrassKind::plain, affine(0, 2), affine(1, 4)),
        chain(GrassKind::plain, affine(1, 0), affine(2, 3)),
        chain(GrassKind::symp, affine(1, 0), affine(4, 0)),
        chain(GrassKind::symp, affine(0, 2), affine(2, 4)),
        chain(GrassKind::ortho, affine(1, 0), affine(2, 5), Parity::odd),
        chain(GrassKind::ortho, affine(0, 2), affine(2, 6), Parity::even),
    };
    std::uniform_int_distribution<std::size_t> da(1, 4), db(0, 5);
    for (const auto& c : specs) {
        auto expect = classify_chain(c).family;
        for (int rep = 0; rep < 20; ++rep) {
            auto sub = subsequence(c, da(rng), db(rng));
            CHECK(classify_chain(sub).family == expect);
        }
    }
}

TEST_CASE("signatures of the nine families are pairwise distinct") {
    std::vector<StandardFamily> nine = {
        StandardFamily::parse("G(2)"),      StandardFamily::parse("G(inf)"),
        StandardFamily::parse("GO(2,inf)"), StandardFamily::parse("GO0(inf,2)"),
        StandardFamily::parse("GO1(inf,2)"), StandardFamily::parse("GO(inf,inf)"),
        StandardFamily::parse("GS(2,inf)"), StandardFamily::parse("GS(inf,2)"),
        StandardFamily::parse("GS(inf,inf)"),
    };
    for (std::size_t i = 0; i < nine.size(); ++i) {
        for (std::size_t j = i + 1; j < nine.size(); ++j) {
            CHECK(signature(nine[i]) != signature(nine[j]));
        }
    }
    // the parameterized families separate within their own series
    CHECK(signature(StandardFamily::parse("GS(3,inf)")) != signature(StandardFamily::parse("GS(inf,1)")));
    CHECK(signature(StandardFamily::parse("GO0(inf,2)")) != signature(StandardFamily::parse("GO0(inf,3)")));
    CHECK(signature(StandardFamily::parse("GO1(inf,0)")) != signature(StandardFamily::parse("G(1)")));
}

TEST_CASE("signature values quoted from the distinguishing lemmas") {
    auto s0 = signature(StandardFamily::parse("GO0(inf,2)"));
    CHECK(s0.quad_dim == 4);  // 2k
    auto s1 = signature(StandardFamily::parse("GO1(inf,2)"));
    CHECK(s1.quad_dim == 5);  // 2k+1
    CHECK(signature(StandardFamily::parse("GS(inf,inf)")).pattern ==
          Signature::Pattern::line_or_empty);
    CHECK(signature(StandardFamily::parse("GO(inf,inf)")).pattern ==
          Signature::Pattern::point_possible);
}

TEST_CASE("truncation produces valid descriptors") {
    auto c = chain(GrassKind::symp, affine(1, 0), affine(2, 2));
    auto d = truncate(c, 3, 3);
    CHECK(d.kind == GrassKind::symp);
    CHECK(d.k == 3);
    CHECK(d.dim_v() == 8);
}
