#include "doctest.h"
#include "grex/field.hpp"

using namespace grex;

TEST_CASE("GF(p) arithmetic") {
    Fp a(5, 7), b(4, 7);
    CHECK(a + b == Fp(2, 7));
    CHECK(a - b == Fp(1, 7));
    CHECK(a * b == Fp(6, 7));
    CHECK((a / b) * b == a);
    CHECK(Fp(-3, 7) == Fp(4, 7));
    CHECK((-Fp(0, 7)) == Fp(0, 7));
    CHECK_THROWS_AS(Fp(1, 7).operator+(Fp(1, 5)), DimensionMismatch);
    CHECK_THROWS_AS(Fp(0, 7).inverse(), Error);
}

TEST_CASE("GF(p) inverses over several primes") {
    for (Int p : {2, 3, 5, 7, 11, 13}) {
        for (Int v = 1; v < p; ++v) {
            Fp x(v, p);
            CHECK(x * x.inverse() == Fp::one(p));
        }
    }
}

TEST_CASE("rational arithmetic is exact") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    CHECK((a * b) == Rat(1, 18));
    CHECK(a.inverse() == Rat(3, 1));
    CHECK(Rat(2, 4).str() == "1/2");
    CHECK(Rat(-2, 4).str() == "-1/2");
    // denominator always positive in the canonical form
    CHECK(Rat(3, -6).str() == "-1/2");
}

TEST_CASE("field specs") {
    CHECK(FieldSpec::gf(3).finite());
    CHECK(FieldSpec::rationals().rational());
    CHECK_THROWS_AS(FieldSpec::gf(4), InvalidDescriptor);
    CHECK(FieldSpec::gf(2).characteristic() == 2);
    CHECK(FieldSpec::rationals().characteristic() == 0);
}
