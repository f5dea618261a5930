#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dani/field.hpp"
#include "dani/sampling.hpp"

using namespace dani;

TEST_CASE("rational arithmetic is exact") {
    auto Q = FieldSpec::rationals();
    FieldElem a = FieldElem::from_ratio(Q, 1, 3);
    FieldElem b = FieldElem::from_ratio(Q, 1, 6);
    CHECK((a + b).str() == "1/2");
    CHECK((a - b).str() == "1/6");
    CHECK((a * b).str() == "1/18");
    CHECK((a / b).str() == "2");
    CHECK((-a).str() == "-1/3");
    CHECK(a.inverse().str() == "3");
}

TEST_CASE("prime field arithmetic uses least nonnegative residues") {
    auto F5 = FieldSpec::prime_field(5);
    FieldElem a = FieldElem::from_int(F5, 3);
    FieldElem b = FieldElem::from_int(F5, 4);
    CHECK((a + b).str() == "2");
    CHECK((a * b).str() == "2");
    CHECK((a - b).str() == "4");
    CHECK((-a).str() == "2");
    CHECK((b / a).str() == "3"); // 4 * 3^{-1} = 4 * 2 = 8 = 3
    CHECK(FieldElem::from_int(F5, -1).str() == "4");
    CHECK_FALSE(FieldElem::from_int(F5, 2).is_negative());
}

TEST_CASE("field axioms on random samples") {
    for (auto spec : {FieldSpec::rationals(), FieldSpec::prime_field(2),
                      FieldSpec::prime_field(97)}) {
        Rng rng(42);
        for (int i = 0; i < 200; ++i) {
            FieldElem a = random_field_elem(rng, spec);
            FieldElem b = random_field_elem(rng, spec);
            FieldElem c = random_field_elem(rng, spec);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            if (!b.is_zero()) CHECK((a / b) * b == a);
        }
    }
}

TEST_CASE("characteristic must be prime") {
    CHECK_THROWS_AS(FieldSpec::prime_field(4), ConfigError);
    CHECK_THROWS_AS(FieldSpec::prime_field(1), ConfigError);
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(1000000007ull));
    CHECK_FALSE(is_prime_u64(1000000007ull * 3));
}

TEST_CASE("field spec parsing") {
    CHECK(FieldSpec::parse("Q") == FieldSpec::rationals());
    CHECK(FieldSpec::parse("Fp 5") == FieldSpec::prime_field(5));
    CHECK(FieldSpec::parse("Fp:7") == FieldSpec::prime_field(7));
    CHECK_THROWS_AS(FieldSpec::parse("R"), ConfigError);
}

TEST_CASE("operations on mismatched fields are rejected") {
    FieldElem a = FieldElem::from_int(FieldSpec::rationals(), 1);
    FieldElem b = FieldElem::from_int(FieldSpec::prime_field(5), 1);
    CHECK_THROWS_AS(a + b, FieldMismatch);
}
