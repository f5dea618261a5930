#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dani/parser.hpp"
#include "dani/polynomial.hpp"
#include "dani/sampling.hpp"

using namespace dani;

namespace {

const auto kFields = {FieldSpec::rationals(), FieldSpec::prime_field(2),
                      FieldSpec::prime_field(3), FieldSpec::prime_field(5)};

} // namespace

TEST_CASE("basic arithmetic identities") {
    auto Q = FieldSpec::rationals();
    auto uni = Universe::make({"T1", "V"});
    Polynomial v2 = parse_poly("V^2", uni, Q);
    CHECK((v2 - v2).is_zero());
    CHECK(parse_poly("(T1 + V)*(T1 - V)", uni, Q) == parse_poly("T1^2 - V^2", uni, Q));
    auto F2 = FieldSpec::prime_field(2);
    Polynomial v = parse_poly("V", uni, F2);
    CHECK((v + v).is_zero());
}

TEST_CASE("ring axioms hold exactly on random triples") {
    auto uni = Universe::make({"T1", "T2", "V"});
    for (const auto& field : kFields) {
        Rng rng(7);
        for (int i = 0; i < 60; ++i) {
            Polynomial a = random_polynomial(rng, field, uni, 4, 3);
            Polynomial b = random_polynomial(rng, field, uni, 4, 3);
            Polynomial c = random_polynomial(rng, field, uni, 4, 3);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + b) + c == a + (b + c));
        }
    }
}

TEST_CASE("formal derivative: power rule and characteristic") {
    auto Q = FieldSpec::rationals();
    auto uni = Universe::make({"A", "V"});
    CHECK(parse_poly("V^3 + A*V", uni, Q).derivative("V") == parse_poly("3*V^2 + A", uni, Q));
    auto F3 = FieldSpec::prime_field(3);
    CHECK(parse_poly("V^3", uni, F3).derivative("V").is_zero());
    CHECK(parse_poly("V^2 - 1", uni, Q).derivative("V") == parse_poly("2*V", uni, Q));
    CHECK_THROWS_AS(parse_poly("V", uni, Q).derivative("X"), UnknownVariable);
}

TEST_CASE("Leibniz rule in every characteristic") {
    auto uni = Universe::make({"T1", "V"});
    for (const auto& field : kFields) {
        Rng rng(11);
        for (int i = 0; i < 50; ++i) {
            Polynomial f = random_polynomial(rng, field, uni, 4, 4);
            Polynomial g = random_polynomial(rng, field, uni, 4, 4);
            CHECK((f * g).derivative("V") ==
                  f.derivative("V") * g + f * g.derivative("V"));
        }
    }
}

TEST_CASE("derivative of p-th powers vanishes over F_p") {
    for (unsigned p : {2u, 3u, 5u}) {
        auto field = FieldSpec::prime_field(p);
        auto uni = Universe::make({"T1", "V"});
        Rng rng(13);
        for (int i = 0; i < 25; ++i) {
            Polynomial f = random_polynomial(rng, field, uni, 3, 3);
            CHECK(f.pow(p).derivative("V").is_zero());
        }
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    auto uni = Universe::make({"T1", "V", "W"});
    for (const auto& field : kFields) {
        Rng rng(17);
        for (int i = 0; i < 40; ++i) {
            Polynomial f = random_polynomial(rng, field, uni, 3, 3);
            Polynomial g = random_polynomial(rng, field, uni, 3, 3);
            std::map<std::string, Polynomial> images{
                {"V", random_polynomial(rng, field, uni, 2, 2)},
                {"T1", random_polynomial(rng, field, uni, 2, 2)}};
            CHECK((f + g).substitute(images) == f.substitute(images) + g.substitute(images));
            CHECK((f * g).substitute(images) == f.substitute(images) * g.substitute(images));
        }
    }
}

TEST_CASE("substitution examples") {
    auto Q = FieldSpec::rationals();
    auto uni = Universe::make({"T1", "V", "W"});
    Polynomial v2 = parse_poly("V^2", uni, Q);
    std::map<std::string, Polynomial> im{{"V", parse_poly("V + T1^2*W", uni, Q)}};
    CHECK(v2.substitute(im) == parse_poly("V^2 + 2*T1^2*V*W + T1^4*W^2", uni, Q));
    Polynomial tv = parse_poly("T1*V", uni, Q);
    CHECK(tv.substitute({{"T1", Polynomial::zero(Q, uni)}}).is_zero());
    Polynomial id = parse_poly("V^2 - 1", uni, Q);
    CHECK(id.substitute({{"V", parse_poly("V", uni, Q)}}) == id);
}

TEST_CASE("weighted degree and top form") {
    auto Q = FieldSpec::rationals();
    auto uni = Universe::make({"t1", "v"}, {true, false});
    std::vector<std::optional<std::int64_t>> w{-1, 0};
    CHECK(parse_poly("t1*v^2", uni, Q).weighted_degree(w) ==
          std::optional<std::int64_t>(-1));
    CHECK(parse_poly("v^2 + t1*v", uni, Q).weighted_degree(w) ==
          std::optional<std::int64_t>(0));
    CHECK_FALSE(Polynomial::zero(Q, uni).weighted_degree(w).has_value());
    CHECK(parse_poly("v^2 + t1*v", uni, Q).top_form(w) == parse_poly("v^2", uni, Q));
    std::vector<std::optional<std::int64_t>> wpos{1, 0};
    CHECK(parse_poly("v^2 + t1*v", uni, Q).top_form(wpos) == parse_poly("t1*v", uni, Q));

    std::vector<std::optional<std::int64_t>> missing{std::nullopt, 0};
    CHECK_THROWS_AS(parse_poly("t1", uni, Q).weighted_degree(missing), Error);
}

TEST_CASE("weighted degree and top form are multiplicative") {
    auto uni = Universe::make({"t1", "t2", "v"}, {true, true, false});
    for (const auto& field : kFields) {
        Rng rng(23);
        std::vector<std::optional<std::int64_t>> w{-1, 2, 1};
        for (int i = 0; i < 60; ++i) {
            Polynomial f = random_polynomial(rng, field, uni, 3, 3);
            Polynomial g = random_polynomial(rng, field, uni, 3, 3);
            if (f.is_zero() || g.is_zero()) continue;
            CHECK(*(f * g).weighted_degree(w) == *f.weighted_degree(w) + *g.weighted_degree(w));
            CHECK((f * g).top_form(w) == f.top_form(w) * g.top_form(w));
        }
    }
}

TEST_CASE("exact division") {
    auto Q = FieldSpec::rationals();
    auto uni = Universe::make({"T1", "V"});
    Polynomial f = parse_poly("T1^2*V^3 + T1^3*V^2", uni, Q);
    Monomial m(uni->size());
    m[0] = 2;
    m[1] = 2;
    auto q = f.divide_exact_monomial(m);
    REQUIRE(q.has_value());
    CHECK(*q == parse_poly("V + T1", uni, Q));
    CHECK_FALSE(parse_poly("V + 1", uni, Q).divide_exact_monomial(m).has_value());

    Polynomial g = parse_poly("V^2 - 1", uni, Q);
    Polynomial h = parse_poly("V - 1", uni, Q);
    auto quot = g.divide_exact(h);
    REQUIRE(quot.has_value());
    CHECK(*quot == parse_poly("V + 1", uni, Q));
    CHECK_FALSE(parse_poly("V^2 + 1", uni, Q).divide_exact(h).has_value());
}

TEST_CASE("mismatched universes and fields are rejected") {
    auto Q = FieldSpec::rationals();
    auto u1 = Universe::make({"V"});
    auto u2 = Universe::make({"T1", "V"});
    CHECK_THROWS_AS(parse_poly("V", u1, Q) + parse_poly("V", u2, Q), Error);
    CHECK_THROWS_AS(
        parse_poly("V", u1, Q) + parse_poly("V", u1, FieldSpec::prime_field(5)),
        FieldMismatch);
    // Same content in different instances is fine.
    auto u1b = Universe::make({"V"});
    CHECK(parse_poly("V", u1, Q) + parse_poly("V", u1b, Q) == parse_poly("2*V", u1, Q));
}
