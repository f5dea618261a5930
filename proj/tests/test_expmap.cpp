#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dani/expmap.hpp"
#include "dani/sampling.hpp"

using namespace dani;

namespace {

RingSpecPtr b_ring(const FieldSpec& field, std::vector<int> r, const std::string& f) {
    return RingSpec::make(make_ring_config(field, Family::danielewski, std::move(r), f));
}

const auto kFields = {FieldSpec::rationals(), FieldSpec::prime_field(2),
                      FieldSpec::prime_field(3), FieldSpec::prime_field(5)};

} // namespace

TEST_CASE("identity map passes trivially") {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2");
    ExpMap id = ExpMap::make(ring, {});
    CHECK(check_exponential(id).ok());
    CHECK(is_trivial(id));
}

TEST_CASE("v-shift over every small field") {
    for (const auto& field : kFields) {
        auto ring = b_ring(field, {2, 2}, "V^2 + T1*V + 1");
        ExpMap phi = mk_v_shift(ring);
        CHECK(phi.verified());
        CHECK_FALSE(is_trivial(phi));
        CHECK(is_invariant(phi, ring->generator("t1")));
        CHECK(is_invariant(phi, ring->generator("t2")));
        CHECK(is_invariant(phi, ring->parse_element("t1^3*t2 - t2^2")));
        CHECK_FALSE(is_invariant(phi, ring->generator("v")));
    }
}

TEST_CASE("v-shift images match the closed form") {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2");
    ExpMap phi = mk_v_shift(ring);
    CHECK(phi.image("v") == ring->parse_over("v + t1^2*W", {"W"}));
    CHECK(phi.image("u") == ring->parse_over("u + 2*v*W + t1^2*W^2", {"W"}));
    auto ring2 = b_ring(FieldSpec::prime_field(2), {2}, "V^2");
    CHECK(mk_v_shift(ring2).image("u") == ring2->parse_over("u + t1^2*W^2", {"W"}));
}

TEST_CASE("well-definedness catches the broken shift") {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2");
    ExpMap phi = ExpMap::parse(ring, {{"v", "v + W"}});
    VerifyReport report = check_exponential(phi);
    REQUIRE_FALSE(report.ok());
    bool well_def_failed = false;
    for (const auto& f : report.failures) {
        if (f.axiom == "well-definedness") {
            well_def_failed = true;
            CHECK(f.detail == "-2*v*W - W^2");
        }
    }
    CHECK(well_def_failed);
    CHECK_FALSE(phi.verified());
}

TEST_CASE("counit failures are reported with the witness") {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2");
    ExpMap phi = ExpMap::parse(ring, {{"v", "v + 1 + W"}});
    VerifyReport report = check_exponential(phi);
    bool counit_failed = false;
    for (const auto& f : report.failures) {
        if (f.axiom == "counit" && f.generator == "v") counit_failed = true;
    }
    CHECK(counit_failed);
}

TEST_CASE("coassociativity failure is detected") {
    // v -> v + v W is a counit-correct, well-defined-on-nothing candidate:
    // use the free variable w so the relation stays intact, and break (ii).
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2")->adjoin({"w"});
    ExpMap phi = ExpMap::parse(ring, {{"w", "w + w*W"}});
    VerifyReport report = check_exponential(phi);
    bool coassoc_failed = false;
    for (const auto& f : report.failures) {
        if (f.axiom == "coassociativity" && f.generator == "w") coassoc_failed = true;
    }
    CHECK(coassoc_failed);
}

TEST_CASE("translation on an adjoined generator") {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2")->adjoin({"w"});
    ExpMap phi = mk_translation(ring, "w");
    CHECK(phi.verified());
    CHECK(phi.image("w") == ring->parse_over("w + W", {"W"}));
    CHECK(is_invariant(phi, ring->parse_element("t1*u + v^3 - 2")));
    CHECK_FALSE(is_invariant(phi, ring->generator("w")));
    CHECK_FALSE(is_trivial(phi));
    CHECK_THROWS_AS(mk_translation(ring, "v"), Error);
    CHECK_THROWS_AS(mk_translation(ring, "nope"), UnknownVariable);
}

TEST_CASE("invariant sets are closed under products and sums") {
    auto ring = b_ring(FieldSpec::prime_field(3), {2}, "V^2 + T1*V");
    ExpMap phi = mk_v_shift(ring);
    Rng rng(77);
    auto uni = Universe::make({"t1"});
    for (int i = 0; i < 30; ++i) {
        Polynomial p = random_polynomial(rng, ring->field(), uni, 3, 4);
        Polynomial q = random_polynomial(rng, ring->field(), uni, 3, 4);
        RingElement a = ring->element(p.into(ring->nf_universe()));
        RingElement b = ring->element(q.into(ring->nf_universe()));
        CHECK(is_invariant(phi, a * b));
        CHECK(is_invariant(phi, a + b));
    }
}

TEST_CASE("apply respects evaluation at W = 0") {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2 + T1*V");
    ExpMap phi = mk_v_shift(ring);
    Rng rng(78);
    for (int i = 0; i < 30; ++i) {
        RingElement x = random_element(rng, ring, 4, 4);
        Polynomial img = phi.apply(x);
        Polynomial at0 = img.substitute({{"W", Polynomial::zero(ring->field(), ring->nf_universe())}},
                                        ring->nf_universe());
        CHECK(ring->normalize_raw(at0) == x.nf());
    }
}

TEST_CASE("unit row map on B((1,2), V^2)") {
    auto ring = b_ring(FieldSpec::rationals(), {1, 2}, "V^2");
    UnitRowMap row = mk_unit_row(ring, 0);
    CHECK(row.n == 2);
    CHECK(row.map.image("t1") == ring->parse_over("t1 + 2*v*W + t2^2*u*W^2", {"W"}));
    CHECK(row.map.image("v") == ring->parse_over("v + t2^2*u*W", {"W"}));
    CHECK(row.map.image("t2") == ring->parse_over("t2", {"W"}));
    CHECK(row.map.image("u") == ring->parse_over("u", {"W"}));
    CHECK(is_invariant(row.map, ring->generator("u")));
    CHECK(is_invariant(row.map, ring->generator("t2")));
    CHECK_FALSE(is_invariant(row.map, ring->generator("t1")));
    CHECK(row.invariant_combination == ring->parse_element("t2^2*u"));
    // The relation maps to zero (well-definedness part of the axioms).
    CHECK(row.map.verified());
}

TEST_CASE("unit row map in characteristic 2 and with F_j != 0") {
    auto ring = b_ring(FieldSpec::prime_field(2), {1, 2}, "V^2");
    UnitRowMap row = mk_unit_row(ring, 0);
    CHECK(row.map.image("t1") == ring->parse_over("t1 + t2^2*u*W^2", {"W"}));
    CHECK(row.map.verified());

    // F with a genuine t_j-part exercises the beta coefficients.
    auto ring2 = b_ring(FieldSpec::rationals(), {1, 2}, "V^2 + T1*V");
    UnitRowMap row2 = mk_unit_row(ring2, 0);
    CHECK(row2.map.verified());
    CHECK(is_invariant(row2.map, row2.invariant_combination));
    CHECK_FALSE(is_trivial(row2.map));

    CHECK_THROWS_AS(mk_unit_row(ring2, 1), NotUnitExponent);
}

TEST_CASE("unit row for m = 1 degenerates to the localized surface case") {
    auto ring = b_ring(FieldSpec::rationals(), {1}, "V^2");
    UnitRowMap row = mk_unit_row(ring, 0);
    CHECK(row.map.verified());
    CHECK(is_invariant(row.map, ring->generator("u")));
    CHECK_FALSE(is_invariant(row.map, ring->generator("t1")));
}

TEST_CASE("images of unknown generators are rejected") {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2");
    CHECK_THROWS_AS(ExpMap::parse(ring, {{"q", "q + W"}}), Error);
}
