#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dani/polynomial.hpp"
#include "dani/sampling.hpp"

using namespace dani;

TEST_CASE("openmp kernel matches the serial reference on random inputs") {
    auto uni = Universe::make({"t1", "t2", "u", "v"});
    for (const auto& field : {FieldSpec::rationals(), FieldSpec::prime_field(5)}) {
        Rng rng(1);
        for (int i = 0; i < 40; ++i) {
            Polynomial a = random_polynomial(rng, field, uni, 24, 6);
            Polynomial b = random_polynomial(rng, field, uni, 24, 6);
            auto serial = kernels::mul_serial(a.terms(), b.terms());
            auto parallel = kernels::mul_openmp(a.terms(), b.terms());
            CHECK(serial == parallel);
        }
    }
}

TEST_CASE("dispatch threshold produces identical results on large inputs") {
    auto uni = Universe::make({"t1", "t2", "v"});
    Rng rng(2);
    Polynomial a = random_polynomial(rng, FieldSpec::prime_field(5), uni, 200, 10);
    Polynomial b = random_polynomial(rng, FieldSpec::prime_field(5), uni, 200, 10);
    REQUIRE(a.num_terms() * b.num_terms() >= kernels::parallel_pair_cutoff());
    auto serial = kernels::mul_serial(a.terms(), b.terms());
    auto automatic = kernels::mul_auto(a.terms(), b.terms());
    CHECK(serial == automatic);
}

TEST_CASE("forcing the parallel path through the cutoff") {
    auto uni = Universe::make({"v", "t1"});
    auto& cutoff = kernels::parallel_pair_cutoff();
    std::size_t saved = cutoff;
    cutoff = 1;
    Rng rng(3);
    Polynomial a = random_polynomial(rng, FieldSpec::prime_field(7), uni, 8, 12);
    Polynomial b = random_polynomial(rng, FieldSpec::prime_field(7), uni, 8, 12);
    CHECK(a * b == Polynomial(a) * b);
    CHECK((a * b).terms() == kernels::mul_serial(a.terms(), b.terms()));
    cutoff = saved;
}

TEST_CASE("empty and degenerate inputs") {
    auto uni = Universe::make({"v"});
    Polynomial zero = Polynomial::zero(FieldSpec::rationals(), uni);
    Polynomial one = Polynomial::constant(FieldSpec::rationals(), uni, 1);
    CHECK(kernels::mul_serial(zero.terms(), one.terms()).empty());
    CHECK(kernels::mul_openmp(zero.terms(), one.terms()).empty());
    CHECK(kernels::mul_openmp(one.terms(), one.terms()).size() == 1);
    // Cancellation inside the accumulation: (v + 1)(v - 1) has no v-term.
    auto Q = FieldSpec::rationals();
    Polynomial v = Polynomial::variable(Q, uni, "v");
    Polynomial p = v + one;
    Polynomial q = v - one;
    auto prod = kernels::mul_openmp(p.terms(), q.terms());
    CHECK(prod.size() == 2);
}
