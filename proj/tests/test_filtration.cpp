#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dani/filtration.hpp"
#include "dani/sampling.hpp"

using namespace dani;

namespace {

RingSpecPtr ring_f(const std::string& f, std::vector<int> r = {2},
                   const FieldSpec& field = FieldSpec::rationals()) {
    return RingSpec::make(make_ring_config(field, Family::danielewski, std::move(r), f));
}

} // namespace

TEST_CASE("degrees of the generators") {
    auto ring = ring_f("V^2");
    Filtration f(ring, WeightVector{{-1}, 0});
    CHECK(f.e() == 0);
    CHECK(f.ell() == 2);
    CHECK(f.degree(ring->generator("t1")) == std::optional<std::int64_t>(-1));
    CHECK(f.degree(ring->generator("u")) == std::optional<std::int64_t>(2));
    CHECK(f.degree(ring->generator("v")) == std::optional<std::int64_t>(0));
    CHECK(f.degree(ring->parse_element("t1*u*v^2")) == std::optional<std::int64_t>(1));
    CHECK_FALSE(f.degree(ring->zero()).has_value());
}

TEST_CASE("ell formula against the Laurent embedding on random fixtures") {
    Rng rng(1001);
    for (int k = 0; k < 20; ++k) {
        std::vector<int> r{static_cast<int>(rng.range(1, 3)), static_cast<int>(rng.range(1, 3))};
        auto ring = ring_f("V^2 + T1*T2*V + T2", r);
        WeightVector w{{rng.range(-3, 3), rng.range(-3, 3)}, rng.range(-2, 2)};
        Filtration f(ring, w);
        CHECK(f.degree(ring->generator("u")) == std::optional<std::int64_t>(f.ell()));
    }
}

TEST_CASE("degree is multiplicative and leading form respects products") {
    auto ring = ring_f("V^2 + T1*V");
    Filtration f(ring, WeightVector{{-1}, 0});
    GradedRing gr = build_gr(f);
    Rng rng(1002);
    for (int i = 0; i < 120; ++i) {
        RingElement a = random_element(rng, ring, 3, 3);
        RingElement b = random_element(rng, ring, 3, 3);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(*f.degree(a * b) == *f.degree(a) + *f.degree(b));
        CHECK(leading_form(a * b, f, gr) == leading_form(a, f, gr) * leading_form(b, f, gr));
    }
}

TEST_CASE("build_gr instances") {
    auto ring = ring_f("V^2 + T1*V");
    Filtration fneg(ring, WeightVector{{-1}, 0});
    GradedRing gr = build_gr(fneg);
    CHECK(gr.f_top.str() == "V^2");
    CHECK(gr.monic_in_v);
    CHECK(gr.ring->element(gr.ring->relation()).is_zero());
    // t-bar^r u-bar equals the top form image inside gr.
    CHECK(gr.ring->parse_element("t1^2*u") == gr.ring->parse_element("v^2"));

    CHECK_THROWS_AS(build_gr(Filtration(ring, WeightVector{{1}, 0})), DivisibleTopForm);
    try {
        build_gr(Filtration(ring, WeightVector{{1}, 0}));
    } catch (const DivisibleTopForm& e) {
        CHECK(e.index == 1);
    }

    // Pure v-weight gives B(r, V^d).
    auto ring2 = ring_f("V^3 + T1*V + 1", {2});
    GradedRing gr2 = build_gr(Filtration(ring2, WeightVector{{0}, 1}));
    CHECK(gr2.f_top.str() == "V^3");
}

TEST_CASE("leading form examples") {
    auto ring = ring_f("V^2 + T1*V");
    Filtration f(ring, WeightVector{{-1}, 0});
    GradedRing gr = build_gr(f);
    CHECK(leading_form(ring->parse_element("v + t1"), f, gr) == gr.ring->parse_element("v"));
    CHECK(leading_form(ring->parse_element("t1^2*u"), f, gr) ==
          gr.ring->parse_element("v^2"));
    CHECK(leading_form(ring->generator("u"), f, gr) == gr.ring->generator("u"));
    CHECK(leading_form(ring->zero(), f, gr).is_zero());
}

TEST_CASE("homogenize the v-shift map") {
    auto ring = ring_f("V^2 + T1*V");
    Filtration f(ring, WeightVector{{-1}, 0});
    GradedRing gr = build_gr(f);
    ExpMap phi = mk_v_shift(ring);
    auto hom = homogenize_expmap(phi, f, gr,
                                 {ring->generator("t1"), ring->parse_element("t1^2 + t1")});
    CHECK(hom.theta_num == -2);
    CHECK(hom.theta_den == 1);
    ExpMap expected = mk_v_shift(gr.ring);
    for (const auto& gen : gr.ring->generators()) {
        CHECK(hom.map.image(gen) == expected.image(gen));
    }
    CHECK_FALSE(is_trivial(hom.map));
}

TEST_CASE("homogenizing the v-shift under the pure v-weight filtration") {
    auto ring = ring_f("V^2 + T1*V");
    Filtration f(ring, WeightVector{{0}, 1});
    GradedRing gr = build_gr(f);
    CHECK(gr.f_top.str() == "V^2");
    ExpMap phi = mk_v_shift(ring);
    auto hom = homogenize_expmap(phi, f, gr, {ring->generator("t1")});
    ExpMap expected = mk_v_shift(gr.ring);
    for (const auto& gen : gr.ring->generators()) {
        CHECK(hom.map.image(gen) == expected.image(gen));
    }
    CHECK(hom.theta_num == -1);
    CHECK(hom.theta_den == 1);
}

TEST_CASE("degree through the embedding equals the monomial-wise degree") {
    // The normal form carries the filtration degree term by term: the leading
    // form of x embeds onto the top layer of the embedding of x, which is
    // asserted inside leading_form; exercise it across mixed weights.
    auto ring = ring_f("V^2 + T1*V", {2});
    Rng rng(555);
    for (const WeightVector& w :
         {WeightVector{{-1}, 0}, WeightVector{{-2}, 1}, WeightVector{{0}, 1}}) {
        Filtration f(ring, w);
        GradedRing gr = build_gr(f);
        auto wts = f.nf_weights();
        wts[*ring->nf_universe()->index_of("u")] = f.ell();
        for (int i = 0; i < 40; ++i) {
            RingElement x = random_element(rng, ring, 4, 4);
            if (x.is_zero()) continue;
            RingElement rho = leading_form(x, f, gr);
            CHECK_FALSE(rho.is_zero());
            CHECK(f.degree(x) == rho.nf().into(ring->nf_universe()).weighted_degree(wts));
        }
    }
}

TEST_CASE("homogenizing an already homogeneous map returns it") {
    auto ring = ring_f("V^2");
    Filtration f(ring, WeightVector{{-1}, 0});
    GradedRing gr = build_gr(f);
    ExpMap phi = mk_v_shift(ring);
    auto hom = homogenize_expmap(phi, f, gr);
    for (const auto& gen : gr.ring->generators()) {
        CHECK(hom.map.image(gen) == phi.image(gen).into(hom.map.image_universe()));
    }
}

TEST_CASE("homogenize rejects the identity map") {
    auto ring = ring_f("V^2");
    Filtration f(ring, WeightVector{{-1}, 0});
    GradedRing gr = build_gr(f);
    ExpMap id = ExpMap::make(ring, {});
    check_exponential(id);
    CHECK_THROWS_AS(homogenize_expmap(id, f, gr), CandidateFailed);
}

TEST_CASE("weight vector parsing") {
    WeightVector w = WeightVector::parse("-1,2;3");
    CHECK(w.t_weights == std::vector<std::int64_t>{-1, 2});
    CHECK(w.v_weight == 3);
    CHECK(w.str() == "-1,2;3");
    WeightVector w2 = WeightVector::parse("0");
    CHECK(w2.v_weight == 0);
    CHECK_THROWS_AS(Filtration(ring_f("V^2"), WeightVector{{1, 2}, 0}), Error);
}
