#include "dani/suite.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "dani/asanuma.hpp"
#include "dani/expmap.hpp"
#include "dani/filtration.hpp"
#include "dani/parser.hpp"
#include "dani/ring.hpp"
#include "dani/sampling.hpp"
#include "dani/stable_iso.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dani {

std::string case_status_name(CaseStatus s) {
    switch (s) {
        case CaseStatus::pass: return "pass";
        case CaseStatus::fail: return "fail";
        default: return "expected-fail";
    }
}

bool SuiteReport::all_passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
    std::size_t n = 0;
    for (const auto& c : cases) {
        if (c.status == CaseStatus::fail) ++n;
    }
    return n;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {

struct CaseLog {
    std::ostringstream out;
    bool ok = true;
    bool expected_fail = false;

    void check(const std::string& what, bool cond) {
        out << (cond ? "ok   " : "FAIL ") << what << "\n";
        ok = ok && cond;
    }
    void note(const std::string& text) { out << "     " << text << "\n"; }
};

using CaseFn = std::function<void(CaseLog&)>;

struct Fixture {
    std::string id;
    std::string anchor;
    CaseFn run;
};

RingSpecPtr b_ring(const FieldSpec& field, std::vector<int> r, const std::string& f_text) {
    return RingSpec::make(make_ring_config(field, Family::danielewski, std::move(r), f_text));
}

// ---- fixtures -------------------------------------------------------------

void fx_weighted_degree(CaseLog& log) {
    auto Q = FieldSpec::rationals();
    auto uni = Universe::make({"t1", "v"}, {true, false});
    std::vector<std::optional<std::int64_t>> w{-1, 0};
    Polynomial f = parse_poly("t1*v^2", uni, Q);
    log.check("deg(t1*v^2) = -1", f.weighted_degree(w) == std::optional<std::int64_t>(-1));
    Polynomial g = parse_poly("v^2 + t1*v", uni, Q);
    log.check("deg(v^2 + t1*v) = 0", g.weighted_degree(w) == std::optional<std::int64_t>(0));
    log.check("deg(0) = -infinity",
              !Polynomial::zero(Q, uni).weighted_degree(w).has_value());
}

void fx_top_form(CaseLog& log) {
    auto Q = FieldSpec::rationals();
    auto uni = presentation_universe(Family::danielewski, 1);
    Polynomial f = parse_poly("V^2 + T1*V", uni, Q);
    std::vector<std::optional<std::int64_t>> wneg{-1, 0}, wpos{1, 0};
    log.check("top form at (-1;0) is V^2", f.top_form(wneg) == parse_poly("V^2", uni, Q));
    log.check("top form at (1;0) is T1*V", f.top_form(wpos) == parse_poly("T1*V", uni, Q));
    std::vector<std::optional<std::int64_t>> wv0{7, 0};
    Polynomial vd = parse_poly("V^5", uni, Q);
    log.check("pure power V^d is its own top form", vd.top_form(wv0) == vd);
}

void fx_formal_derivative(CaseLog& log) {
    auto Q = FieldSpec::rationals();
    auto uni = Universe::make({"A", "V"});
    Polynomial f = parse_poly("V^3 + A*V", uni, Q);
    log.check("(V^3 + A V)_V = 3V^2 + A",
              f.derivative("V") == parse_poly("3*V^2 + A", uni, Q));
    auto F3 = FieldSpec::prime_field(3);
    log.check("(V^3)_V = 0 over F3",
              parse_poly("V^3", uni, F3).derivative("V").is_zero());
    log.check("(V^2 - 1)_V = 2V",
              parse_poly("V^2 - 1", uni, Q).derivative("V") == parse_poly("2*V", uni, Q));
}

void fx_parser_roundtrip(CaseLog& log) {
    Rng rng(20240901);
    auto uni = Universe::make({"T1", "T2", "U", "V"});
    std::vector<FieldSpec> fields{FieldSpec::rationals(), FieldSpec::prime_field(5)};
    int failures = 0;
    for (int k = 0; k < 10000; ++k) {
        const auto& field = fields[static_cast<std::size_t>(k % 2)];
        Polynomial f = random_polynomial(rng, field, uni, 6, 5);
        Polynomial g = parse_poly(print_poly(f), uni, field);
        if (g != f) ++failures;
    }
    log.check("10000 print/parse round trips", failures == 0);
}

void fx_config_errors(CaseLog& log) {
    bool monic_error = false;
    try {
        make_ring_config(FieldSpec::rationals(), Family::danielewski, {2}, "T1*V");
    } catch (const ConfigError& e) {
        monic_error = std::string(e.what()).find("monic") != std::string::npos;
    }
    log.check("F = T1*V rejected as not monic in V", monic_error);

    bool r_error = false;
    try {
        make_ring_config(FieldSpec::rationals(), Family::asanuma, {1}, "Z + T");
    } catch (const ConfigError&) {
        r_error = true;
    }
    log.check("asanuma r = [1] rejected", r_error);
}

void fx_normalize_rewrite(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2");
    RingElement x = ring->parse_element("T1^3*U^2");
    log.check("t1^3 u^2 normalizes to t1 u v^2", x == ring->parse_element("t1*u*v^2"));
    log.check("normal form string", x.str() == "t1*u*v^2");
    RingElement rel = ring->element(ring->relation());
    log.check("defining relation normalizes to 0", rel.is_zero());
    // Round trip through the Laurent model.
    auto back = ring->laurent_to_nf(x.laurent());
    log.check("laurent_to_nf(laurent(x)) = x", back && *back == x.nf());
    log.check("v^3 is already normal", ring->parse_element("v^3").str() == "v^3");
}

void fx_asanuma_ring(CaseLog& log) {
    auto cfg = make_ring_config(FieldSpec::prime_field(5), Family::asanuma, {2, 2}, "1 + Z^2");
    auto ring = RingSpec::make(cfg);
    log.check("asanuma B(2,2; 1+Z^2) over F5 constructed", ring != nullptr);
    RingElement x = ring->parse_element("X1^2*X2^2*Y");
    log.check("x1^2 x2^2 y rewrites to 1 + z^2", x == ring->parse_element("1 + z^2"));
}

void fx_laurent_embed(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2");
    auto lau = ring->laurent_universe();
    Polynomial expect(ring->field(), lau);
    {
        Monomial m(lau->size());
        m[*lau->index_of("v")] = 3;
        m[*lau->index_of("t1")] = -1;
        expect.add_term(m, FieldElem::one(ring->field()));
    }
    log.check("embed(t1 u v) = v^3 t1^-1",
              ring->parse_element("t1*u*v").laurent() == expect);
    RingElement tv = ring->parse_element("t1 + v^2");
    log.check("t,v-polynomials embed as themselves",
              tv.laurent() == tv.nf().into(lau));
}

void run_oracle_agreement(CaseLog& log, const FieldSpec& field) {
    auto ring = b_ring(field, {2}, "V^2");
    Rng rng(777);
    int n = 1000;
    int mismatches = 0;
    std::vector<RingElement> elems;
    elems.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) elems.push_back(random_element(rng, ring, 6, 6));
    for (int i = 0; i + 1 < n; i += 2) {
        const auto& a = elems[static_cast<std::size_t>(i)];
        RingElement b = elems[static_cast<std::size_t>(i + 1)];
        if (i % 4 == 0) {
            // Make half the pairs equal by adding a multiple of the relation.
            Polynomial noise = random_polynomial(rng, field, ring->nf_universe(), 3, 3);
            b = ring->element(a.nf() + ring->relation() * noise);
        }
        bool nf_eq = a == b;
        bool lau_eq = laurent_eq(a, b);
        if (nf_eq != lau_eq) ++mismatches;
        if (i % 4 == 0 && !nf_eq) ++mismatches;
    }
    log.check("normal-form equality agrees with the Laurent oracle over " + field.str(),
              mismatches == 0);
}

void fx_oracle_q(CaseLog& log) { run_oracle_agreement(log, FieldSpec::rationals()); }
void fx_oracle_f5(CaseLog& log) { run_oracle_agreement(log, FieldSpec::prime_field(5)); }

void fx_filt_degrees(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2");
    Filtration f(ring, WeightVector{{-1}, 0});
    log.check("deg t1 = -1", f.degree(ring->generator("t1")) == std::optional<std::int64_t>(-1));
    log.check("ell = 2 and deg u = 2",
              f.ell() == 2 && f.degree(ring->generator("u")) == std::optional<std::int64_t>(2));
    log.check("deg t1 u v^2 = 1",
              f.degree(ring->parse_element("t1*u*v^2")) == std::optional<std::int64_t>(1));
}

void fx_filt_ell_random(CaseLog& log) {
    Rng rng(4242);
    bool ok = true;
    for (int k = 0; k < 20; ++k) {
        int m = static_cast<int>(rng.range(1, 2));
        std::vector<int> r;
        for (int i = 0; i < m; ++i) r.push_back(static_cast<int>(rng.range(1, 3)));
        // Random monic F of V-degree 2..3 with small t-coefficients.
        int d = static_cast<int>(rng.range(2, 3));
        auto uni = presentation_universe(Family::danielewski, m);
        std::ostringstream fs;
        fs << "V^" << d;
        for (int j = 0; j < d; ++j) {
            long long c = rng.range(-2, 2);
            if (c == 0) continue;
            fs << (c > 0 ? " + " : " - ") << (c > 0 ? c : -c);
            for (int i = 0; i < m; ++i) {
                long long e = rng.range(0, 2);
                if (e > 0) fs << "*T" << (i + 1) << "^" << e;
            }
            if (j > 0) fs << "*V^" << j;
        }
        auto ring = b_ring(FieldSpec::rationals(), r, fs.str());
        WeightVector w;
        for (int i = 0; i < m; ++i) w.t_weights.push_back(rng.range(-3, 3));
        w.v_weight = rng.range(-2, 2);
        Filtration f(ring, w);
        auto du = f.degree(ring->generator("u"));
        if (!(du && *du == f.ell())) ok = false;
    }
    log.check("deg u = e - sum r_i e_i on 20 random (F, w) fixtures", ok);
}

void fx_filt_multiplicative(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2 + T1*V");
    Filtration f(ring, WeightVector{{-1}, 0});
    Rng rng(9090);
    bool ok = true;
    for (int k = 0; k < 500; ++k) {
        RingElement a = random_element(rng, ring, 3, 3);
        RingElement b = random_element(rng, ring, 3, 3);
        if (a.is_zero() || b.is_zero()) continue;
        auto da = f.degree(a), db = f.degree(b), dab = f.degree(a * b);
        if (!(dab && *dab == *da + *db)) ok = false;
    }
    log.check("filtration degree is multiplicative on 500 random pairs", ok);
}

void fx_build_gr(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2 + T1*V");
    Filtration f(ring, WeightVector{{-1}, 0});
    GradedRing gr = build_gr(f);
    auto uni = presentation_universe(Family::danielewski, 1);
    log.check("gr(B) for w = (-1;0) is B((2), V^2)",
              gr.f_top == parse_poly("V^2", uni, ring->field()));
    RingElement rel = gr.ring->element(gr.ring->relation());
    log.check("relation of eq-type holds in gr", rel.is_zero());

    bool divisible_raised = false;
    try {
        Filtration fpos(ring, WeightVector{{1}, 0});
        build_gr(fpos);
    } catch (const DivisibleTopForm& e) {
        divisible_raised = e.index == 1;
    }
    log.check("w = (1;0) raises DivisibleTopForm(1)", divisible_raised);
}

void fx_gr_pure_v(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2 + T1*V + 1");
    Filtration f(ring, WeightVector{{0}, 1});
    GradedRing gr = build_gr(f);
    auto uni = presentation_universe(Family::danielewski, 1);
    log.check("w = (0;1) gives gr = B(r, V^d)",
              gr.f_top == parse_poly("V^2", uni, ring->field()));
}

void fx_leading_form(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2 + T1*V");
    Filtration f(ring, WeightVector{{-1}, 0});
    GradedRing gr = build_gr(f);
    RingElement x = ring->parse_element("v + t1");
    log.check("rho(v + t1) = v", leading_form(x, f, gr) == gr.ring->parse_element("v"));
    // rho of t1^2 u (= F in the ring) is the image of the top form.
    RingElement Fel = ring->parse_element("t1^2*u");
    log.check("rho(t^r u) = F_top image",
              leading_form(Fel, f, gr) == gr.ring->parse_element("v^2"));
    Rng rng(31337);
    bool ok = true;
    for (int k = 0; k < 200; ++k) {
        RingElement a = random_element(rng, ring, 3, 3);
        RingElement b = random_element(rng, ring, 3, 3);
        if (a.is_zero() || b.is_zero()) continue;
        if (leading_form(a * b, f, gr) != leading_form(a, f, gr) * leading_form(b, f, gr))
            ok = false;
    }
    log.check("rho(ab) = rho(a) rho(b) on 200 random pairs", ok);
}

void fx_homogenize(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2 + T1*V");
    Filtration f(ring, WeightVector{{-1}, 0});
    GradedRing gr = build_gr(f);
    ExpMap phi = mk_v_shift(ring);
    std::vector<RingElement> witnesses{ring->generator("t1"), ring->parse_element("t1^2"),
                                       ring->parse_element("3*t1^3 - t1")};
    auto hom = homogenize_expmap(phi, f, gr, witnesses);
    ExpMap expected = mk_v_shift(gr.ring);
    bool same = true;
    for (const auto& gen : gr.ring->generators()) {
        if (hom.map.image(gen) != expected.image(gen)) same = false;
    }
    log.check("v-shift homogenizes to the v-shift on gr", same);
    log.check("indeterminate weight is -2", hom.theta_num == -2 && hom.theta_den == 1);

    // A map that is already homogeneous comes back unchanged.
    auto ring0 = b_ring(FieldSpec::rationals(), {2}, "V^2");
    Filtration f0(ring0, WeightVector{{-1}, 0});
    GradedRing gr0 = build_gr(f0);
    ExpMap phi0 = mk_v_shift(ring0);
    auto hom0 = homogenize_expmap(phi0, f0, gr0);
    bool same0 = true;
    for (const auto& gen : gr0.ring->generators()) {
        if (hom0.map.image(gen) != phi0.image(gen).into(hom0.map.image_universe()))
            same0 = false;
    }
    log.check("a homogeneous map homogenizes to itself", same0);
}

void fx_vshift_images(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2");
    ExpMap phi = mk_v_shift(ring);
    Polynomial expect = ring->parse_over("u + 2*v*W + t1^2*W^2", {"W"});
    log.check("phi(u) = u + 2vW + t1^2 W^2 over Q", phi.image("u") == expect);
    log.check("t1 invariant", is_invariant(phi, ring->generator("t1")));
    log.check("v not invariant", !is_invariant(phi, ring->generator("v")));

    auto ring2 = b_ring(FieldSpec::prime_field(2), {2}, "V^2");
    ExpMap phi2 = mk_v_shift(ring2);
    Polynomial expect2 = ring2->parse_over("u + t1^2*W^2", {"W"});
    log.check("phi(u) = u + t1^2 W^2 over F2", phi2.image("u") == expect2);
}

void fx_welldef_failure(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2");
    ExpMap phi = ExpMap::parse(ring, {{"v", "v + W"}});
    auto report = check_exponential(phi);
    bool found = false;
    for (const auto& fail : report.failures) {
        if (fail.axiom == "well-definedness" &&
            fail.detail.find("2*v*W") != std::string::npos &&
            fail.detail.find("W^2") != std::string::npos)
            found = true;
    }
    log.check("v -> v + W, u -> u fails well-definedness with -2vW - W^2",
              !report.ok() && found);
    log.note(report.str());
}

void fx_translation(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {2}, "V^2")->adjoin({"w"});
    ExpMap phi = mk_translation(ring, "w");
    log.check("translation passes the axioms", phi.verified());
    log.check("elements of B are invariant",
              is_invariant(phi, ring->parse_element("t1*u + v^3")));
    log.check("w is not invariant", !is_invariant(phi, ring->generator("w")));
    log.check("identity map is trivial",
              is_trivial(ExpMap::make(ring, {})) && !is_trivial(phi));
}

void fx_unit_row(CaseLog& log) {
    auto ring = b_ring(FieldSpec::rationals(), {1, 2}, "V^2");
    UnitRowMap row = mk_unit_row(ring, 0);
    log.check("phi(t1) = t1 + 2vW + u t2^2 W^2",
              row.map.image("t1") == ring->parse_over("t1 + 2*v*W + u*t2^2*W^2", {"W"}));
    log.check("phi(v) = v + u t2^2 W",
              row.map.image("v") == ring->parse_over("v + u*t2^2*W", {"W"}));
    log.check("phi(t2) = t2 and phi(u) = u",
              row.map.image("t2") == ring->parse_over("t2", {"W"}) &&
                  row.map.image("u") == ring->parse_over("u", {"W"}));
    log.check("u is invariant", is_invariant(row.map, ring->generator("u")));
    log.check("clearing exponent n = 2", row.n == 2);

    auto ring2 = b_ring(FieldSpec::prime_field(2), {1, 2}, "V^2");
    UnitRowMap row2 = mk_unit_row(ring2, 0);
    log.check("over F2 phi(t1) = t1 + u t2^2 W^2 and the axioms still pass",
              row2.map.image("t1") == ring2->parse_over("t1 + u*t2^2*W^2", {"W"}));
}

void fx_bezout(CaseLog& log) {
    auto Q = FieldSpec::rationals();
    auto uni = presentation_universe(Family::danielewski, 1);
    Polynomial F = parse_poly("V^2 - 1", uni, Q);
    BezoutPair pair = bezout_cofactors(F);
    log.check("cofactors of V^2 - 1 are (-1, V/2)",
              pair.g1 == parse_poly("-1", uni, Q) && pair.g2 == parse_poly("1/2*V", uni, Q));
    log.check("identity check", verify_cofactors(F, pair));

    Polynomial F3 = parse_poly("V^3 + V", uni, Q);
    log.check("cofactors exist for V^3 + V", verify_cofactors(F3, bezout_cofactors(F3)));
}

void fx_bezout_f2(CaseLog& log) {
    auto F2 = FieldSpec::prime_field(2);
    auto uni = presentation_universe(Family::danielewski, 1);
    Polynomial F = parse_poly("V^2 - 1", uni, F2);
    try {
        bezout_cofactors(F);
        log.check("NotCoprime raised for V^2 - 1 over F2", false);
    } catch (const NotCoprime& e) {
        log.note(e.what());
        log.expected_fail = true; // the hypothesis (F, F_V) = (1) fails here
    }
}

void fx_verify_cofactors(CaseLog& log) {
    auto Q = FieldSpec::rationals();
    auto uni = presentation_universe(Family::danielewski, 1);
    Polynomial F = parse_poly("V^2 - 1", uni, Q);
    log.check("(V^2-1, (-1, V/2)) verifies",
              verify_cofactors(F, {parse_poly("-1", uni, Q), parse_poly("1/2*V", uni, Q)}));
    log.check("(V^2-1, (1, V)) does not",
              !verify_cofactors(F, {parse_poly("1", uni, Q), parse_poly("V", uni, Q)}));
    // Reduction compatibility: the rational cofactors reduce to F3 cofactors.
    auto F3 = FieldSpec::prime_field(3);
    Polynomial Fm = parse_poly("V^2 - 1", uni, F3);
    log.check("Q cofactors reduced mod 3 stay cofactors",
              verify_cofactors(Fm, {parse_poly("2", uni, F3), parse_poly("2*V", uni, F3)}));
}

void fx_v1_u1(CaseLog& log) {
    auto Q = FieldSpec::rationals();
    auto E = b_ring(Q, {2}, "V^2 - 1")->adjoin({"w"});
    ReductionFrame frame = build_v1_u1(E, 0);
    log.check("v1 = v + t1 w", frame.v1 == E->parse_element("v + t1*w"));
    log.check("u1 = t1 u + 2vw + t1 w^2",
              frame.u1 == E->parse_element("t1*u + 2*v*w + t1*w^2"));
    log.check("b = w^2", frame.b == E->parse_element("w^2"));

    auto E2 = b_ring(FieldSpec::prime_field(2), {2}, "V^2 - 1")->adjoin({"w"});
    ReductionFrame frame2 = build_v1_u1(E2, 0);
    log.check("over F2: u1 = t1 u + t1 w^2 and the product formula still holds",
              frame2.u1 == E2->parse_element("t1*u + t1*w^2"));

    auto E22 = b_ring(Q, {2, 2}, "V^2 - 1")->adjoin({"w"});
    ReductionFrame frame22 = build_v1_u1(E22, 0);
    log.check("m = 2: v1 = v + t1 t2^2 w", frame22.v1 == E22->parse_element("v + t1*t2^2*w"));
}

void fx_wtilde(CaseLog& log) {
    auto Q = FieldSpec::rationals();
    auto uni = presentation_universe(Family::danielewski, 1);
    auto E = b_ring(Q, {2}, "V^2 - 1")->adjoin({"w"});
    BezoutPair pair{parse_poly("-1", uni, Q), parse_poly("1/2*V", uni, Q)};
    ReductionFrame frame = build_v1_u1(E, 0);
    RingElement wt = build_wtilde(E, 0, frame, pair);
    RingElement expect =
        E->parse_element("-1/2*u*v - 3/2*t1*u*w - 3/2*v*w^2 - 1/2*t1*w^3");
    log.check("wtilde = -1/2 (uv + 3 t1 u w + 3 v w^2 + t1 w^3)", wt == expect);

    // phi(wtilde) = wtilde - W under the stiso exponential map.
    IsoCertificate link = build_iso_certificate(
        make_ring_config(Q, Family::danielewski, {2}, "V^2 - 1"), pair);
    ExpMap phi = ExpMap::parse(E, link.exp_images);
    check_exponential(phi);
    auto extw = E->nf_universe()->extended({"W"});
    log.check("phi(wtilde) = wtilde - W",
              phi.apply(wt) ==
                  wt.nf().into(extw) - Polynomial::variable(Q, extw, "W"));

    auto F3 = FieldSpec::prime_field(3);
    auto E3 = b_ring(F3, {2}, "V^2 - 1")->adjoin({"w"});
    auto uni3 = presentation_universe(Family::danielewski, 1);
    BezoutPair pair3{parse_poly("2", uni3, F3), parse_poly("2*V", uni3, F3)};
    ReductionFrame frame3 = build_v1_u1(E3, 0);
    RingElement wt3 = build_wtilde(E3, 0, frame3, pair3);
    log.check("wtilde computes exactly over F3 (g2 = 2V)", !wt3.is_zero());
}

void run_chain_case(CaseLog& log, const FieldSpec& field, const std::string& f_text,
                    std::vector<int> r, std::vector<int> s, std::size_t expect_links) {
    RingConfig cfg = make_ring_config(field, Family::danielewski, std::move(r), f_text);
    BezoutPair pair = obtain_cofactors(cfg);
    ChainCertificate cert = chain_reduce(cfg, pair, s);
    log.check("chain has the expected number of links", cert.links.size() == expect_links);
    std::string text = serialize_certificate(cert);
    ChainCertificate parsed = parse_certificate(text);
    auto verification = verify_certificate(parsed);
    std::size_t entries = verification.all().size();
    log.check("serialized certificate re-verifies (" + std::to_string(entries) + " entries)",
              verification.ok);
    log.check("serialization round-trips byte-identically",
              serialize_certificate(parsed).substr(0, text.find("check")) ==
                  text.substr(0, text.find("check")));
}

void fx_cert_2_to_1(CaseLog& log) {
    run_chain_case(log, FieldSpec::rationals(), "V^2 - 1", {2}, {1}, 1);
}

void fx_cert_3_to_1(CaseLog& log) {
    run_chain_case(log, FieldSpec::rationals(), "V^2 - 1", {3}, {1}, 2);
}

void fx_cert_22_to_11(CaseLog& log) {
    run_chain_case(log, FieldSpec::rationals(), "V^2 - 1", {2, 2}, {1, 1}, 2);
}

void fx_cert_deg3(CaseLog& log) {
    run_chain_case(log, FieldSpec::rationals(), "V^3 + V", {2}, {1}, 1);
}

void fx_cert_identity(CaseLog& log) {
    RingConfig cfg = make_ring_config(FieldSpec::rationals(), Family::danielewski, {2},
                                      "V^2 - 1");
    BezoutPair pair = obtain_cofactors(cfg);
    ChainCertificate cert = chain_reduce(cfg, pair, {2});
    log.check("r = s gives the empty chain", cert.links.empty());
    auto verification = verify_certificate(parse_certificate(serialize_certificate(cert)));
    log.check("identity certificate verifies", verification.ok);
}

void fx_cert_f3(CaseLog& log) {
    run_chain_case(log, FieldSpec::prime_field(3), "V^2 - 1", {2}, {1}, 1);
}

void fx_classify(CaseLog& log) {
    auto Q = FieldSpec::rationals();
    auto r1 = RingSpec::make(make_ring_config(Q, Family::asanuma, {2}, "1 + Z^2"));
    log.check("H = 1 + Z^2 classifies monic_Z_separable",
              h_shape_classify(r1).kind == HShapeKind::monic_Z_separable);
    auto r2 = RingSpec::make(make_ring_config(Q, Family::asanuma, {2}, "Z + T + Z*T"));
    AsanumaShape s2 = h_shape_classify(r2);
    auto uni = presentation_universe(Family::asanuma, 1);
    log.check("H = Z + (1+Z)T classifies linear_in_T with witness",
              s2.kind == HShapeKind::linear_in_T && s2.a0 == parse_poly("Z", uni, Q) &&
                  s2.a1 == parse_poly("1 + Z", uni, Q) && s2.htilde.is_zero());
    auto r3 = RingSpec::make(make_ring_config(Q, Family::asanuma, {2}, "5"));
    log.check("H = 5 classifies unit_h", h_shape_classify(r3).kind == HShapeKind::unit_h);
}

void fx_ml1_maps(CaseLog& log) {
    auto Q = FieldSpec::rationals();
    auto ring = RingSpec::make(make_ring_config(Q, Family::asanuma, {2}, "Z + T"));
    Ml1Maps maps = mk_ml1_maps(ring);
    log.check("one map for m = 1", maps.maps.size() == 1);
    log.check("phi(x1) = x1 + W",
              maps.maps[0].image("x1") == ring->parse_over("x1 + W", {"W"}));
    log.check("phi(t) = t + 2 x1 y W + y W^2",
              maps.maps[0].image("t") == ring->parse_over("t + 2*x1*y*W + y*W^2", {"W"}));
    log.check("y is invariant", is_invariant(maps.maps[0], ring->generator("y")));

    // m = 2: the common claimed invariant generators, together with the
    // shift map in z, leave nothing but constants.
    auto ring2 = RingSpec::make(make_ring_config(Q, Family::asanuma, {2, 2}, "Z + T"));
    Ml1Maps maps2 = mk_ml1_maps(ring2);
    ExpMap zshift = mk_v_shift(ring2, "z");
    std::vector<std::string> zshift_claimed{"x1", "x2", "t"};
    for (const auto& gen : zshift_claimed) {
        log.check("z-shift fixes " + gen, is_invariant(zshift, ring2->generator(gen)));
    }
    std::vector<std::string> common = maps2.claimed_invariant_gens[0];
    auto keep_if = [&](const std::vector<std::string>& other) {
        std::vector<std::string> next;
        for (const auto& g : common) {
            for (const auto& h : other) {
                if (g == h) { next.push_back(g); break; }
            }
        }
        common = next;
    };
    keep_if(maps2.claimed_invariant_gens[1]);
    keep_if(zshift_claimed);
    log.check("common claimed generator list is empty", common.empty());
}

void fx_ex2(CaseLog& log) {
    Ex2Report report = verify_ex2_suite();
    for (const auto& [name, passed] : report.checks) log.check(name, passed);
    log.note(report.notes);
}

void fx_axiom_suite(CaseLog& log) {
    for (const FieldSpec& field : {FieldSpec::rationals(), FieldSpec::prime_field(3),
                                   FieldSpec::prime_field(5)}) {
        auto B = b_ring(field, {2}, "V^2 - 1");
        ExpMap tr = mk_translation(B->adjoin({"w"}), "w");
        log.check("translation axioms over " + field.str(), tr.verified());
        ExpMap vs = mk_v_shift(B);
        log.check("v-shift axioms over " + field.str(), vs.verified());
        UnitRowMap row = mk_unit_row(b_ring(field, {1, 2}, "V^2"), 0);
        log.check("unit-row axioms over " + field.str(), row.map.verified());

        RingConfig cfg = make_ring_config(field, Family::danielewski, {2}, "V^2 - 1");
        IsoCertificate link = build_iso_certificate(cfg, obtain_cofactors(cfg));
        ExpMap stiso = ExpMap::parse(RingSpec::make(cfg)->adjoin({"w"}), link.exp_images);
        log.check("stiso map axioms over " + field.str(), check_exponential(stiso).ok());

        auto A = RingSpec::make(make_ring_config(field, Family::asanuma, {2, 2}, "Z + T"));
        Ml1Maps maps = mk_ml1_maps(A);
        log.check("row map axioms over " + field.str(),
                  maps.maps[0].verified() && maps.maps[1].verified());
    }
}

std::vector<Fixture> fixture_list() {
    return {
        {"poly/weighted-degree", "weighted degree on the Laurent model", fx_weighted_degree},
        {"poly/top-form", "top-form extraction", fx_top_form},
        {"poly/formal-derivative", "coefficient-wise formal derivative", fx_formal_derivative},
        {"parse/round-trip", "printer/parser round trip", fx_parser_roundtrip},
        {"config/validation", "ring config invariants", fx_config_errors},
        {"ring/normalize", "normal-form rewriting", fx_normalize_rewrite},
        {"ring/asanuma-construction", "asanuma quotient kernel", fx_asanuma_ring},
        {"ring/laurent-embed", "Laurent embedding", fx_laurent_embed},
        {"ring/oracle-agreement-q", "normal form vs Laurent oracle", fx_oracle_q},
        {"ring/oracle-agreement-f5", "normal form vs Laurent oracle", fx_oracle_f5},
        {"filt/degrees", "filtration degrees", fx_filt_degrees},
        {"filt/ell-formula", "degree of u via the weight formula", fx_filt_ell_random},
        {"filt/multiplicative", "degree multiplicativity", fx_filt_multiplicative},
        {"gr/build", "associated graded ring", fx_build_gr},
        {"gr/pure-v-weight", "graded ring for the v-weight filtration", fx_gr_pure_v},
        {"gr/leading-form", "leading-form map", fx_leading_form},
        {"filt/homogenize", "homogenization of exponential maps", fx_homogenize},
        {"expmap/v-shift", "v-shift exponential map", fx_vshift_images},
        {"expmap/well-definedness", "axiom failure reporting", fx_welldef_failure},
        {"expmap/translation", "translation exponential map", fx_translation},
        {"expmap/unit-row", "unit-exponent row map", fx_unit_row},
        {"stiso/bezout", "extended Euclid cofactors", fx_bezout},
        {"stiso/bezout-f2", "coprimality boundary in characteristic 2", fx_bezout_f2},
        {"stiso/verify-cofactors", "cofactor identity checking", fx_verify_cofactors},
        {"stiso/v1-u1", "reduction frame v1, u1, b", fx_v1_u1},
        {"stiso/wtilde", "the slice generator wtilde", fx_wtilde},
        {"stiso/certificate-2-1", "stable isomorphism link", fx_cert_2_to_1},
        {"stiso/chain-3-1", "stable isomorphism chain", fx_cert_3_to_1},
        {"stiso/chain-22-11", "stable isomorphism chain, m = 2", fx_cert_22_to_11},
        {"stiso/certificate-deg3", "stable isomorphism with cubic F", fx_cert_deg3},
        {"stiso/identity-chain", "empty chain certificate", fx_cert_identity},
        {"stiso/pipeline-f3", "full pipeline in characteristic 3", fx_cert_f3},
        {"asanuma/classify", "syntactic shape classification", fx_classify},
        {"asanuma/ml1-maps", "row maps and invariant generators", fx_ml1_maps},
        {"asanuma/ex2", "two-variable unit-h example", fx_ex2},
        {"expmap/axiom-suite", "constructor axioms over Q, F3, F5", fx_axiom_suite},
    };
}

} // namespace

SuiteReport suite_run() {
    auto fixtures = fixture_list();
    SuiteReport report;
    report.cases.resize(fixtures.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(fixtures.size()); ++i) {
        const auto& fx = fixtures[static_cast<std::size_t>(i)];
        SuiteCaseResult result;
        result.id = fx.id;
        result.anchor = fx.anchor;
        CaseLog log;
        auto start = std::chrono::steady_clock::now();
        try {
            fx.run(log);
        } catch (const std::exception& e) {
            log.ok = false;
            log.out << "EXCEPTION " << e.what() << "\n";
        }
        auto stop = std::chrono::steady_clock::now();
        result.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        result.transcript = log.out.str();
        if (log.expected_fail) {
            result.status = log.ok ? CaseStatus::expected_fail : CaseStatus::fail;
        } else {
            result.status = log.ok ? CaseStatus::pass : CaseStatus::fail;
        }
        std::ostringstream digest_input;
        digest_input << result.id << "\n" << case_status_name(result.status) << "\n"
                     << result.transcript;
        std::ostringstream hex;
        hex << std::hex << std::setw(16) << std::setfill('0')
            << fnv1a64(digest_input.str());
        result.digest = hex.str();
        report.cases[static_cast<std::size_t>(i)] = std::move(result);
    }
    return report;
}

std::string report_emit_text(const SuiteReport& report) {
    std::ostringstream os;
    os << "case" << std::string(32, ' ') << "status         ms  digest\n";
    for (const auto& c : report.cases) {
        std::string id = c.id;
        if (id.size() < 36) id += std::string(36 - id.size(), ' ');
        std::string status = case_status_name(c.status);
        if (status.size() < 13) status += std::string(13 - status.size(), ' ');
        os << id << status << std::setw(7) << static_cast<long long>(c.wall_ms + 0.5) << "  "
           << c.digest << "\n";
    }
    os << report.cases.size() << " cases, " << report.failures() << " failed\n";
    return os.str();
}

std::string report_emit_json(const SuiteReport& report) {
    nlohmann::json j;
    j["format_version"] = report.format_version;
    j["cases"] = nlohmann::json::array();
    for (const auto& c : report.cases) {
        j["cases"].push_back({{"id", c.id},
                              {"anchor", c.anchor},
                              {"status", case_status_name(c.status)},
                              {"wall_ms", c.wall_ms},
                              {"digest", c.digest}});
    }
    j["failed"] = report.failures();
    return j.dump(2) + "\n";
}

} // namespace dani
