#include "dani/asanuma.hpp"

#include <sstream>

#include "dani/stable_iso.hpp"

namespace dani {

std::string h_shape_name(HShapeKind k) {
    switch (k) {
        case HShapeKind::unit_h: return "unit_h";
        case HShapeKind::linear_in_T: return "linear_in_T";
        case HShapeKind::monic_Z_separable: return "monic_Z_separable";
        default: return "unclassified";
    }
}

namespace {

AsanumaShape classify_poly(const RingConfig& cfg, const Polynomial& H) {
    auto uni = H.universe();
    const auto& field = cfg.field;
    AsanumaShape shape;
    shape.a0 = Polynomial::zero(field, uni);
    shape.a1 = Polynomial::zero(field, uni);
    shape.htilde = Polynomial::zero(field, uni);

    if (H.is_constant()) {
        if (H.is_zero()) throw ConfigError("H = 0");
        shape.kind = HShapeKind::unit_h;
        shape.detail = "H is a nonzero constant";
        return shape;
    }

    std::size_t t_idx = *uni->index_of("T");
    std::size_t z_idx = *uni->index_of("Z");
    if (H.degree_in(t_idx) > 1) {
        shape.detail = "deg_T H > 1";
        return shape;
    }

    // Split H = A0(X, Z) + A1(X, Z) T.
    Polynomial A1 = H.coeff_of(t_idx, 1);
    Polynomial A0 = H.coeff_of(t_idx, 0);
    for (int i = 0; i < cfg.m; ++i) {
        if (A1.contains_var(static_cast<std::size_t>(i))) {
            shape.detail = "the T-coefficient involves " + uni->name(static_cast<std::size_t>(i));
            return shape;
        }
    }
    // A0 splits into the X-free part a0(Z) and the X-divisible Htilde.
    Polynomial a0(field, uni), htilde(field, uni);
    for (const auto& [m, c] : A0.terms()) {
        bool has_x = false;
        for (int i = 0; i < cfg.m; ++i) {
            if (m[static_cast<std::size_t>(i)] != 0) has_x = true;
        }
        if (has_x) htilde.add_term(m, c);
        else a0.add_term(m, c);
    }
    if (htilde.degree_in(t_idx) > 0) {
        shape.detail = "Htilde involves T";
        return shape;
    }
    shape.a0 = a0;
    shape.a1 = A1;
    shape.htilde = htilde;

    if (!A1.is_zero()) {
        shape.kind = HShapeKind::linear_in_T;
        shape.detail = "H = a0(Z) + a1(Z)T + Htilde(X,Z) with a1 != 0";
        return shape;
    }

    // a1 = 0: check for a monic separable H in Z.
    std::int32_t dz = H.degree_in(z_idx);
    if (dz < 1) {
        shape.detail = "a1 = 0 and H is constant in Z";
        return shape;
    }
    Polynomial lead = H.coeff_of(z_idx, dz);
    if (!lead.is_constant() || lead.is_zero()) {
        shape.detail = "a1 = 0 and the leading Z-coefficient is not a unit";
        return shape;
    }
    bool multivariate = false;
    for (int i = 0; i < cfg.m; ++i) {
        if (H.contains_var(static_cast<std::size_t>(i))) multivariate = true;
    }
    if (!multivariate) {
        // Univariate in Z: run the extended Euclid coprimality test.
        auto zuni = Universe::make({"V"});
        std::map<std::string, Polynomial> to_v{{"Z", Polynomial::variable(field, zuni, "V")}};
        Polynomial HV = H.substitute(to_v, zuni);
        try {
            bezout_cofactors(HV);
        } catch (const NotCoprime& e) {
            shape.detail = std::string("gcd(H, H_Z) != 1: ") + e.what();
            return shape;
        }
        shape.kind = HShapeKind::monic_Z_separable;
        shape.detail = "H monic in Z with gcd(H, H_Z) = 1";
        return shape;
    }
    if (cfg.g1 && cfg.g2) {
        Polynomial HZ = H.derivative("Z");
        Polynomial one = Polynomial::constant(field, uni, 1);
        if (H * cfg.g1->into(uni) + HZ * cfg.g2->into(uni) == one) {
            shape.kind = HShapeKind::monic_Z_separable;
            shape.detail = "H monic in Z; supplied cofactors verify (H, H_Z) = (1)";
            return shape;
        }
        shape.detail = "supplied cofactors do not satisfy H*g1 + H_Z*g2 = 1";
        return shape;
    }
    shape.detail = "H monic in Z but multivariate; supply cofactors g1, g2 to certify "
                   "separability";
    return shape;
}

} // namespace

AsanumaShape h_shape_classify(const RingSpecPtr& ring) {
    if (ring->family() != Family::asanuma) throw Error("h_shape_classify: asanuma rings only");
    return classify_poly(ring->config(), ring->config().defining);
}

CoordinateChange CoordinateChange::parse(const FieldSpec& field, const std::string& z1_text,
                                         const std::string& t1_text,
                                         const std::string& z_back_text,
                                         const std::string& t_back_text) {
    auto zt = Universe::make({"Z", "T"});
    CoordinateChange chg{parse_poly(z1_text, zt, field), parse_poly(t1_text, zt, field),
                         parse_poly(z_back_text, zt, field), parse_poly(t_back_text, zt, field)};
    auto compose = [&](const Polynomial& f, const Polynomial& gz, const Polynomial& gt) {
        return f.substitute({{"Z", gz}, {"T", gt}}, zt);
    };
    Polynomial Z = Polynomial::variable(field, zt, "Z");
    Polynomial T = Polynomial::variable(field, zt, "T");
    if (compose(chg.z1, chg.z_back, chg.t_back) != Z ||
        compose(chg.t1, chg.z_back, chg.t_back) != T ||
        compose(chg.z_back, chg.z1, chg.t1) != Z ||
        compose(chg.t_back, chg.z1, chg.t1) != T)
        throw Error("coordinate change: the supplied pair is not mutually inverse");
    return chg;
}

AsanumaShape h_shape_classify(const RingSpecPtr& ring, const CoordinateChange& change) {
    if (ring->family() != Family::asanuma) throw Error("h_shape_classify: asanuma rings only");
    const auto& cfg = ring->config();
    auto uni = cfg.poly_universe();
    // Substitute the old coordinates by their expressions in the new ones;
    // the new coordinates reuse the names Z and T.
    Polynomial zb = change.z_back.into(uni);
    Polynomial tb = change.t_back.into(uni);
    Polynomial H1 = cfg.defining.substitute({{"Z", zb}, {"T", tb}}, uni);
    return classify_poly(cfg, H1);
}

Ml1Maps mk_ml1_maps(const RingSpecPtr& ring) {
    Ml1Maps result;
    result.shape = h_shape_classify(ring);
    if (result.shape.a1.is_zero()) throw ZeroA1();
    if (result.shape.kind != HShapeKind::linear_in_T)
        throw Error("mk_ml1_maps: H is not of the required shape (" + result.shape.detail + ")");

    const auto& field = ring->field();
    auto uni = ring->nf_universe();
    auto upper = ring->config().poly_universe();
    std::map<std::string, Polynomial> lower;
    for (int i = 0; i < ring->m(); ++i) {
        lower.emplace(upper->name(static_cast<std::size_t>(i)),
                      Polynomial::variable(field, uni, ring->tvar(i)));
    }
    lower.emplace("Z", Polynomial::variable(field, uni, "z"));
    lower.emplace("T", Polynomial::variable(field, uni, "t"));
    Polynomial a0 = result.shape.a0.substitute(lower, uni);
    Polynomial a1 = result.shape.a1.substitute(lower, uni);
    Polynomial ht = result.shape.htilde.substitute(lower, uni);

    // Q(x, y, z) = x^r y - Htilde(x, z) - a0(z); in the ring Q = a1(z) t.
    Polynomial Q = Polynomial::from_monomial(field, uni, ring->t_pow_r(uni),
                                             FieldElem::one(field)) *
                       Polynomial::variable(field, uni, ring->uvar()) -
                   ht - a0;

    auto ext = uni->extended({"W"});
    Polynomial W = Polynomial::variable(field, ext, "W");
    for (int j = 0; j < ring->m(); ++j) {
        Polynomial xj = Polynomial::variable(field, ext, ring->tvar(j));
        Polynomial xj_img = xj + a1.into(ext) * W;
        Polynomial diff = Q.into(ext).substitute({{ring->tvar(j), xj_img}}, ext) - Q.into(ext);
        auto quot = diff.divide_exact(a1.into(ext));
        if (!quot) throw InexactDivision("ml1 map: division by a1(z)");
        Polynomial t_img = Polynomial::variable(field, ext, "t") + *quot;

        ExpMap phi = ExpMap::make(ring, {{ring->tvar(j), xj_img}, {"t", t_img}});
        auto report = check_exponential(phi);
        if (!report.ok()) throw CandidateFailed("ml1 map " + std::to_string(j + 1) + ": " +
                                               report.str());
        std::vector<std::string> claimed;
        for (int i = 0; i < ring->m(); ++i) {
            if (i != j) claimed.push_back(ring->tvar(i));
        }
        claimed.push_back(ring->uvar());
        claimed.push_back("z");
        for (const auto& gen : claimed) {
            if (!is_invariant(phi, ring->generator(gen)))
                throw CandidateFailed("ml1 map: claimed invariant " + gen + " moved");
        }
        result.maps.push_back(std::move(phi));
        result.claimed_invariant_gens.push_back(std::move(claimed));
    }
    return result;
}

bool Ex2Report::ok() const {
    for (const auto& [name, passed] : checks) {
        if (!passed) return false;
    }
    return true;
}

std::string Ex2Report::str() const {
    std::ostringstream os;
    for (const auto& [name, passed] : checks) {
        os << (passed ? "ok   " : "FAIL ") << name << "\n";
    }
    if (!notes.empty()) os << "note: " << notes << "\n";
    return os.str();
}

Ex2Report verify_ex2_suite() {
    Ex2Report report;
    report.notes = "run over Q as the exact stand-in for the reals";
    RingConfig cfg = make_ring_config(FieldSpec::rationals(), Family::asanuma, {2, 2},
                                      "1 + Z^2");
    auto ring = RingSpec::make(cfg);
    ExpMap phi = mk_translation(ring, "t");
    auto axioms = check_exponential(phi);
    report.checks.emplace_back("translation map passes the exponential axioms", axioms.ok());
    bool fixed = true;
    for (const std::string gen : {"x1", "x2", "y", "z"}) {
        fixed = fixed && is_invariant(phi, ring->generator(gen));
    }
    report.checks.emplace_back("x1, x2, y, z are invariant (y in particular)", fixed);
    report.checks.emplace_back("t is not invariant",
                               !is_invariant(phi, ring->generator("t")));
    return report;
}

} // namespace dani
