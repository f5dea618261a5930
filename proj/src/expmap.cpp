#include "dani/expmap.hpp"

#include <algorithm>
#include <sstream>

namespace dani {

std::string VerifyReport::str() const {
    if (failures.empty()) return "pass";
    std::ostringstream os;
    for (const auto& f : failures) {
        os << "FAIL " << f.axiom << " at " << f.generator << ": " << f.detail << "\n";
    }
    return os.str();
}

ExpMap ExpMap::make(RingSpecPtr ring, std::map<std::string, Polynomial> images) {
    ExpMap phi;
    phi.ring_ = std::move(ring);
    phi.ext_ = phi.ring_->nf_universe()->extended({"W"});
    for (const auto& gen : phi.ring_->generators()) {
        auto it = images.find(gen);
        if (it != images.end()) {
            phi.images_.emplace(gen, it->second.into(phi.ext_));
            images.erase(it);
        } else {
            phi.images_.emplace(gen, Polynomial::variable(phi.ring_->field(), phi.ext_, gen));
        }
    }
    if (!images.empty())
        throw Error("ExpMap: image given for unknown generator " + images.begin()->first);
    return phi;
}

ExpMap ExpMap::parse(RingSpecPtr ring, const std::map<std::string, std::string>& images) {
    std::map<std::string, Polynomial> polys;
    for (const auto& [gen, text] : images) {
        polys.emplace(gen, ring->parse_over(text, {"W"}));
    }
    return make(std::move(ring), std::move(polys));
}

const Polynomial& ExpMap::image(const std::string& gen) const {
    auto it = images_.find(gen);
    if (it == images_.end()) throw UnknownVariable(gen);
    return it->second;
}

Polynomial ExpMap::apply(const Polynomial& nf, const std::string& out) const {
    // Target universe: the input's universe with W replaced by `out` and any
    // carried free variables preserved.
    std::vector<std::string> extra;
    for (const auto& name : nf.universe()->names()) {
        if (!ring_->nf_universe()->index_of(name)) extra.push_back(name);
    }
    if (std::find(extra.begin(), extra.end(), out) == extra.end()) extra.push_back(out);
    auto target = ring_->nf_universe()->extended(extra);

    std::map<std::string, Polynomial> sub;
    for (const auto& [gen, img] : images_) {
        Polynomial renamed = img;
        if (out != "W") {
            auto tmp = img.substitute({{"W", Polynomial::variable(ring_->field(), target, out)}},
                                      target);
            renamed = tmp;
        }
        sub.emplace(gen, renamed.into(target));
    }
    Polynomial raw = nf.substitute(sub, target);
    return ring_->normalize_over(raw);
}

Polynomial ExpMap::apply(const RingElement& x, const std::string& out) const {
    if (x.ring().get() != ring_.get() && !x.ring()->same_presentation(*ring_))
        throw RingMismatch();
    return apply(x.nf(), out);
}

VerifyReport check_exponential(ExpMap& phi) {
    VerifyReport report;
    const auto& ring = phi.ring();
    const auto& field = ring->field();
    auto ext = phi.image_universe();

    // (i) counit: setting W = 0 recovers each generator.
    for (const auto& gen : ring->generators()) {
        Polynomial at0 = phi.image(gen).substitute(
            {{"W", Polynomial::zero(field, ring->nf_universe())}}, ring->nf_universe());
        at0 = ring->normalize_over(at0);
        Polynomial g = Polynomial::variable(field, ring->nf_universe(), gen);
        if (at0 != g) {
            report.failures.push_back(
                {"counit", gen, "eps_0(phi(" + gen + ")) = " + at0.str()});
        }
    }

    // (iii) well-definedness: the defining relation maps to 0.
    {
        Polynomial rel = ring->relation();
        Polynomial img = rel.substitute(phi.images(), ext);
        img = ring->normalize_over(img);
        if (!img.is_zero()) {
            report.failures.push_back({"well-definedness", "relation", img.str()});
        }
    }

    // (ii) coassociativity with two fresh indeterminates.
    auto uni12 = ring->nf_universe()->extended({"W1", "W2"});
    Polynomial w1 = Polynomial::variable(field, uni12, "W1");
    Polynomial w2 = Polynomial::variable(field, uni12, "W2");
    std::map<std::string, Polynomial> images_w2;
    for (const auto& [gen, img] : phi.images()) {
        images_w2.emplace(gen, img.substitute({{"W", w2}}, uni12));
    }
    for (const auto& gen : ring->generators()) {
        Polynomial first = phi.image(gen).substitute({{"W", w1}}, uni12);
        // Extend phi_{W2} to B[W1] by fixing W1.
        Polynomial lhs = ring->normalize_over(first.substitute(images_w2, uni12));
        Polynomial rhs = ring->normalize_over(
            phi.image(gen).substitute({{"W", w1 + w2}}, uni12));
        if (lhs != rhs) {
            report.failures.push_back(
                {"coassociativity", gen, "difference " + (lhs - rhs).str()});
        }
    }

    if (report.ok()) phi.mark_verified();
    return report;
}

bool is_invariant(const ExpMap& phi, const RingElement& x) {
    Polynomial img = phi.apply(x);
    return img == x.nf().into(img.universe());
}

bool is_trivial(const ExpMap& phi) {
    for (const auto& gen : phi.ring()->generators()) {
        if (!is_invariant(phi, phi.ring()->generator(gen))) return false;
    }
    return true;
}

ExpMap mk_translation(const RingSpecPtr& ring, const std::string& gen) {
    auto gens = ring->generators();
    if (std::find(gens.begin(), gens.end(), gen) == gens.end())
        throw UnknownVariable(gen);
    auto idx = ring->nf_universe()->index_of(gen);
    bool free_gen = gen != ring->uvar() &&
                    std::find(ring->tvars().begin(), ring->tvars().end(), gen) ==
                        ring->tvars().end() &&
                    !ring->rhs().contains_var(*idx);
    if (!free_gen)
        throw Error("mk_translation: " + gen + " occurs in the defining relation");
    auto ext = ring->nf_universe()->extended({"W"});
    Polynomial img = Polynomial::variable(ring->field(), ext, gen) +
                     Polynomial::variable(ring->field(), ext, "W");
    ExpMap phi = ExpMap::make(ring, {{gen, img}});
    auto report = check_exponential(phi);
    if (!report.ok()) throw CandidateFailed("translation map: " + report.str());
    return phi;
}

ExpMap mk_v_shift(const RingSpecPtr& ring, const std::string& rest_var) {
    std::string s = rest_var.empty() ? ring->rest_vars().front() : rest_var;
    if (std::find(ring->rest_vars().begin(), ring->rest_vars().end(), s) ==
        ring->rest_vars().end())
        throw UnknownVariable(s);
    auto ext = ring->nf_universe()->extended({"W"});
    const auto& field = ring->field();
    Monomial t_r = ring->t_pow_r(ext);
    Polynomial tau = Polynomial::from_monomial(field, ext, t_r, FieldElem::one(field));
    Polynomial w = Polynomial::variable(field, ext, "W");
    Polynomial s_img = Polynomial::variable(field, ext, s) + tau * w;

    Polynomial rhs_ext = ring->rhs().into(ext);
    Polynomial shifted = rhs_ext.substitute({{s, s_img}}, ext);
    auto quot = (shifted - rhs_ext).divide_exact_monomial(t_r);
    if (!quot) throw InexactDivision("v-shift: rhs(s + t^r W) - rhs not divisible by t^r");
    Polynomial u_img = Polynomial::variable(field, ext, ring->uvar()) + *quot;

    ExpMap phi = ExpMap::make(ring, {{s, s_img}, {ring->uvar(), u_img}});
    auto report = check_exponential(phi);
    if (!report.ok()) throw CandidateFailed("v-shift map: " + report.str());
    return phi;
}

UnitRowMap mk_unit_row(const RingSpecPtr& ring, int j) {
    if (ring->family() != Family::danielewski)
        throw Error("mk_unit_row: danielewski rings only");
    const int m = ring->m();
    if (j < 0 || j >= m) throw Error("mk_unit_row: index out of range");
    if (ring->r()[static_cast<std::size_t>(j)] != 1) throw NotUnitExponent(j + 1);

    const auto& field = ring->field();
    auto nf_uni = ring->nf_universe();
    auto lau = ring->laurent_universe();
    const std::string tj = ring->tvar(j);
    const std::string v = ring->rest_vars().front();

    // Split rhs = t_j * F_j + F0 with F0 = rhs|_{t_j = 0}.
    Polynomial F0 = ring->rhs().substitute({{tj, Polynomial::zero(field, nf_uni)}});
    Monomial tj_mon(nf_uni->size());
    tj_mon[*nf_uni->index_of(tj)] = 1;
    auto Fj_opt = (ring->rhs() - F0).divide_exact_monomial(tj_mon);
    if (!Fj_opt) throw InexactDivision("unit row: rhs - rhs|_{t_j=0} not divisible by t_j");
    Polynomial Fj = Fj_opt->into(lau);
    Polynomial F0L = F0.into(lau);

    // Laurent image of u_j = u - F_j / t^{r-hat-j}: equals F0 * t^{-r}.
    Monomial t_r = ring->t_pow_r(lau);
    Monomial rhat = t_r;
    rhat[*lau->index_of(tj)] = 0;
    auto div_mon = [&](const Polynomial& p, const Monomial& mctx) {
        Polynomial out(field, lau);
        for (const auto& [mm, cc] : p.terms()) out.add_term(mm.divided_by(mctx), cc);
        return out;
    };
    Polynomial ujL = div_mon(F0L, t_r);

    // Taylor expansion of F0 around v gives the alpha coefficients:
    //   alpha_i = c_i * u_j^{i-1} * t^{-r-hat-j}.
    auto lauS = lau->extended({"S"});
    Polynomial F0S = F0L.substitute(
        {{v, Polynomial::variable(field, lauS, v) + Polynomial::variable(field, lauS, "S")}},
        lauS);
    std::size_t s_idx = *lauS->index_of("S");
    int dv = F0S.degree_in(s_idx);
    std::vector<Polynomial> alpha; // alpha[i-1] for i = 1..dv
    for (int i = 1; i <= dv; ++i) {
        Polynomial ci = F0S.coeff_of(s_idx, i).into(lau);
        alpha.push_back(div_mon(ci * ujL.pow(static_cast<unsigned>(i - 1)), rhat));
    }

    // phi(t_j) in the Laurent model, then the beta coefficients for phi(u).
    auto lauW = lau->extended({"W"});
    Polynomial W = Polynomial::variable(field, lauW, "W");
    Polynomial tj_img_L = Polynomial::variable(field, lauW, tj);
    {
        Polynomial wpow = W;
        for (const auto& a : alpha) {
            tj_img_L += a.into(lauW) * wpow;
            wpow = wpow * W;
        }
    }
    Polynomial diff =
        Fj.substitute({{tj, tj_img_L},
                       {v, Polynomial::variable(field, lauW, v) + ujL.into(lauW) * W}},
                      lauW) -
        Fj.into(lauW);
    std::size_t w_idx = *lauW->index_of("W");
    int smax = diff.degree_in(w_idx);
    std::vector<Polynomial> beta; // beta[l-1] for l = 1..smax
    for (int l = 1; l <= smax; ++l) {
        Polynomial bl = diff.coeff_of(w_idx, l).into(lau);
        beta.push_back(div_mon(bl, rhat));
    }

    // Smallest n with p^n * {u_j, alpha_i, beta_l} all inside the ring,
    // where p is the product of the other t variables.
    Monomial p_mon(lau->size());
    for (int i = 0; i < m; ++i) {
        if (i != j) p_mon[*lau->index_of(ring->tvar(i))] = 1;
    }
    std::vector<const Polynomial*> targets{&ujL};
    for (const auto& a : alpha) targets.push_back(&a);
    for (const auto& b : beta) targets.push_back(&b);
    int bound = 0;
    for (const auto* t : targets) {
        for (const auto& [mm, cc] : t->terms()) {
            for (int i = 0; i < m; ++i) {
                if (i == j) continue;
                bound = std::max(bound, -mm[*lau->index_of(ring->tvar(i))]);
            }
        }
    }
    auto scaled = [&](const Polynomial& x, int power) {
        Monomial s(lau->size());
        for (std::size_t k = 0; k < lau->size(); ++k) s[k] = p_mon[k] * power;
        return x * Polynomial::from_monomial(field, lau, s, FieldElem::one(field));
    };
    int n = 0;
    for (;; ++n) {
        if (n > bound) throw Error("unit row: clearing exponent exceeded structural bound");
        bool all_in = true;
        for (const auto* t : targets) {
            if (!ring->laurent_to_nf(scaled(*t, n))) {
                all_in = false;
                break;
            }
        }
        if (all_in) break;
    }

    // Assemble the de-localized images over nf_universe + {W}.
    auto ext = nf_uni->extended({"W"});
    Polynomial Wx = Polynomial::variable(field, ext, "W");
    auto lift = [&](const Polynomial& x, int power) {
        auto nf = ring->laurent_to_nf(scaled(x, power));
        if (!nf) throw InexactDivision("unit row: cleared element not in the ring");
        return nf->into(ext);
    };
    Polynomial v_img = Polynomial::variable(field, ext, v) + lift(ujL, n) * Wx;
    Polynomial tj_img = Polynomial::variable(field, ext, tj);
    {
        Polynomial wpow = Wx;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            tj_img += lift(alpha[i], n * static_cast<int>(i + 1)) * wpow;
            wpow = wpow * Wx;
        }
    }
    Polynomial u_img = Polynomial::variable(field, ext, ring->uvar());
    {
        Polynomial wpow = Wx;
        for (std::size_t l = 0; l < beta.size(); ++l) {
            u_img += lift(beta[l], n * static_cast<int>(l + 1)) * wpow;
            wpow = wpow * Wx;
        }
    }

    ExpMap phi = ExpMap::make(
        ring, {{tj, tj_img}, {v, v_img}, {ring->uvar(), u_img}});
    auto report = check_exponential(phi);
    if (!report.ok()) throw CandidateFailed("unit row map: " + report.str());

    // The combination t^{r-hat-j} u - F_j(t, v) must be invariant.
    Monomial rhat_nf = ring->t_pow_r(nf_uni);
    rhat_nf[*nf_uni->index_of(tj)] = 0;
    Monomial u_mon(nf_uni->size());
    u_mon[*nf_uni->index_of(ring->uvar())] = 1;
    Polynomial comb =
        Polynomial::from_monomial(field, nf_uni, rhat_nf * u_mon, FieldElem::one(field)) -
        Fj_opt->into(nf_uni);
    RingElement comb_el = ring->element(comb);
    if (!is_invariant(phi, comb_el))
        throw CandidateFailed("unit row map: t^r-hat u - F_j is not invariant");

    // Fixed t variables (i != j) are invariant by construction; assert anyway.
    for (int i = 0; i < m; ++i) {
        if (i != j && !is_invariant(phi, ring->generator(ring->tvar(i))))
            throw CandidateFailed("unit row map: t_i moved");
    }

    return UnitRowMap{std::move(phi), n, std::move(comb_el)};
}

} // namespace dani
