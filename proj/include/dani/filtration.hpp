#pragma once

#include "dani/expmap.hpp"
#include "dani/ring.hpp"

namespace dani {

/// Integer weights (e_1,...,e_m) on the t-variables plus a weight for v.
struct WeightVector {
    std::vector<std::int64_t> t_weights;
    std::int64_t v_weight = 0;

    /// Parses "e1,...,em;vw" (the v-weight defaults to 0 when omitted).
    static WeightVector parse(const std::string& text);
    std::string str() const;
};

/// The Z-filtration a weight vector induces on a danielewski ring via the
/// graded Laurent model. Degrees are computed through the embedding.
class Filtration {
public:
    Filtration(RingSpecPtr ring, WeightVector w);

    const RingSpecPtr& ring() const { return ring_; }
    const WeightVector& weights() const { return w_; }
    /// Degree of the defining polynomial.
    std::int64_t e() const { return e_; }
    /// Degree of u: e - sum r_i e_i.
    std::int64_t ell() const { return ell_; }

    /// Weights aligned with the Laurent universe (adjoined vars undeclared).
    std::vector<std::optional<std::int64_t>> laurent_weights() const;
    /// Weights aligned with the nf universe, with u carrying ell.
    std::vector<std::optional<std::int64_t>> nf_weights() const;

    /// Filtration degree: weighted degree of the Laurent embedding.
    /// nullopt is degree -infinity (the zero element).
    std::optional<std::int64_t> degree(const RingElement& x) const;

private:
    RingSpecPtr ring_;
    WeightVector w_;
    std::int64_t e_ = 0, ell_ = 0;
};

/// The associated graded ring B(r, F_top) of the filtration.
struct GradedRing {
    RingSpecPtr ring;
    Polynomial f_top; // over the presentation universe (T1..Tm, V)
    bool monic_in_v = false;
};

/// Builds gr(B) when no t_i divides the top form of F; otherwise throws
/// DivisibleTopForm(i).
GradedRing build_gr(const Filtration& f);

/// The leading-form map rho: B -> gr(B). The result is re-verified against
/// the Laurent model of the graded ring.
RingElement leading_form(const RingElement& x, const Filtration& f, const GradedRing& gr);

struct HomogenizeResult {
    ExpMap map; // verified homogeneous exponential map on gr
    std::int64_t theta_num = 0;
    std::int64_t theta_den = 1; // reduced, positive denominator
};

/// Builds the induced homogeneous exponential map on gr(B) from a verified
/// map on B: the candidate indeterminate weight is the extremal slope
/// (degree(c_{x,j}) - degree(x)) / j over all generators, and only the terms
/// attaining it survive. The candidate is then verified; failures raise
/// CandidateFailed rather than being accepted. Supplied invariant elements
/// are checked to stay invariant after passing to leading forms.
HomogenizeResult homogenize_expmap(const ExpMap& phi, const Filtration& f, const GradedRing& gr,
                                   const std::vector<RingElement>& invariant_witnesses = {});

} // namespace dani
