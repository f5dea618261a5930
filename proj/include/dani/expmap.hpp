#pragma once

#include <map>
#include <string>
#include <vector>

#include "dani/ring.hpp"

namespace dani {

struct AxiomFailure {
    std::string axiom;     // "counit", "coassociativity", "well-definedness"
    std::string generator; // witness generator (or "relation")
    std::string detail;    // the nonzero difference, printed
};

struct VerifyReport {
    std::vector<AxiomFailure> failures;
    bool ok() const { return failures.empty(); }
    std::string str() const;
};

/// A ring homomorphism phi: B -> B[W] given by generator images. Images of
/// arbitrary elements are computed by substituting into the normal form.
class ExpMap {
public:
    /// Builds a map from generator images (polynomials over nf_universe+{W});
    /// omitted generators map to themselves. Does not verify.
    static ExpMap make(RingSpecPtr ring, std::map<std::string, Polynomial> images);

    /// Same, parsing image text (uppercase aliases allowed, indeterminate W).
    static ExpMap parse(RingSpecPtr ring, const std::map<std::string, std::string>& images);

    const RingSpecPtr& ring() const { return ring_; }
    /// Universe of images: nf_universe + {W}.
    const std::shared_ptr<const Universe>& image_universe() const { return ext_; }
    const std::map<std::string, Polynomial>& images() const { return images_; }
    const Polynomial& image(const std::string& gen) const;

    /// phi applied to a normal-form polynomial, with the indeterminate named
    /// `out`. The result is normalized over nf_universe + {out} (+ carried
    /// free variables of the input).
    Polynomial apply(const Polynomial& nf, const std::string& out = "W") const;
    Polynomial apply(const RingElement& x, const std::string& out = "W") const;

    bool verified() const { return verified_; }
    void mark_verified() { verified_ = true; }

private:
    RingSpecPtr ring_;
    std::shared_ptr<const Universe> ext_;
    std::map<std::string, Polynomial> images_;
    bool verified_ = false;
};

/// Verifies the exponential-map axioms symbolically:
///  (i)  evaluation at W=0 is the identity on every generator,
///  (ii) coassociativity phi_{W2} phi_{W1} = phi_{W1+W2} on every generator
///       (two fresh indeterminates, exact normal-form comparison),
///  (iii) well-definedness: the defining relation maps to 0.
VerifyReport check_exponential(ExpMap& phi);

/// True iff phi(x) = x (the image is W-free and equals x).
bool is_invariant(const ExpMap& phi, const RingElement& x);

/// True iff every generator is invariant.
bool is_trivial(const ExpMap& phi);

/// Translation on a free generator: gen -> gen + W, everything else fixed.
/// The generator must not occur in the defining relation (an adjoined
/// variable, or a rest variable the relation does not mention).
ExpMap mk_translation(const RingSpecPtr& ring, const std::string& gen);

/// The shift map on a rest variable s (v for danielewski; z or t for
/// asanuma): s -> s + t^r W, u -> u + [rhs(s + t^r W) - rhs(s)] / t^r.
ExpMap mk_v_shift(const RingSpecPtr& ring, const std::string& rest_var = "");

/// The de-localized row map for an index j with r_j = 1 (danielewski).
/// Returns the map together with the clearing exponent n and the invariant
/// combination t^{r-hat-j} u - F_j(t, v).
struct UnitRowMap {
    ExpMap map;
    int n = 0;
    RingElement invariant_combination;
};
UnitRowMap mk_unit_row(const RingSpecPtr& ring, int j);

} // namespace dani
