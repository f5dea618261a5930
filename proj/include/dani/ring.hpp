#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dani/parser.hpp"
#include "dani/polynomial.hpp"

namespace dani {

class RingSpec;
using RingSpecPtr = std::shared_ptr<const RingSpec>;

class RingElement;

/// A quotient ring presented by a single relation
///   t1^r1 ... tm^rm * u = rhs(t, rest)
/// over generators (t1..tm, u, v) for the danielewski family or
/// (x1..xm, y, z, t) for the asanuma family, optionally with extra free
/// polynomial generators adjoined. Elements carry the unique normal form in
/// which every term with positive u-exponent has some t-exponent below r.
class RingSpec : public std::enable_shared_from_this<RingSpec> {
public:
    static RingSpecPtr make(const RingConfig& config);

    /// Same kernel, skipping the monic-in-V requirement (used for associated
    /// graded rings whose top form need not stay monic). The defining
    /// polynomial is given over the presentation universe.
    static RingSpecPtr make_unchecked(FieldSpec field, Family family, std::vector<int> r,
                                      const Polynomial& defining);

    /// New ring with extra free generators adjoined (e.g. B[w]).
    RingSpecPtr adjoin(const std::vector<std::string>& names) const;

    const RingConfig& config() const { return config_; }
    const FieldSpec& field() const { return config_.field; }
    Family family() const { return config_.family; }
    int m() const { return config_.m; }
    const std::vector<int>& r() const { return config_.r; }
    const std::vector<std::string>& adjoined() const { return adjoined_; }

    /// Universe of normal forms: t-vars, u-var, rest vars, adjoined vars.
    const std::shared_ptr<const Universe>& nf_universe() const { return nf_uni_; }
    /// Laurent model: t-vars invertible, u-var eliminated.
    const std::shared_ptr<const Universe>& laurent_universe() const { return laurent_uni_; }

    const std::string& tvar(int i) const { return tvars_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& tvars() const { return tvars_; }
    const std::string& uvar() const { return uvar_; }
    const std::vector<std::string>& rest_vars() const { return rest_vars_; }
    /// All ring generators (kernel vars then adjoined), in order.
    std::vector<std::string> generators() const;

    /// Right-hand side of the defining relation over nf_universe (no u-var).
    const Polynomial& rhs() const { return rhs_; }
    /// Defining relation t^r*u - rhs over nf_universe.
    Polynomial relation() const;

    /// P(V) := F(0,..,0,V) as a polynomial over nf_universe (danielewski).
    const Polynomial& P() const { return P_; }
    int d() const { return d_; }
    bool monic_in_v() const { return monic_v_; }

    /// Rewrites a raw polynomial over nf_universe to its normal form.
    Polynomial normalize_raw(const Polynomial& raw) const;

    /// Normal form over the polynomial's own universe, which must contain
    /// the kernel variables (extra free variables ride along unchanged).
    Polynomial normalize_over(const Polynomial& raw) const;

    /// Substitutes u -> rhs * t^{-r}; the result has no u-variable.
    Polynomial laurent_of(const Polynomial& nf) const;

    /// Partial inverse of laurent_of: recovers the normal form of a Laurent
    /// polynomial, or nullopt when it does not lie in the ring. Requires the
    /// defining polynomial monic in the distinguished rest variable.
    std::optional<Polynomial> laurent_to_nf(const Polynomial& laurent) const;

    RingElement element(const Polynomial& raw) const;
    RingElement parse_element(std::string_view text) const;

    /// Parses a raw (un-normalized) polynomial over nf_universe extended by
    /// `extra` free variables, accepting the uppercase presentation aliases
    /// for the kernel generators (T1 -> t1, U -> u, ...).
    Polynomial parse_over(std::string_view text, const std::vector<std::string>& extra) const;
    RingElement zero() const;
    RingElement one() const;
    RingElement generator(std::string_view name) const;

    /// Monomial t^r over nf_universe / laurent_universe.
    Monomial t_pow_r(const std::shared_ptr<const Universe>& uni) const;

    bool same_presentation(const RingSpec& o) const;

private:
    RingConfig config_;
    std::vector<std::string> tvars_;
    std::string uvar_;
    std::vector<std::string> rest_vars_;
    std::vector<std::string> adjoined_;
    std::shared_ptr<const Universe> nf_uni_;
    std::shared_ptr<const Universe> laurent_uni_;
    Polynomial rhs_;     // over nf_uni_
    Polynomial rhs_lau_; // over laurent_uni_
    Polynomial P_;
    int d_ = 0;
    bool monic_v_ = false;

    std::size_t u_idx_ = 0;
    std::vector<std::size_t> t_idx_;      // in nf universe
    std::vector<std::size_t> t_idx_lau_;  // in laurent universe
    std::size_t peel_idx_lau_ = 0;        // distinguished rest var (v / z) in laurent universe

    void init();
};

/// An element of a RingSpec stored in normal form.
class RingElement {
public:
    RingElement() = default;
    RingElement(RingSpecPtr ring, Polynomial nf) : ring_(std::move(ring)), nf_(std::move(nf)) {}

    const RingSpecPtr& ring() const { return ring_; }
    const Polynomial& nf() const { return nf_; }
    bool is_zero() const { return nf_.is_zero(); }

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    RingElement pow(unsigned e) const;

    /// Normal-form equality; the Laurent embedding provides the independent
    /// oracle (laurent_eq).
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    Polynomial laurent() const { return ring_->laurent_of(nf_); }

    std::string str() const { return nf_.str(); }

private:
    RingSpecPtr ring_;
    Polynomial nf_;

    void check_same(const RingElement& o) const;
};

/// Equality via the Laurent model (test/certificate oracle).
bool laurent_eq(const RingElement& a, const RingElement& b);

/// Divides by t_i^count inside the ring via the Laurent model; nullopt when
/// the quotient does not lie in the ring.
std::optional<RingElement> divide_by_t(const RingElement& x, int i, int count = 1);

} // namespace dani
