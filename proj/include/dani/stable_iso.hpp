#pragma once

#include <map>
#include <string>
#include <vector>

#include "dani/expmap.hpp"
#include "dani/ring.hpp"

namespace dani {

/// Cofactors witnessing F*g1 + F_V*g2 = 1 (polynomials over T1..Tm,V).
struct BezoutPair {
    Polynomial g1, g2;
};

/// Extended Euclid cofactors for univariate monic F in k[V], deg >= 2.
/// Throws NotCoprime when gcd(F, F_V) != 1.
BezoutPair bezout_cofactors(const Polynomial& F);

/// Exact check of the cofactor identity (works for user-supplied
/// multivariate cofactors too).
bool verify_cofactors(const Polynomial& F, const BezoutPair& pair);

/// Cofactors for a ring config: computed for univariate F, taken from the
/// config keys g1/g2 (and verified) otherwise.
BezoutPair obtain_cofactors(const RingConfig& cfg);

/// The invariant coordinates of one reduction step in E = B(r,F)[w]:
///   v1 = v + t_i^{r_i - 1} prod_{l != i} t_l^{r_l} w,
///   u1 = t_i u + w F_V(t, v) + b t_i,
/// with b the exact quotient forced by F(t, v1) = t^{r - delta_i} u1.
struct ReductionFrame {
    RingElement v1, u1, b;
};

ReductionFrame build_v1_u1(const RingSpecPtr& E, int reduce_index);

/// w~ = (w - u1 g2(t, v1)) / t_i; the division is exact whenever the
/// cofactor identity holds, so failure raises InexactDivision.
RingElement build_wtilde(const RingSpecPtr& E, int reduce_index, const ReductionFrame& frame,
                         const BezoutPair& pair);

/// One re-checkable claim. `kind` selects how the verifier replays it:
///   eq     : lhs == rhs after normalization in the tagged ring
///   mapeq  : exp map applied to lhs equals rhs (rhs may mention W)
///   expmap : the stored map images satisfy the exponential axioms
///   chain  : recomputed end-to-end composite claim
struct TranscriptEntry {
    std::string kind;
    std::string id;
    std::string ring_tag; // "high", "low", "coeffs", "chain"
    std::string lhs, rhs;
    bool passed = false;
};

/// Certificate for one link B(from_r,F)[w] ~ B(to_r,F)[w].
struct IsoCertificate {
    std::vector<int> from_r, to_r;
    int reduce_index = 0; // 0-based
    std::map<std::string, std::string> forward;  // low-ring generators -> high-ring elements
    std::map<std::string, std::string> backward; // high-ring generators -> low-ring elements
    std::map<std::string, std::string> exp_images; // the stiso exponential map on high[W]
    std::map<std::string, std::string> defs;     // v1, u1, b, wtilde
    std::vector<TranscriptEntry> transcript;
};

/// A verified chain of links realizing B(source_r,F)^[1] ~ B(target_r,F)^[1]
/// through B(1,...,1,F)^[1].
struct ChainCertificate {
    FieldSpec field;
    int m = 0;
    std::string f_text;
    std::string g1_text, g2_text;
    std::vector<int> source_r, target_r;
    std::vector<IsoCertificate> links; // in path order
    std::vector<bool> descending;      // per link: true = traverse backward map
    std::vector<TranscriptEntry> chain_transcript;
};

/// Builds and fully verifies one reduction link at the leftmost index with
/// r_i >= 2. Any failing identity aborts with the failing entry printed.
IsoCertificate build_iso_certificate(const RingConfig& cfg, const BezoutPair& pair);

/// Builds the verified chain from source r down to (1,...,1) and back up to
/// the target vector, then re-verifies the composite on all generators.
ChainCertificate chain_reduce(const RingConfig& cfg, const BezoutPair& pair,
                              const std::vector<int>& target_r);

std::string serialize_certificate(const ChainCertificate& cert);
ChainCertificate parse_certificate(std::string_view text);

struct CertVerification {
    bool ok = true;
    std::vector<std::vector<TranscriptEntry>> link_entries;
    std::vector<TranscriptEntry> chain_entries;
    std::vector<TranscriptEntry> all() const;
    std::string str() const;
};

/// Re-checks every transcript entry of a (possibly untrusted) certificate
/// from its serialized content alone.
CertVerification verify_certificate(const ChainCertificate& cert);

} // namespace dani
