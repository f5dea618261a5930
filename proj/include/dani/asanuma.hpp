#pragma once

#include "dani/expmap.hpp"
#include "dani/ring.hpp"

namespace dani {

enum class HShapeKind { unit_h, linear_in_T, monic_Z_separable, unclassified };

std::string h_shape_name(HShapeKind k);

/// Syntactic classification of H in the given coordinates, with the witness
/// decomposition H = a0(Z) + a1(Z) T + Htilde(X, Z) when it applies. The
/// classification never claims anything about other coordinate systems.
struct AsanumaShape {
    HShapeKind kind = HShapeKind::unclassified;
    Polynomial a0, a1, htilde; // over the presentation universe X1..Xm,Z,T
    std::string detail;
};

AsanumaShape h_shape_classify(const RingSpecPtr& ring);

/// An invertible change of the (Z, T) coordinates: z1/t1 express the new
/// coordinates in the old ones, z_back/t_back the old in the new. All four
/// are polynomials over the two-variable universe {Z, T}; both composites
/// are verified to be the identity before the change is applied.
struct CoordinateChange {
    Polynomial z1, t1, z_back, t_back;

    static CoordinateChange parse(const FieldSpec& field, const std::string& z1_text,
                                  const std::string& t1_text, const std::string& z_back_text,
                                  const std::string& t_back_text);
};

/// Re-expresses H in the new coordinates and classifies again.
AsanumaShape h_shape_classify(const RingSpecPtr& ring, const CoordinateChange& change);

/// The row maps available when H = a0(Z) + a1(Z)T + Htilde with a1 != 0:
/// phi_j moves x_j by a1(z) W and t by the forced exact quotient; everything
/// else is fixed. Each map is verified, together with the invariance of the
/// claimed generators x_i (i != j), y, z.
struct Ml1Maps {
    AsanumaShape shape;
    std::vector<ExpMap> maps;                              // one per j = 1..m
    std::vector<std::vector<std::string>> claimed_invariant_gens;
};

Ml1Maps mk_ml1_maps(const RingSpecPtr& ring);

/// Self-contained verification of the two-variable unit-h example: the ring
/// k[x1,x2,y,z,t] with x1^2 x2^2 y = 1 + z^2 carries the translation map in
/// t; x1, x2, y, z stay fixed and t moves. Run over Q (exact stand-in for
/// the reals; every identity involved has rational coefficients).
struct Ex2Report {
    std::vector<std::pair<std::string, bool>> checks;
    std::string notes;
    bool ok() const;
    std::string str() const;
};

Ex2Report verify_ex2_suite();

} // namespace dani
