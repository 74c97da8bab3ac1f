#pragma once

#include <utility>
#include <vector>

#include "fgeom/bruckbose.hpp"
#include "fgeom/field.hpp"
#include "fgeom/projective.hpp"

namespace fgeom {

/// Parameters of the (scaled) translation hyperoval
/// {(s t^(2^n), s t, 1) : t in GF(q^2)} u {(1,0,0), (0,1,0)} in PG(2,q^2).
struct OvalSpec {
  Fq2Config cfg;
  int n = 1;
  unsigned s = 1;  // optional scale in GF(q^2), nonzero
};

/// The q^2 C-points (affine points of PG(4,q)) and the C-planes they
/// determine.
struct Configuration {
  Fq2Config cfg;
  unsigned q = 0;
  std::vector<Pt> c_points;        // sorted, normalised
  std::vector<Subspace> c_planes;  // sorted canonical
};

/// The q^2+2 hyperoval points in PG(2,q^2); throws InvalidExponent when the
/// exhaustive collinearity scan finds three collinear points.
std::vector<Pt> gen_translation_hyperoval(const OvalSpec& spec);

/// Bruck-Bose image of the affine oval points plus the q(q+1) C-planes,
/// built as spans of the oval points over the GF(q)-affine parameter lines
/// {a + lambda d} of GF(q^2).
Configuration forward_construct(const OvalSpec& spec);

/// The two points completing a q-arc of a plane to a hyperoval; throws
/// NotCompletable if the count differs from two.
std::pair<Pt, Pt> hyperoval_completion(const FieldTable& f, const Subspace& plane,
                                       const std::vector<Pt>& arc);

/// Classification of the q+1 lines of a plane through a point by their arc
/// intersection size. The plus-line (join of the two completion points) is
/// counted in zero_secants when present; through_plus_line records whether
/// the point lies on it.
struct SecantDistribution {
  int zero_secants = 0;
  int one_secants = 0;
  int two_secants = 0;
  bool through_plus_line = false;
  bool operator==(const SecantDistribution&) const = default;
};

SecantDistribution secant_distribution(const FieldTable& f, const Pt& x, const Subspace& plane,
                                       const std::vector<Pt>& arc);

}  // namespace fgeom
