#pragma once

#include <utility>
#include <vector>

#include "fgeom/bruckbose.hpp"
#include "fgeom/ovals.hpp"
#include "fgeom/projective.hpp"

namespace fgeom {

// Constructive pipeline: from a Configuration satisfying (A1)-(A4), recover
// parallel classes, C-lines, the special lines, the exponent, a regular
// spread, and the translation-hyperoval fit.

struct ParallelStructure {
  std::vector<std::vector<int>> classes;  // q+1 classes of q c_plane indices
  std::vector<Subspace> c_lines;          // one line of Sigma_inf per class
};

struct SpecialLines {
  Subspace tn;    // lexicographically smaller of the two covering lines
  Subspace tinf;  // the other; the N / P_inf roles are fixed later by the fit
  std::vector<Pt> plus_points;   // 2(q+1) completion points
  std::vector<Pt> sharp_points;  // (q-1)(q+1) remaining C-line points
  std::vector<int> sharp_c_line;  // c_line index per sharp point
};

/// Parallel classes via the shared-C-point relation;
/// throws NotAffinePlane when the class structure fails the q+1 x q count.
ParallelStructure build_affine_plane(const Configuration& c);

/// Fills in the common Sigma_inf line of every class and checks pairwise
/// skewness; throws InconsistentClass.
void compute_c_lines(ParallelStructure& ps, const Configuration& c);

SpecialLines compute_special_lines(const ParallelStructure& ps, const Configuration& c);

struct ThreeSecantReport {
  bool passed = true;
  long lines_checked = 0;
  std::vector<Subspace> violations;
};

/// Three-secant property: every line joining sharp points on two distinct C-lines meets
/// exactly three C-lines, all in sharp points.
ThreeSecantReport verify_three_secant_lemma(const SpecialLines& sl, const ParallelStructure& ps,
                                            const Configuration& c);

/// Klein images of the C-lines: q+1 points on the Klein quadric, inside the
/// 3-space carrying the transversal congruence of (tN, t_inf), no four
/// coplanar. Throws StructureViolation.
std::vector<Pt> klein_arc(const FieldTable& f, const ParallelStructure& ps,
                          const SpecialLines& sl);

/// The bijection (point of tn) -> (point of tinf) induced by the C-lines,
/// in basis-chart values of [0, q] (q = infinity), sorted by domain value.
std::vector<std::pair<unsigned, unsigned>> transversal_permutation(const FieldTable& f,
                                                                   const ParallelStructure& ps,
                                                                   const SpecialLines& sl);

struct PowerFit {
  int n_mod_h = 0;
  Mat g;      // chart change on the domain (tn) side
  Mat h_map;  // chart change on the range (tinf) side
};

/// Finds fractional-linear chart changes g, h and n coprime to the field
/// degree with h o sigma o g^-1 = (x -> x^(2^n)); throws NotTranslationType.
PowerFit fit_power_exponent(const FieldTable& f,
                            const std::vector<std::pair<unsigned, unsigned>>& sigma);

/// Chart helpers on a line subspace: point a*r0 + b*r1 has value a/b
/// (infinity encoded as q).
unsigned line_chart(const FieldTable& f, const Subspace& line, const Pt& p);
Pt line_point(const FieldTable& f, const Subspace& line, unsigned value);

struct ReconstructionResult {
  SpecialLines special;
  int n_mod_h = 0;
  int n_lift = 0;              // exponent used over GF(q^2)
  Homography h;                // canonicalising homography of PG(4,q)
  Spread spread;               // regular spread in the original coordinates
  unsigned fit_constant = 0;   // c in x = c * y^(2^n_lift)
  bool tn_is_nucleus = true;   // role assignment for special.tn
  std::vector<Pt> canonical_points;  // C-points after the homography
};

ReconstructionResult reconstruct_spread(const Configuration& c);

}  // namespace fgeom
