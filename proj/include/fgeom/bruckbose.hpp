#pragma once

#include <vector>

#include "fgeom/field.hpp"
#include "fgeom/projective.hpp"

namespace fgeom {

// The Bruck-Bose representation of PG(2,q^2) in PG(4,q). The hyperplane at
// infinity is x4 = 0; its lines are kept in 5-coordinate form throughout and
// converted to 4 coordinates only for the Klein map and quadric work.

/// q^2+1 pairwise disjoint lines covering the hyperplane x4 = 0.
struct Spread {
  std::vector<Subspace> lines;  // sorted canonical form
};

Subspace sigma_infty_subspace(int ambient = 5);
bool in_sigma_infty(const Subspace& s);

Subspace line5_to_line4(const Subspace& s);
Subspace line4_to_line5(const FieldTable& f, const Subspace& s);

/// The standard regular spread {p_inf} u {p_delta : delta in GF(q^2)}.
Spread std_regular_spread(const Fq2Config& cfg);

/// Affine point (alpha, beta, 1) of PG(2,q^2) -> (a0, a1, b0, b1, 1).
Pt bb_point_to_pg4(const Fq2Config& cfg, const Pt& p);

/// Inverse of bb_point_to_pg4.
Pt bb_pg4_to_point(const Fq2Config& cfg, const Pt& p);

bool is_spread(const FieldTable& f, const std::vector<Subspace>& lines);

/// Index of the spread line covering the given point of Sigma_inf, -1 if none.
int spread_line_index_through(const FieldTable& f, const Spread& s, const Pt& x);

/// The q+1 common transversals of three pairwise disjoint lines.
std::vector<Subspace> opposite_regulus(const FieldTable& f, const Subspace& l1,
                                       const Subspace& l2, const Subspace& l3);

/// The regulus determined by three pairwise disjoint lines (contains them).
std::vector<Subspace> regulus(const FieldTable& f, const Subspace& l1, const Subspace& l2,
                              const Subspace& l3);

/// True iff the regulus of every 3-subset of s is contained in s.
bool is_regular(const FieldTable& f, const Spread& s);

/// s \ r u r' where r' is the opposite regulus of r.
Spread reverse_regulus(const FieldTable& f, const Spread& s, const std::vector<Subspace>& r);

/// All distinct reguli contained in the spread, as sorted line sets, in
/// deterministic order.
std::vector<std::vector<Subspace>> spread_reguli(const FieldTable& f, const Spread& s);

/// A regulus of the regular spread s avoiding tN and t_inf whose derivation
/// set has tN and t_inf as conjugate points (Baer involution swaps them).
/// Requires h even.
std::vector<Subspace> conjugate_derivation_regulus(const FieldTable& f, const Spread& s,
                                                   const Subspace& tn, const Subspace& tinf);

/// The q^2+1 Bruck-Bose lines through an affine point: one plane per spread
/// line.
std::vector<Subspace> bb_lines_through(const FieldTable& f, const Pt& p, const Spread& s);

/// The unique line of P(S) through two distinct affine points, as a plane of
/// PG(4,q) containing a spread line.
Subspace bb_line_through(const FieldTable& f, const Spread& s, const Pt& a, const Pt& b);

// --- quadrics in Sigma_inf ~ PG(3,q) ---------------------------------------

/// Coefficients (x0^2, x1^2, x2^2, x3^2, x0x1, x0x2, x0x3, x1x2, x1x3, x2x3)
/// of the unique quadric through the given 4-coordinate points.
std::vector<unsigned> quadric_through(const FieldTable& f, const std::vector<Pt>& pts);

/// Polar of a line w.r.t. the (char-2 symplectic) bilinear form of a quadric;
/// empty subspace if degenerate.
Subspace polar_line(const FieldTable& f, const std::vector<unsigned>& quad, const Subspace& ln);

/// Baer-involution test: tN and t_inf are conjugate w.r.t. the derivation set
/// of regulus r iff the polarity of the hyperbolic quadric carrying r maps tN
/// to t_inf. Lines in 5-coordinate Sigma_inf form.
bool regulus_conjugate_pair(const FieldTable& f, const std::vector<Subspace>& r,
                            const Subspace& tn, const Subspace& tinf);

}  // namespace fgeom
