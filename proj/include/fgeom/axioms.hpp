#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fgeom/bruckbose.hpp"
#include "fgeom/ovals.hpp"
#include "fgeom/projective.hpp"

namespace fgeom {

// Verifier for hypotheses (A1)-(A4) against an arbitrary Configuration.
// Failures are reported with witnesses, never raised.

struct A1Result {
  bool passed = true;
  std::vector<Subspace> witnesses;  // planes with |plane ^ C| != q or 3 collinear
  std::vector<int> plane_arc_sizes;
};

struct A2Result {
  bool passed = true;
  long pairs_covered_once = 0;
  std::vector<std::pair<Pt, Pt>> uncovered;
  std::vector<std::pair<Pt, Pt>> multiply_covered;
};

struct A3Result {
  bool passed = true;
  long non_c_affine_points = 0;
  std::vector<std::pair<Pt, int>> witnesses;  // point, plane-membership count
  std::vector<long> membership_histogram;     // index = number of planes through the point
};

struct A4Result {
  bool passed = true;
  long planes_scanned = 0;
  std::vector<Subspace> witnesses;  // triple-span planes with bad C-count
};

struct AxiomReport {
  std::optional<A1Result> a1;
  std::optional<A2Result> a2;
  std::optional<A3Result> a3;
  std::optional<A4Result> a4;

  bool all_passed() const {
    return (!a1 || a1->passed) && (!a2 || a2->passed) && (!a3 || a3->passed) &&
           (!a4 || a4->passed);
  }
};

A1Result verify_A1(const Configuration& c);
A2Result verify_A2(const Configuration& c);
A3Result verify_A3(const Configuration& c);
A4Result verify_A4(const Configuration& c);
AxiomReport verify_all(const Configuration& c);

/// Spread-condition check. side_a: in P(s), C together with tN and t_inf as points
/// of l_inf meets every line in at most two points. side_b: every spread line
/// other than tN and t_inf meets exactly one C-line.
struct SpreadConditionReport {
  bool side_a = false;
  bool side_b = false;
  bool biconditional_holds = false;
  std::vector<int> per_line_c_line_counts;  // indexed like s.lines, -1 for tN/t_inf
  std::optional<Subspace> side_a_witness;   // a violating Bruck-Bose line
};

SpreadConditionReport check_spread_condition(const Configuration& c, const Spread& s,
                                             const Subspace& tn, const Subspace& tinf,
                                             const std::vector<Subspace>& c_lines);

}  // namespace fgeom
