#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "fgeom/bruckbose.hpp"
#include "fgeom/errors.hpp"
#include "fgeom/field.hpp"
#include "fgeom/projective.hpp"

using namespace fgeom;

namespace {

Fq2Config make_cfg(int h) { return find_primitive_quadratic(FieldTable::with_default_poly(h)); }

// Label each line of the standard spread by its element of GF(q^2) u {inf}
// (p_delta -> delta, p_inf -> q^2), rebuilt from the defining spans.
std::unordered_map<Subspace, unsigned, SubspaceHash> spread_labels(const Fq2Config& cfg) {
  const FieldTable& f = cfg.base;
  std::unordered_map<Subspace, unsigned, SubspaceHash> lab;
  lab[span(f, {Pt{0, 0, 1, 0, 0}, Pt{0, 0, 0, 1, 0}})] = cfg.q2;
  for (unsigned delta = 0; delta < cfg.q2; ++delta) {
    auto [d0, d1] = cfg.decompose(delta);
    Pt r1{1, 0, d0, d1, 0};
    Pt r2{0, 1, f.mul(cfg.t0, d1), f.add(d0, f.mul(cfg.t1, d1))};
    r2.push_back(0);
    lab[span(f, {r1, r2})] = delta;
  }
  return lab;
}

unsigned frob_label(const Fq2Config& cfg, unsigned v) {
  return v == cfg.q2 ? v : cfg.frob_pow(v, cfg.base.h);  // z -> z^q, fixing inf
}

// Independent conjugacy oracle: move the circle (Baer subline of labels) to
// GF(q) u {inf} with a fractional-linear chart, apply z -> z^q, move back.
// Two labels are conjugate w.r.t. the circle iff this involution swaps them.
bool baer_conjugate(const Fq2Config& cfg, const std::vector<unsigned>& circle, unsigned u,
                    unsigned v) {
  Mat m = mobius_to_std(cfg, circle[0], circle[1], circle[2]);
  Mat minv = mat_inverse(cfg, m);
  unsigned w = frob_label(cfg, mobius_apply(cfg, m, u));
  return mobius_apply(cfg, minv, w) == v;
}

// The chart must send every circle label into the subfield chart GF(q) u {inf}.
bool is_baer_subline(const Fq2Config& cfg, const std::vector<unsigned>& circle) {
  Mat m = mobius_to_std(cfg, circle[0], circle[1], circle[2]);
  for (unsigned c : circle) {
    unsigned w = mobius_apply(cfg, m, c);
    if (w != cfg.q2 && cfg.decompose(w).second != 0) return false;
  }
  return true;
}

std::vector<unsigned> regulus_circle(const Fq2Config& cfg,
                                     const std::unordered_map<Subspace, unsigned, SubspaceHash>& lab,
                                     const std::vector<Subspace>& reg) {
  std::vector<unsigned> circle;
  for (const auto& l : reg) circle.push_back(lab.at(l));
  return circle;
}

}  // namespace

TEST_CASE("standard spread is a regular spread") {
  for (int h : {2, 3}) {
    Fq2Config cfg = make_cfg(h);
    const FieldTable& f = cfg.base;
    Spread s = std_regular_spread(cfg);
    CHECK(s.lines.size() == f.q * f.q + 1);
    CHECK(is_spread(f, s.lines));
    CHECK(is_regular(f, s));
    CHECK(std::is_sorted(s.lines.begin(), s.lines.end()));
    // every point of Sigma_inf is on exactly one line
    for (const auto& x4 : enumerate_points(f, 3)) {
      Pt x = x4;
      x.push_back(0);
      CHECK(spread_line_index_through(f, s, x) >= 0);
    }
  }
}

TEST_CASE("spread rejects broken line families") {
  Fq2Config cfg = make_cfg(2);
  const FieldTable& f = cfg.base;
  Spread s = std_regular_spread(cfg);
  auto short_set = s.lines;
  short_set.pop_back();
  CHECK_FALSE(is_spread(f, short_set));
  auto dup = s.lines;
  dup.back() = dup.front();  // two lines share points
  CHECK_FALSE(is_spread(f, dup));
}

TEST_CASE("Bruck-Bose point map is a bijection on affine points") {
  Fq2Config cfg = make_cfg(4);  // q = 16
  std::set<Pt> images;
  for (unsigned a = 0; a < cfg.q2; ++a) {
    for (unsigned b = 0; b < cfg.q2; ++b) {
      Pt p{a, b, 1};
      Pt img = bb_point_to_pg4(cfg, p);
      CHECK(img[4] != 0);
      CHECK(bb_pg4_to_point(cfg, img) == normalized(cfg, p));
      images.insert(std::move(img));
    }
  }
  CHECK(images.size() == static_cast<std::size_t>(cfg.q2) * cfg.q2);
  // non-normalised input agrees with its normalisation
  Pt scaled{cfg.mul(3, 5), cfg.mul(3, 7), 3};
  CHECK(bb_point_to_pg4(cfg, scaled) == bb_point_to_pg4(cfg, Pt{5, 7, 1}));
  CHECK_THROWS_AS(bb_point_to_pg4(cfg, Pt{1, 0, 0}), DomainError);
  CHECK_THROWS_AS(bb_pg4_to_point(cfg, Pt{1, 0, 0, 0, 0}), DomainError);
  CHECK_THROWS_AS(bb_point_to_pg4(cfg, Pt{1, 0}), DimensionError);
}

TEST_CASE("Sigma_inf helpers and 4/5 coordinate conversion") {
  Fq2Config cfg = make_cfg(2);
  const FieldTable& f = cfg.base;
  Subspace si = sigma_infty_subspace();
  CHECK(si.dim() == 3);
  CHECK(in_sigma_infty(si));
  for (const auto& l : std_regular_spread(cfg).lines) {
    CHECK(in_sigma_infty(l));
    CHECK(line4_to_line5(f, line5_to_line4(l)) == l);
  }
  Subspace affine = span(f, {Pt{1, 0, 0, 0, 1}, Pt{0, 1, 0, 0, 0}});
  CHECK_FALSE(in_sigma_infty(affine));
  CHECK_THROWS_AS(line5_to_line4(affine), DimensionError);
}

TEST_CASE("regulus and opposite regulus") {
  Fq2Config cfg = make_cfg(2);
  const FieldTable& f = cfg.base;
  Spread s = std_regular_spread(cfg);
  Subspace l1 = line5_to_line4(s.lines[0]);
  Subspace l2 = line5_to_line4(s.lines[3]);
  Subspace l3 = line5_to_line4(s.lines[9]);

  auto opp = opposite_regulus(f, l1, l2, l3);
  CHECK(opp.size() == f.q + 1);
  for (const auto& t : opp) {
    CHECK(t.dim() == 1);
    // every transversal meets each of the three defining lines
    CHECK_FALSE(meet(f, t, l1).empty());
    CHECK_FALSE(meet(f, t, l2).empty());
    CHECK_FALSE(meet(f, t, l3).empty());
  }
  // transversals are pairwise disjoint
  for (std::size_t i = 0; i < opp.size(); ++i)
    for (std::size_t j = i + 1; j < opp.size(); ++j) CHECK(meet(f, opp[i], opp[j]).empty());

  auto reg = regulus(f, l1, l2, l3);
  CHECK(reg.size() == f.q + 1);
  CHECK(std::binary_search(reg.begin(), reg.end(), l1));
  CHECK(std::binary_search(reg.begin(), reg.end(), l2));
  CHECK(std::binary_search(reg.begin(), reg.end(), l3));
  // opposite of the opposite recovers the regulus
  auto back = opposite_regulus(f, opp[0], opp[1], opp[2]);
  CHECK(back == reg);
  // every regulus line meets every opposite line
  for (const auto& a : reg)
    for (const auto& b : opp) CHECK_FALSE(meet(f, a, b).empty());

  Subspace meets_l1 = span(f, {l1.rows[0], Pt{0, 0, 1, 1}});
  CHECK_THROWS_AS(opposite_regulus(f, l1, meets_l1, l3), DomainError);
}

TEST_CASE("the regular spread carries exactly 68 reguli at q = 4") {
  Fq2Config cfg = make_cfg(2);
  const FieldTable& f = cfg.base;
  Spread s = std_regular_spread(cfg);
  auto regs = spread_reguli(f, s);
  // C(17,3) triples of lines / C(5,3) triples per regulus = 680/10
  CHECK(regs.size() == 68);
  std::set<std::vector<Subspace>> distinct(regs.begin(), regs.end());
  CHECK(distinct.size() == regs.size());
  for (const auto& reg : regs) {
    CHECK(reg.size() == f.q + 1);
    for (const auto& l : reg) CHECK(std::binary_search(s.lines.begin(), s.lines.end(), l));
  }
  // determinism
  CHECK(spread_reguli(f, s) == regs);
}

TEST_CASE("reversing a regulus yields a non-regular spread") {
  Fq2Config cfg = make_cfg(2);
  const FieldTable& f = cfg.base;
  Spread s = std_regular_spread(cfg);
  auto regs = spread_reguli(f, s);
  Spread hall = reverse_regulus(f, s, regs.front());
  CHECK(is_spread(f, hall.lines));
  CHECK_FALSE(is_regular(f, hall));
  // shares exactly q^2 - q lines with the original
  std::vector<Subspace> common;
  std::set_intersection(s.lines.begin(), s.lines.end(), hall.lines.begin(), hall.lines.end(),
                        std::back_inserter(common));
  CHECK(common.size() == s.lines.size() - (f.q + 1));
  // reversing the opposite regulus restores the regular spread
  std::vector<Subspace> opp;
  std::set_difference(hall.lines.begin(), hall.lines.end(), s.lines.begin(), s.lines.end(),
                      std::back_inserter(opp));
  CHECK(reverse_regulus(f, hall, opp).lines == s.lines);

  CHECK_THROWS_AS(reverse_regulus(f, s, {s.lines[0], s.lines[1]}), DomainError);
  CHECK_THROWS_AS(reverse_regulus(f, hall, regs.front()), DomainError);  // not contained
}

TEST_CASE("regulus conjugacy matches the Baer involution on labels") {
  Fq2Config cfg = make_cfg(2);
  const FieldTable& f = cfg.base;
  Spread s = std_regular_spread(cfg);
  auto lab = spread_labels(cfg);
  auto regs = spread_reguli(f, s);
  REQUIRE(lab.size() == s.lines.size());

  for (const auto& reg : regs) {
    auto circle = regulus_circle(cfg, lab, reg);
    CHECK(is_baer_subline(cfg, circle));
    for (const auto& a : s.lines) {
      for (const auto& b : s.lines) {
        bool expect = baer_conjugate(cfg, circle, lab.at(a), lab.at(b));
        CHECK(regulus_conjugate_pair(f, reg, a, b) == expect);
      }
    }
  }
}

TEST_CASE("regulus conjugacy oracle holds on sampled reguli at q = 8") {
  Fq2Config cfg = make_cfg(3);
  const FieldTable& f = cfg.base;
  Spread s = std_regular_spread(cfg);
  auto lab = spread_labels(cfg);
  auto regs = spread_reguli(f, s);
  CHECK(regs.size() > 0);
  for (std::size_t r = 0; r < regs.size(); r += 101) {
    auto circle = regulus_circle(cfg, lab, regs[r]);
    CHECK(is_baer_subline(cfg, circle));
    for (std::size_t i = 0; i < s.lines.size(); i += 7) {
      for (std::size_t j = 0; j < s.lines.size(); j += 5) {
        bool expect = baer_conjugate(cfg, circle, lab.at(s.lines[i]), lab.at(s.lines[j]));
        CHECK(regulus_conjugate_pair(f, regs[r], s.lines[i], s.lines[j]) == expect);
      }
    }
  }
}

TEST_CASE("quadric through a regulus and polar lines") {
  Fq2Config cfg = make_cfg(2);
  const FieldTable& f = cfg.base;
  Spread s = std_regular_spread(cfg);
  auto reg = spread_reguli(f, s).front();
  std::vector<Pt> pts;
  for (const auto& l : reg)
    for (auto& p : subspace_points(f, line5_to_line4(l))) pts.push_back(std::move(p));
  auto quad = quadric_through(f, pts);
  // evaluate the form on every collected point: all must vanish
  for (const auto& p : pts) {
    unsigned v = 0;
    int c = 0;
    for (int i = 0; i < 4; ++i) v = f.add(v, f.mul(quad[c++], f.mul(p[i], p[i])));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) v = f.add(v, f.mul(quad[c++], f.mul(p[i], p[j])));
    CHECK(v == 0);
  }
  // the polarity is an involution on lines off the quadric
  Subspace tn = line5_to_line4(span(f, {Pt{0, 0, 1, 0, 0}, Pt{0, 0, 0, 1, 0}}));
  Subspace polar = polar_line(f, quad, tn);
  if (polar.dim() == 1) CHECK(polar_line(f, quad, polar) == tn);
  // regulus generators are self-polar under the symplectic form
  for (const auto& l : reg) {
    Subspace l4 = line5_to_line4(l);
    CHECK(polar_line(f, quad, l4) == l4);
  }
  CHECK_THROWS_AS(quadric_through(f, std::vector<Pt>{Pt{1, 0, 0, 0}}), DomainError);
}

TEST_CASE("conjugate derivation regulus") {
  Fq2Config cfg = make_cfg(2);
  const FieldTable& f = cfg.base;
  Spread s = std_regular_spread(cfg);
  Subspace tn = span(f, {Pt{0, 0, 1, 0, 0}, Pt{0, 0, 0, 1, 0}});
  Subspace tinf = span(f, {Pt{1, 0, 0, 0, 0}, Pt{0, 1, 0, 0, 0}});
  auto reg = conjugate_derivation_regulus(f, s, tn, tinf);
  CHECK(reg.size() == f.q + 1);
  CHECK_FALSE(std::binary_search(reg.begin(), reg.end(), tn));
  CHECK_FALSE(std::binary_search(reg.begin(), reg.end(), tinf));
  for (const auto& l : reg) CHECK(std::binary_search(s.lines.begin(), s.lines.end(), l));
  CHECK(regulus_conjugate_pair(f, reg, tn, tinf));
  CHECK(regulus_conjugate_pair(f, reg, tinf, tn));
  // and against the independent label oracle
  auto lab = spread_labels(cfg);
  CHECK(baer_conjugate(cfg, regulus_circle(cfg, lab, reg), cfg.q2, 0));

  // h odd: no such construction
  Fq2Config cfg8 = make_cfg(3);
  Spread s8 = std_regular_spread(cfg8);
  Subspace tn8 = span(cfg8.base, {Pt{0, 0, 1, 0, 0}, Pt{0, 0, 0, 1, 0}});
  Subspace tinf8 = span(cfg8.base, {Pt{1, 0, 0, 0, 0}, Pt{0, 1, 0, 0, 0}});
  CHECK_THROWS_AS(conjugate_derivation_regulus(cfg8.base, s8, tn8, tinf8), DomainError);
  // lines must belong to the spread
  Spread missing{std::vector<Subspace>(s.lines.begin() + 1, s.lines.end())};
  CHECK_THROWS_AS(conjugate_derivation_regulus(f, missing, tn, tinf), DomainError);
}

TEST_CASE("Bruck-Bose lines through affine points") {
  Fq2Config cfg = make_cfg(2);
  const FieldTable& f = cfg.base;
  Spread s = std_regular_spread(cfg);
  Pt p = bb_point_to_pg4(cfg, Pt{7, 9, 1});
  auto planes = bb_lines_through(f, p, s);
  CHECK(planes.size() == s.lines.size());
  for (std::size_t i = 0; i < planes.size(); ++i) {
    CHECK(planes[i].dim() == 2);
    CHECK(contains(f, planes[i], p));
    CHECK(subspace_le(f, s.lines[i], planes[i]));
    // two Bruck-Bose lines through p share only p and points at infinity
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      Subspace m = meet(f, planes[i], planes[j]);
      CHECK(m.dim() == 0);
      CHECK(m.rows[0] == p);
    }
  }
  // the line through two affine points is one of the pencil members
  Pt b = bb_point_to_pg4(cfg, Pt{2, 11, 1});
  Subspace ln = bb_line_through(f, s, p, b);
  CHECK(contains(f, ln, p));
  CHECK(contains(f, ln, b));
  CHECK(std::count(planes.begin(), planes.end(), ln) == 1);
  // agrees with the PG(2,q^2) line through the two preimages
  CHECK_THROWS_AS(bb_line_through(f, s, p, p), DomainError);
  Pt inf_pt{1, 0, 0, 0, 0};
  CHECK_THROWS_AS(bb_lines_through(f, inf_pt, s), DomainError);
}
