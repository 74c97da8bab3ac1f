#include "fgeom/ovals.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "fgeom/errors.hpp"

namespace fgeom {

namespace {

unsigned det3(const Fq2Config& f, const Pt& a, const Pt& b, const Pt& c) {
  auto m2 = [&](unsigned x, unsigned y, unsigned z, unsigned w) {
    return f.add(f.mul(x, w), f.mul(y, z));  // char 2
  };
  unsigned d = 0;
  d = f.add(d, f.mul(a[0], m2(b[1], b[2], c[1], c[2])));
  d = f.add(d, f.mul(a[1], m2(b[0], b[2], c[0], c[2])));
  d = f.add(d, f.mul(a[2], m2(b[0], b[1], c[0], c[1])));
  return d;
}

}  // namespace

std::vector<Pt> gen_translation_hyperoval(const OvalSpec& spec) {
  const Fq2Config& f = spec.cfg;
  if (spec.s == 0) throw DomainError("oval scale must be nonzero");
  if (spec.n < 0) throw InvalidExponent("negative exponent");
  std::vector<Pt> pts;
  pts.reserve(f.q2 + 2);
  for (unsigned t = 0; t < f.q2; ++t) {
    pts.push_back(normalized(
        f, Pt{f.mul(spec.s, f.frob_pow(t, spec.n)), f.mul(spec.s, t), 1}));
  }
  pts.push_back(Pt{1, 0, 0});
  pts.push_back(Pt{0, 1, 0});
  std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        if (det3(f, pts[i], pts[j], pts[k]) == 0)
          throw InvalidExponent("exponent 2^" + std::to_string(spec.n) +
                                " does not yield an arc: collinear triple found");
  std::sort(pts.begin(), pts.end());
  return pts;
}

Configuration forward_construct(const OvalSpec& spec) {
  const Fq2Config& cfg = spec.cfg;
  const FieldTable& f = cfg.base;
  gen_translation_hyperoval(spec);  // arc check; throws InvalidExponent

  auto oval_pt = [&](unsigned t) {
    return bb_point_to_pg4(
        cfg, Pt{cfg.mul(spec.s, cfg.frob_pow(t, spec.n)), cfg.mul(spec.s, t), 1});
  };

  Configuration c{cfg, f.q, {}, {}};
  for (unsigned t = 0; t < cfg.q2; ++t) c.c_points.push_back(oval_pt(t));
  std::sort(c.c_points.begin(), c.c_points.end());

  // A Baer subplane secant to l_inf meets the oval in q points exactly when
  // the parameter set is a GF(q)-affine line {a + lambda*d} of GF(q^2); the
  // corresponding plane of PG(4,q) is spanned by those q Bruck-Bose images.
  // Note |plane ^ C| = q does NOT single these out at q = 4, where every
  // plane on three C-points has exactly four.
  Spread spread = std_regular_spread(cfg);
  std::unordered_set<Subspace, SubspaceHash> spread_set(spread.lines.begin(), spread.lines.end());
  Subspace si = sigma_infty_subspace();
  std::set<std::vector<unsigned>> seen;
  for (unsigned t1 = 0; t1 < cfg.q2; ++t1) {
    for (unsigned t2 = t1 + 1; t2 < cfg.q2; ++t2) {
      unsigned d = cfg.add(t1, t2);
      std::vector<unsigned> params;
      for (unsigned lam = 0; lam < f.q; ++lam)
        params.push_back(cfg.add(t1, cfg.mul(cfg.compose(lam, 0), d)));
      std::sort(params.begin(), params.end());
      if (!seen.insert(params).second) continue;
      std::vector<Pt> pts;
      for (unsigned t : params) pts.push_back(oval_pt(t));
      Subspace plane = span(f, pts);
      if (plane.dim() != 2) throw DomainError("parameter line does not span a plane");
      unsigned count = 0;
      for (const auto& p : c.c_points)
        if (contains(f, plane, p)) ++count;
      if (count != f.q) throw DomainError("C-plane meets C in the wrong number of points");
      if (spread_set.count(meet(f, plane, si)))
        throw DomainError("C-plane contains a spread line");
      c.c_planes.push_back(std::move(plane));
    }
  }
  std::sort(c.c_planes.begin(), c.c_planes.end());
  return c;
}

std::pair<Pt, Pt> hyperoval_completion(const FieldTable& f, const Subspace& plane,
                                       const std::vector<Pt>& arc) {
  if (f.q <= 2) throw DomainError("completion requires q > 2");
  std::unordered_set<Pt, PtHash> arc_set(arc.begin(), arc.end());
  std::unordered_set<Pt, PtHash> on_secant;
  for (std::size_t i = 0; i < arc.size(); ++i) {
    for (std::size_t j = i + 1; j < arc.size(); ++j) {
      for (auto& p : subspace_points(f, span(f, {arc[i], arc[j]}))) on_secant.insert(std::move(p));
    }
  }
  std::vector<Pt> completion;
  for (auto& p : subspace_points(f, plane)) {
    if (arc_set.count(p) || on_secant.count(p)) continue;
    completion.push_back(std::move(p));
  }
  if (completion.size() != 2)
    throw NotCompletable("expected 2 completion points, found " +
                         std::to_string(completion.size()));
  std::sort(completion.begin(), completion.end());
  return {completion[0], completion[1]};
}

SecantDistribution secant_distribution(const FieldTable& f, const Pt& x, const Subspace& plane,
                                       const std::vector<Pt>& arc) {
  if (!contains(f, plane, x)) throw DomainError("point is not in the plane");
  for (const auto& a : arc)
    if (a == x) throw DomainError("secant distribution is undefined at arc points");

  auto [p1, p2] = hyperoval_completion(f, plane, arc);
  Subspace plus_line = span(f, {p1, p2});

  SecantDistribution d;
  d.through_plus_line = contains(f, plus_line, x);
  std::unordered_set<Subspace, SubspaceHash> seen;
  for (const auto& y : subspace_points(f, plane)) {
    if (y == x) continue;
    Subspace ln = span(f, {x, y});
    if (!seen.insert(ln).second) continue;
    int hits = 0;
    for (const auto& a : arc)
      if (contains(f, ln, a)) ++hits;
    if (hits == 0)
      ++d.zero_secants;
    else if (hits == 1)
      ++d.one_secants;
    else if (hits == 2)
      ++d.two_secants;
    else
      throw DomainError("input is not an arc: a line meets it in 3+ points");
  }
  return d;
}

}  // namespace fgeom
