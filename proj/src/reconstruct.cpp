#include "fgeom/reconstruct.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <unordered_set>

#include "fgeom/errors.hpp"

namespace fgeom {

namespace {

std::vector<std::vector<int>> plane_members(const Configuration& c) {
  std::vector<std::vector<int>> members(c.c_planes.size());
  const FieldTable& f = c.cfg.base;
  for (std::size_t pl = 0; pl < c.c_planes.size(); ++pl) {
    for (std::size_t i = 0; i < c.c_points.size(); ++i) {
      if (contains(f, c.c_planes[pl], c.c_points[i])) members[pl].push_back(static_cast<int>(i));
    }
  }
  return members;
}

bool members_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    a[i] < b[j] ? ++i : ++j;
  }
  return true;
}

Mat mat_mul(const FieldTable& f, const Mat& a, const Mat& b) {
  std::size_t n = a.size();
  Mat out(n, Pt(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        out[i][j] = f.add(out[i][j], f.mul(a[i][k], b[k][j]));
    }
  return out;
}

/// Enumerates (frame, exponent) pairs conjugating sigma to x -> x^(2^n) in
/// lexicographic order of the ordered point triple, calling cb for each until
/// it returns true. Returns whether any call succeeded.
template <class CB>
bool for_each_power_frame(const FieldTable& f,
                          const std::vector<std::pair<unsigned, unsigned>>& sigma, CB&& cb) {
  std::vector<int> exps;
  for (int n = 1; n < f.h; ++n)
    if (std::gcd(n, f.h) == 1) exps.push_back(n);
  std::size_t m = sigma.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        Mat g = mobius_to_std(f, sigma[i].first, sigma[j].first, sigma[k].first);
        Mat hm = mobius_to_std(f, sigma[i].second, sigma[j].second, sigma[k].second);
        for (int n : exps) {
          bool ok = true;
          for (const auto& [d, r] : sigma) {
            unsigned x = mobius_apply(f, g, d);
            unsigned want = x == f.q ? f.q : f.frob_pow(x, n);
            if (mobius_apply(f, hm, r) != want) {
              ok = false;
              break;
            }
          }
          if (ok && cb(PowerFit{n, g, hm})) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

ParallelStructure build_affine_plane(const Configuration& c) {
  auto members = plane_members(c);
  std::size_t m = c.c_planes.size();
  ParallelStructure ps;
  std::vector<bool> used(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (used[i]) continue;
    std::vector<int> cls{static_cast<int>(i)};
    used[i] = true;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!used[j] && members_disjoint(members[i], members[j])) {
        cls.push_back(static_cast<int>(j));
        used[j] = true;
      }
    }
    for (std::size_t a = 0; a < cls.size(); ++a)
      for (std::size_t b = a + 1; b < cls.size(); ++b)
        if (!members_disjoint(members[cls[a]], members[cls[b]]))
          throw NotAffinePlane("plane disjointness is not transitive");
    if (cls.size() != c.q)
      throw NotAffinePlane("parallel class has " + std::to_string(cls.size()) +
                           " planes, expected " + std::to_string(c.q));
    ps.classes.push_back(std::move(cls));
  }
  if (ps.classes.size() != c.q + 1)
    throw NotAffinePlane("found " + std::to_string(ps.classes.size()) +
                         " parallel classes, expected " + std::to_string(c.q + 1));
  return ps;
}

void compute_c_lines(ParallelStructure& ps, const Configuration& c) {
  const FieldTable& f = c.cfg.base;
  Subspace si = sigma_infty_subspace();
  ps.c_lines.clear();
  for (const auto& cls : ps.classes) {
    std::optional<Subspace> common;
    for (std::size_t a = 0; a < cls.size(); ++a) {
      for (std::size_t b = a + 1; b < cls.size(); ++b) {
        Subspace inter = meet(f, c.c_planes[cls[a]], c.c_planes[cls[b]]);
        if (inter.dim() != 1 || !subspace_le(f, inter, si))
          throw InconsistentClass("parallel planes must meet in a line at infinity");
        if (!common)
          common = inter;
        else if (*common != inter)
          throw InconsistentClass("parallel class has no common infinity line");
      }
    }
    ps.c_lines.push_back(*common);
  }
  for (std::size_t a = 0; a < ps.c_lines.size(); ++a)
    for (std::size_t b = a + 1; b < ps.c_lines.size(); ++b)
      if (!meet(f, ps.c_lines[a], ps.c_lines[b]).empty())
        throw InconsistentClass("C-lines are not pairwise skew");
}

SpecialLines compute_special_lines(const ParallelStructure& ps, const Configuration& c) {
  const FieldTable& f = c.cfg.base;
  if (ps.c_lines.size() != ps.classes.size())
    throw InconsistentClass("c_lines must be computed first");
  auto members = plane_members(c);

  std::vector<std::pair<Pt, Pt>> class_plus;
  for (std::size_t k = 0; k < ps.classes.size(); ++k) {
    std::optional<std::pair<Pt, Pt>> got;
    for (int pi : ps.classes[k]) {
      std::vector<Pt> arc;
      for (int idx : members[pi]) arc.push_back(c.c_points[idx]);
      auto pp = hyperoval_completion(f, c.c_planes[pi], arc);
      if (!got)
        got = pp;
      else if (*got != pp)
        throw StructureViolation("completion points differ within a parallel class");
    }
    if (!contains(f, ps.c_lines[k], got->first) || !contains(f, ps.c_lines[k], got->second))
      throw StructureViolation("completion points are off the class C-line");
    class_plus.push_back(*got);
  }

  // The two covering lines each pick one completion point per class, so they
  // appear among the four spans of a class-0 pick with a class-1 pick.
  std::vector<Subspace> covers;
  for (const Pt* x : {&class_plus[0].first, &class_plus[0].second}) {
    for (const Pt* y : {&class_plus[1].first, &class_plus[1].second}) {
      Subspace ln = span(f, {*x, *y});
      if (ln.dim() != 1) continue;
      bool ok = true;
      for (const auto& pr : class_plus) {
        int cnt = (contains(f, ln, pr.first) ? 1 : 0) + (contains(f, ln, pr.second) ? 1 : 0);
        if (cnt != 1) {
          ok = false;
          break;
        }
      }
      if (ok) covers.push_back(std::move(ln));
    }
  }
  if (covers.size() != 2 || !meet(f, covers[0], covers[1]).empty())
    throw StructureViolation("completion points are not covered by two disjoint lines");
  std::sort(covers.begin(), covers.end());

  SpecialLines sl;
  sl.tn = covers[0];
  sl.tinf = covers[1];
  for (const auto& pr : class_plus) {
    sl.plus_points.push_back(pr.first);
    sl.plus_points.push_back(pr.second);
  }
  std::sort(sl.plus_points.begin(), sl.plus_points.end());
  std::unordered_set<Pt, PtHash> plus_set(sl.plus_points.begin(), sl.plus_points.end());
  for (std::size_t k = 0; k < ps.c_lines.size(); ++k) {
    for (auto& p : subspace_points(f, ps.c_lines[k])) {
      if (plus_set.count(p)) continue;
      sl.sharp_points.push_back(std::move(p));
      sl.sharp_c_line.push_back(static_cast<int>(k));
    }
  }
  return sl;
}

ThreeSecantReport verify_three_secant_lemma(const SpecialLines& sl, const ParallelStructure& ps,
                                            const Configuration& c) {
  const FieldTable& f = c.cfg.base;
  ThreeSecantReport rep;
  std::unordered_set<Pt, PtHash> plus_set(sl.plus_points.begin(), sl.plus_points.end());
  std::unordered_set<Subspace, SubspaceHash> seen;
  std::size_t n = sl.sharp_points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sl.sharp_c_line[i] == sl.sharp_c_line[j]) continue;
      Subspace ln = span(f, {sl.sharp_points[i], sl.sharp_points[j]});
      if (!seen.insert(ln).second) continue;
      ++rep.lines_checked;
      int met = 0;
      bool sharp_only = true;
      for (const auto& cl : ps.c_lines) {
        Subspace x = meet(f, ln, cl);
        if (x.empty()) continue;
        ++met;
        if (plus_set.count(x.rows[0])) sharp_only = false;
      }
      if (met != 3 || !sharp_only) {
        rep.passed = false;
        rep.violations.push_back(ln);
      }
    }
  }
  return rep;
}

std::vector<Pt> klein_arc(const FieldTable& f, const ParallelStructure& ps,
                          const SpecialLines& sl) {
  Subspace tn4 = line5_to_line4(sl.tn);
  Subspace ti4 = line5_to_line4(sl.tinf);
  Mat gen;
  for (const auto& p : subspace_points(f, tn4))
    for (const auto& r : subspace_points(f, ti4)) gen.push_back(klein_map(f, span(f, {p, r})));
  Subspace sigma{6, rref(f, gen)};
  if (sigma.dim() != 3)
    throw StructureViolation("transversal congruence does not span a 3-space");

  std::vector<Pt> arc;
  for (const auto& cl : ps.c_lines) {
    Pt k = klein_map(f, line5_to_line4(cl));
    if (!on_klein_quadric(f, k)) throw StructureViolation("C-line image off the Klein quadric");
    if (!contains(f, sigma, k))
      throw StructureViolation("C-line image outside the transversal congruence 3-space");
    arc.push_back(std::move(k));
  }
  std::size_t m = arc.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t cc = b + 1; cc < m; ++cc)
        for (std::size_t d = cc + 1; d < m; ++d)
          if (rank(f, Mat{arc[a], arc[b], arc[cc], arc[d]}) < 4)
            throw StructureViolation("four Klein arc points are coplanar");
  return arc;
}

unsigned line_chart(const FieldTable& f, const Subspace& line, const Pt& p) {
  if (line.dim() != 1) throw DimensionError("chart requires a line");
  if (!contains(f, line, p)) throw DomainError("point is not on the line");
  auto pivot = [](const Pt& r) {
    int c = 0;
    while (r[c] == 0) ++c;
    return c;
  };
  return pg1_value(f, p[pivot(line.rows[0])], p[pivot(line.rows[1])]);
}

Pt line_point(const FieldTable& f, const Subspace& line, unsigned value) {
  if (line.dim() != 1) throw DimensionError("chart requires a line");
  auto rep = pg1_rep(f, value);
  Pt p(line.ambient, 0);
  for (int j = 0; j < line.ambient; ++j)
    p[j] = f.add(f.mul(rep[0], line.rows[0][j]), f.mul(rep[1], line.rows[1][j]));
  return normalized(f, std::move(p));
}

std::vector<std::pair<unsigned, unsigned>> transversal_permutation(const FieldTable& f,
                                                                   const ParallelStructure& ps,
                                                                   const SpecialLines& sl) {
  std::vector<std::pair<unsigned, unsigned>> out;
  std::vector<bool> dom(f.q + 2, false), rng(f.q + 2, false);
  for (const auto& cl : ps.c_lines) {
    Subspace a = meet(f, cl, sl.tn);
    Subspace b = meet(f, cl, sl.tinf);
    if (a.dim() != 0 || b.dim() != 0)
      throw StructureViolation("a C-line fails to meet a special line in one point");
    unsigned d = line_chart(f, sl.tn, a.rows[0]);
    unsigned r = line_chart(f, sl.tinf, b.rows[0]);
    if (dom[d] || rng[r]) throw StructureViolation("transversal map is not a bijection");
    dom[d] = rng[r] = true;
    out.emplace_back(d, r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PowerFit fit_power_exponent(const FieldTable& f,
                            const std::vector<std::pair<unsigned, unsigned>>& sigma) {
  if (sigma.size() != f.q + 1) throw DomainError("permutation must cover PG(1,q)");
  PowerFit out;
  bool found = for_each_power_frame(f, sigma, [&](const PowerFit& pf) {
    out = pf;
    return true;
  });
  if (!found)
    throw NotTranslationType("no fractional-linear frame conjugates the map to x -> x^(2^n)");
  return out;
}

ReconstructionResult reconstruct_spread(const Configuration& c) {
  const Fq2Config& cfg = c.cfg;
  const FieldTable& f = cfg.base;

  ParallelStructure ps;
  SpecialLines sl;
  try {
    ps = build_affine_plane(c);
    compute_c_lines(ps, c);
    sl = compute_special_lines(ps, c);
  } catch (const std::exception& e) {
    throw ReconstructionFailed(std::string("structure recovery failed: ") + e.what());
  }

  Spread std_spread = std_regular_spread(cfg);
  ReconstructionResult res;

  for (int role = 0; role < 2; ++role) {
    SpecialLines cur = sl;
    if (role == 1) std::swap(cur.tn, cur.tinf);
    std::vector<std::pair<unsigned, unsigned>> sigma;
    try {
      sigma = transversal_permutation(f, ps, cur);
    } catch (const StructureViolation& e) {
      throw ReconstructionFailed(std::string("transversal structure failed: ") + e.what());
    }
    Subspace tn4 = line5_to_line4(cur.tn);
    Subspace ti4 = line5_to_line4(cur.tinf);

    bool done = for_each_power_frame(f, sigma, [&](const PowerFit& pf) -> bool {
      // Frame points with chart images infinity, 0, 1 on each special line,
      // scaled so the infinity and zero representatives sum to the one-point.
      Mat ginv = mat_inverse(f, pf.g);
      Mat hinv = mat_inverse(f, pf.h_map);
      auto frame_pts = [&](const Subspace& line4, const Mat& inv) {
        return std::array<Pt, 3>{line_point(f, line4, mobius_apply(f, inv, f.q)),
                                 line_point(f, line4, mobius_apply(f, inv, 0u)),
                                 line_point(f, line4, mobius_apply(f, inv, 1u))};
      };
      auto u = frame_pts(tn4, ginv);
      auto w = frame_pts(ti4, hinv);
      auto rescale = [&](std::array<Pt, 3>& fr) {
        Mat sys;
        for (int r = 0; r < 4; ++r) sys.push_back(Pt{fr[0][r], fr[1][r], fr[2][r]});
        Mat red = rref(f, sys);
        if (red.size() != 2 || red[0][2] == 0 || red[1][2] == 0) return false;
        for (int r = 0; r < 4; ++r) {
          fr[0][r] = f.mul(red[0][2], fr[0][r]);
          fr[1][r] = f.mul(red[1][2], fr[1][r]);
        }
        return true;
      };
      if (!rescale(u) || !rescale(w)) return false;
      Mat cols(4, Pt(4, 0));
      for (int r = 0; r < 4; ++r) cols[r] = Pt{w[0][r], w[1][r], u[0][r], u[1][r]};
      Mat t4;
      try {
        t4 = mat_inverse(f, cols);
      } catch (const DomainError&) {
        return false;
      }

      for (int lift : {pf.n_mod_h, pf.n_mod_h + f.h}) {
        // only exponents coprime to 2h give hyperovals of the target plane
        if (std::gcd(lift, 2 * f.h) != 1) continue;
        auto [a0, a1] = cfg.decompose(cfg.frob_pow(cfg.tau(), lift));
        if (a1 == 0) continue;
        Mat m4{{1, a0, 0, 0}, {0, a1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
        Mat l4 = mat_mul(f, m4, t4);

        std::vector<Pt> img;
        img.reserve(c.c_points.size());
        for (const auto& p : c.c_points) {
          Pt x(5, 0);
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) x[i] = f.add(x[i], f.mul(l4[i][j], p[j]));
          x[4] = p[4];
          // affine chart: points are normalised to leading coefficient 1, not
          // to x4 = 1, so rescale before reading Bruck-Bose coordinates
          unsigned zi = f.inv(x[4]);
          for (auto& v : x) v = f.mul(v, zi);
          img.push_back(std::move(x));
        }
        Pt v = *std::min_element(img.begin(), img.end());
        for (auto& x : img)
          for (int i = 0; i < 4; ++i) x[i] = f.add(x[i], v[i]);

        unsigned cconst = 0;
        bool have = false, ok = true;
        for (const auto& x : img) {
          unsigned alpha = cfg.compose(x[0], x[1]);
          unsigned beta = cfg.compose(x[2], x[3]);
          if (beta == 0) {
            if (alpha != 0) {
              ok = false;
              break;
            }
            continue;
          }
          unsigned cand = cfg.div(alpha, cfg.frob_pow(beta, lift));
          if (!have) {
            cconst = cand;
            have = true;
          } else if (cand != cconst) {
            ok = false;
            break;
          }
        }
        if (!ok || !have || cconst == 0) continue;

        Mat phi(5, Pt(5, 0));
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 4; ++j) phi[i][j] = l4[i][j];
          phi[i][4] = v[i];
        }
        phi[4][4] = 1;
        res.h = make_homography(f, std::move(phi));
        res.special = sl;
        res.n_mod_h = pf.n_mod_h;
        res.n_lift = lift;
        res.fit_constant = cconst;
        res.tn_is_nucleus = role == 0;
        std::sort(img.begin(), img.end());
        res.canonical_points = std::move(img);
        res.spread.lines.clear();
        for (const auto& ln : std_spread.lines)
          res.spread.lines.push_back(apply_inverse(f, res.h, ln));
        std::sort(res.spread.lines.begin(), res.spread.lines.end());
        return true;
      }
      return false;
    });
    if (done) return res;
  }
  throw ReconstructionFailed("no role/frame/lift combination yields the power-law fit");
}

}  // namespace fgeom
