#include "fgeom/bruckbose.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "fgeom/errors.hpp"

namespace fgeom {

Subspace sigma_infty_subspace(int ambient) {
  Mat rows;
  for (int i = 0; i + 1 < ambient; ++i) {
    Pt r(ambient, 0);
    r[i] = 1;
    rows.push_back(std::move(r));
  }
  return Subspace{ambient, std::move(rows)};
}

bool in_sigma_infty(const Subspace& s) {
  for (const auto& r : s.rows) {
    if (r.back() != 0) return false;
  }
  return true;
}

Subspace line5_to_line4(const Subspace& s) {
  if (!in_sigma_infty(s)) throw DimensionError("line is not contained in Sigma_inf");
  Mat rows;
  for (const auto& r : s.rows) rows.emplace_back(r.begin(), r.end() - 1);
  return Subspace{4, std::move(rows)};
}

Subspace line4_to_line5(const FieldTable& f, const Subspace& s) {
  Mat rows;
  for (const auto& r : s.rows) {
    Pt v = r;
    v.push_back(0);
    rows.push_back(std::move(v));
  }
  return Subspace{5, rref(f, rows)};
}

Spread std_regular_spread(const Fq2Config& cfg) {
  const FieldTable& f = cfg.base;
  Spread s;
  s.lines.push_back(span(f, {Pt{0, 0, 1, 0, 0}, Pt{0, 0, 0, 1, 0}}));  // p_inf
  for (unsigned delta = 0; delta < cfg.q2; ++delta) {
    auto [d0, d1] = cfg.decompose(delta);
    Pt r1{1, 0, d0, d1, 0};
    Pt r2{0, 1, f.mul(cfg.t0, d1), f.add(d0, f.mul(cfg.t1, d1)), 0};
    s.lines.push_back(span(f, {r1, r2}));
  }
  std::sort(s.lines.begin(), s.lines.end());
  return s;
}

Pt bb_point_to_pg4(const Fq2Config& cfg, const Pt& p) {
  if (p.size() != 3) throw DimensionError("expected a point of PG(2,q^2)");
  if (p[2] == 0) throw DomainError("point on the line at infinity has no affine image");
  unsigned zi = cfg.inv(p[2]);
  auto [a0, a1] = cfg.decompose(cfg.mul(p[0], zi));
  auto [b0, b1] = cfg.decompose(cfg.mul(p[1], zi));
  return normalized(cfg.base, Pt{a0, a1, b0, b1, 1});
}

Pt bb_pg4_to_point(const Fq2Config& cfg, const Pt& p) {
  if (p.size() != 5) throw DimensionError("expected a point of PG(4,q)");
  if (p[4] == 0) throw DomainError("point of Sigma_inf has no PG(2,q^2) point image");
  const FieldTable& f = cfg.base;
  unsigned zi = f.inv(p[4]);
  unsigned alpha = cfg.compose(f.mul(p[0], zi), f.mul(p[1], zi));
  unsigned beta = cfg.compose(f.mul(p[2], zi), f.mul(p[3], zi));
  return normalized(cfg, Pt{alpha, beta, 1});
}

bool is_spread(const FieldTable& f, const std::vector<Subspace>& lines) {
  unsigned q = f.size();
  if (lines.size() != static_cast<std::size_t>(q) * q + 1) return false;
  std::unordered_set<Pt, PtHash> covered;
  for (const auto& l : lines) {
    if (l.dim() != 1 || !in_sigma_infty(l)) return false;
    for (auto& p : subspace_points(f, l)) {
      if (!covered.insert(std::move(p)).second) return false;
    }
  }
  // q^2+1 disjoint lines cover (q+1)(q^2+1) points = all of Sigma_inf
  return covered.size() == static_cast<std::size_t>(q + 1) * (q * q + 1);
}

int spread_line_index_through(const FieldTable& f, const Spread& s, const Pt& x) {
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    if (contains(f, s.lines[i], x)) return static_cast<int>(i);
  }
  return -1;
}

namespace {

/// Unique transversal of two disjoint lines through an external point, all
/// inside a common 3-space.
Subspace transversal_through(const FieldTable& f, const Pt& p, const Subspace& l1,
                             const Subspace& l2) {
  Subspace pl1 = join(f, span(f, {p}), l1);
  Subspace pl2 = join(f, span(f, {p}), l2);
  return meet(f, pl1, pl2);
}

}  // namespace

std::vector<Subspace> opposite_regulus(const FieldTable& f, const Subspace& l1,
                                       const Subspace& l2, const Subspace& l3) {
  if (!meet(f, l1, l2).empty() || !meet(f, l1, l3).empty() || !meet(f, l2, l3).empty())
    throw DomainError("regulus requires pairwise disjoint lines");
  std::vector<Subspace> out;
  for (const auto& p : subspace_points(f, l3)) {
    Subspace t = transversal_through(f, p, l1, l2);
    if (t.dim() != 1) throw DomainError("degenerate transversal");
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> regulus(const FieldTable& f, const Subspace& l1, const Subspace& l2,
                              const Subspace& l3) {
  auto opp = opposite_regulus(f, l1, l2, l3);
  auto reg = opposite_regulus(f, opp[0], opp[1], opp[2]);
  return reg;
}

bool is_regular(const FieldTable& f, const Spread& s) {
  std::size_t n = s.lines.size();
  std::set<std::array<int, 3>> covered;
  for (int i = 0; i < static_cast<int>(n); ++i) {
    for (int j = i + 1; j < static_cast<int>(n); ++j) {
      for (int k = j + 1; k < static_cast<int>(n); ++k) {
        if (covered.count({i, j, k})) continue;
        auto reg = regulus(f, s.lines[i], s.lines[j], s.lines[k]);
        std::vector<int> idx;
        for (const auto& l : reg) {
          auto it = std::lower_bound(s.lines.begin(), s.lines.end(), l);
          if (it == s.lines.end() || !(*it == l)) return false;
          idx.push_back(static_cast<int>(it - s.lines.begin()));
        }
        std::sort(idx.begin(), idx.end());
        for (std::size_t a = 0; a < idx.size(); ++a)
          for (std::size_t b = a + 1; b < idx.size(); ++b)
            for (std::size_t c = b + 1; c < idx.size(); ++c)
              covered.insert({idx[a], idx[b], idx[c]});
      }
    }
  }
  return true;
}

Spread reverse_regulus(const FieldTable& f, const Spread& s, const std::vector<Subspace>& r) {
  if (r.size() != f.size() + 1) throw DomainError("regulus has wrong size");
  std::vector<Subspace> keep;
  std::vector<Subspace> reg = r;
  std::sort(reg.begin(), reg.end());
  for (const auto& l : s.lines) {
    if (!std::binary_search(reg.begin(), reg.end(), l)) keep.push_back(l);
  }
  if (s.lines.size() - keep.size() != reg.size())
    throw DomainError("regulus is not contained in the spread");
  auto opp = opposite_regulus(f, reg[0], reg[1], reg[2]);
  keep.insert(keep.end(), opp.begin(), opp.end());
  std::sort(keep.begin(), keep.end());
  Spread out{std::move(keep)};
  if (!is_spread(f, out.lines)) throw DomainError("regulus reversal did not produce a spread");
  return out;
}

std::vector<std::vector<Subspace>> spread_reguli(const FieldTable& f, const Spread& s) {
  std::size_t n = s.lines.size();
  std::set<std::array<int, 3>> covered;
  std::vector<std::vector<Subspace>> out;
  for (int i = 0; i < static_cast<int>(n); ++i) {
    for (int j = i + 1; j < static_cast<int>(n); ++j) {
      for (int k = j + 1; k < static_cast<int>(n); ++k) {
        if (covered.count({i, j, k})) continue;
        auto reg = regulus(f, s.lines[i], s.lines[j], s.lines[k]);
        std::vector<int> idx;
        bool inside = true;
        for (const auto& l : reg) {
          auto it = std::lower_bound(s.lines.begin(), s.lines.end(), l);
          if (it == s.lines.end() || !(*it == l)) {
            inside = false;
            break;
          }
          idx.push_back(static_cast<int>(it - s.lines.begin()));
        }
        if (!inside) {
          covered.insert({i, j, k});
          continue;
        }
        std::sort(idx.begin(), idx.end());
        for (std::size_t a = 0; a < idx.size(); ++a)
          for (std::size_t b = a + 1; b < idx.size(); ++b)
            for (std::size_t c = b + 1; c < idx.size(); ++c)
              covered.insert({idx[a], idx[b], idx[c]});
        std::sort(reg.begin(), reg.end());
        out.push_back(std::move(reg));
      }
    }
  }
  return out;
}

std::vector<unsigned> quadric_through(const FieldTable& f, const std::vector<Pt>& pts) {
  // monomial order: x0^2 x1^2 x2^2 x3^2 x0x1 x0x2 x0x3 x1x2 x1x3 x2x3
  Mat sys;
  for (const auto& p : pts) {
    Pt row(10, 0);
    int c = 0;
    for (int i = 0; i < 4; ++i) row[c++] = f.mul(p[i], p[i]);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) row[c++] = f.mul(p[i], p[j]);
    sys.push_back(std::move(row));
  }
  Mat sol = nullspace(f, sys, 10);
  if (sol.size() != 1) throw DomainError("point set does not determine a unique quadric");
  return sol[0];
}

Subspace polar_line(const FieldTable& f, const std::vector<unsigned>& quad, const Subspace& ln) {
  // char 2 polarisation: squares drop out, B(x,y) = sum c_ij (x_i y_j + x_j y_i)
  Mat b(4, Pt(4, 0));
  int c = 4;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      b[i][j] = quad[c];
      b[j][i] = quad[c];
      ++c;
    }
  Mat sys;
  for (const auto& u : ln.rows) {
    Pt row(4, 0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) row[i] = f.add(row[i], f.mul(b[i][j], u[j]));
    sys.push_back(std::move(row));
  }
  Mat sol = nullspace(f, sys, 4);
  return Subspace{4, std::move(sol)};
}

bool regulus_conjugate_pair(const FieldTable& f, const std::vector<Subspace>& r,
                            const Subspace& tn, const Subspace& tinf) {
  std::vector<Pt> pts;
  for (const auto& l : r) {
    for (auto& p : subspace_points(f, line5_to_line4(l))) pts.push_back(std::move(p));
  }
  std::vector<unsigned> quad;
  try {
    quad = quadric_through(f, pts);
  } catch (const DomainError&) {
    return false;
  }
  Subspace polar = polar_line(f, quad, line5_to_line4(tn));
  return polar.dim() == 1 && polar == line5_to_line4(tinf);
}

std::vector<Subspace> conjugate_derivation_regulus(const FieldTable& f, const Spread& s,
                                                   const Subspace& tn, const Subspace& tinf) {
  if (f.h % 2 != 0) throw DomainError("derivation construction requires h even");
  if (!std::binary_search(s.lines.begin(), s.lines.end(), tn) ||
      !std::binary_search(s.lines.begin(), s.lines.end(), tinf))
    throw DomainError("t_N and t_inf must be lines of the spread");
  for (const auto& reg : spread_reguli(f, s)) {
    if (std::binary_search(reg.begin(), reg.end(), tn)) continue;
    if (std::binary_search(reg.begin(), reg.end(), tinf)) continue;
    if (regulus_conjugate_pair(f, reg, tn, tinf)) return reg;
  }
  throw SearchExhausted("no conjugate derivation regulus found");
}

std::vector<Subspace> bb_lines_through(const FieldTable& f, const Pt& p, const Spread& s) {
  if (p.back() == 0) throw DomainError("expected an affine point");
  std::vector<Subspace> out;
  out.reserve(s.lines.size());
  for (const auto& l : s.lines) out.push_back(join(f, span(f, {p}), l));
  return out;
}

Subspace bb_line_through(const FieldTable& f, const Spread& s, const Pt& a, const Pt& b) {
  Subspace ab = span(f, {a, b});
  if (ab.dim() != 1) throw DomainError("points coincide");
  Subspace x = meet(f, ab, sigma_infty_subspace());
  int idx = spread_line_index_through(f, s, x.rows.at(0));
  if (idx < 0) throw DomainError("spread does not cover Sigma_inf");
  return join(f, ab, s.lines[idx]);
}

}  // namespace fgeom
