#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "fgeom/errors.hpp"

namespace fgeom {

// Homogeneous coordinate vectors over a tiny field given by a table object
// (FieldTable or Fq2Config). Points are canonicalised so the first nonzero
// coordinate is 1; subspaces are reduced row echelon bases.

using Pt = std::vector<unsigned>;
using Mat = std::vector<Pt>;

struct Subspace {
  int ambient = 0;
  Mat rows;  // canonical RREF basis; empty rows = empty subspace

  int dim() const { return static_cast<int>(rows.size()) - 1; }
  bool empty() const { return rows.empty(); }
  bool operator==(const Subspace&) const = default;
  bool operator<(const Subspace& o) const {
    if (ambient != o.ambient) return ambient < o.ambient;
    return rows < o.rows;
  }
};

struct PtHash {
  std::size_t operator()(const Pt& p) const {
    std::size_t h = 1469598103934665603ull;
    for (unsigned v : p) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const {
    std::size_t h = static_cast<std::size_t>(s.ambient);
    PtHash ph;
    for (const Pt& r : s.rows) h = h * 1000003u + ph(r);
    return h;
  }
};

template <class F>
Pt normalized(const F& f, Pt p) {
  for (unsigned v : p) {
    if (v != 0) {
      if (v != 1) {
        unsigned s = f.inv(v);
        for (auto& c : p) c = f.mul(c, s);
      }
      return p;
    }
  }
  throw DomainError("cannot normalise the zero vector");
}

template <class F>
bool is_zero_row(const F&, const Pt& p) {
  for (unsigned v : p) {
    if (v != 0) return false;
  }
  return true;
}

/// In-place reduced row echelon form; returns the canonical nonzero rows.
template <class F>
Mat rref(const F& f, Mat m) {
  if (m.empty()) return m;
  std::size_t n = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    unsigned s = f.inv(m[r][c]);
    for (auto& v : m[r]) v = f.mul(v, s);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != r && m[i][c] != 0) {
        unsigned t = m[i][c];
        for (std::size_t j = 0; j < n; ++j) m[i][j] = f.add(m[i][j], f.mul(t, m[r][j]));
      }
    }
    ++r;
  }
  m.resize(r);
  return m;
}

template <class F>
int rank(const F& f, const Mat& m) {
  return static_cast<int>(rref(f, m).size());
}

template <class F>
Subspace span(const F& f, const std::vector<Pt>& pts) {
  if (pts.empty()) throw DomainError("span of an empty point set");
  Subspace s;
  s.ambient = static_cast<int>(pts[0].size());
  s.rows = rref(f, pts);
  return s;
}

template <class F>
Subspace join(const F& f, const Subspace& a, const Subspace& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.ambient != b.ambient) throw DimensionError("ambient mismatch in join");
  Mat m = a.rows;
  m.insert(m.end(), b.rows.begin(), b.rows.end());
  return Subspace{a.ambient, rref(f, m)};
}

/// Canonical basis of { x : m * x = 0 } (as row vectors of length ncols).
template <class F>
Mat nullspace(const F& f, const Mat& m, int ncols) {
  Mat red = rref(f, m);
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(ncols, false);
  for (const auto& row : red) {
    for (int c = 0; c < ncols; ++c) {
      if (row[c] != 0) {
        pivot_col.push_back(c);
        is_pivot[c] = true;
        break;
      }
    }
  }
  Mat basis;
  for (int c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    Pt v(ncols, 0);
    v[c] = 1;
    for (std::size_t r = 0; r < red.size(); ++r) v[pivot_col[r]] = red[r][c];  // char 2: -a = a
    basis.push_back(std::move(v));
  }
  return rref(f, basis);
}

/// Orthogonal complement of the row space w.r.t. the standard bilinear form.
template <class F>
Subspace complement(const F& f, const Subspace& s, int ambient) {
  if (s.empty()) {
    // complement of the empty subspace is everything
    Mat id;
    for (int i = 0; i < ambient; ++i) {
      Pt row(ambient, 0);
      row[i] = 1;
      id.push_back(std::move(row));
    }
    return Subspace{ambient, std::move(id)};
  }
  return Subspace{s.ambient, nullspace(f, s.rows, s.ambient)};
}

template <class F>
Subspace meet(const F& f, const Subspace& a, const Subspace& b) {
  if (a.empty() || b.empty()) return Subspace{a.empty() ? b.ambient : a.ambient, {}};
  if (a.ambient != b.ambient) throw DimensionError("ambient mismatch in meet");
  Subspace ca = complement(f, a, a.ambient);
  Subspace cb = complement(f, b, b.ambient);
  Subspace u = join(f, ca, cb);
  return complement(f, u, a.ambient);
}

template <class F>
bool contains(const F& f, const Subspace& s, Pt p) {
  for (const auto& row : s.rows) {
    int c = 0;
    while (row[c] == 0) ++c;
    if (p[c] != 0) {
      unsigned t = p[c];
      for (std::size_t j = 0; j < p.size(); ++j) p[j] = f.add(p[j], f.mul(t, row[j]));
    }
  }
  for (unsigned v : p) {
    if (v != 0) return false;
  }
  return true;
}

template <class F>
bool subspace_le(const F& f, const Subspace& a, const Subspace& b) {
  for (const auto& r : a.rows) {
    if (!contains(f, b, r)) return false;
  }
  return true;
}

/// All (q^{n+1}-1)/(q-1) normalised points of PG(n,q), lexicographic on the
/// coordinate tuples.
template <class F>
std::vector<Pt> enumerate_points(const F& f, int n) {
  if (n < 0) throw DimensionError("negative dimension");
  unsigned q = f.size();
  std::vector<Pt> out;
  // lex order: more leading zeros first
  for (int lead = n; lead >= 0; --lead) {
    int tail = n - lead;
    std::vector<unsigned> t(tail, 0);
    while (true) {
      Pt p(n + 1, 0);
      p[lead] = 1;
      for (int i = 0; i < tail; ++i) p[lead + 1 + i] = t[i];
      out.push_back(std::move(p));
      int i = tail - 1;
      while (i >= 0 && t[i] == q - 1) t[i--] = 0;
      if (i < 0) break;
      ++t[i];
    }
  }
  return out;
}

/// Points of a subspace: normalised combinations of its basis rows.
template <class F>
std::vector<Pt> subspace_points(const F& f, const Subspace& s) {
  std::vector<Pt> out;
  if (s.empty()) return out;
  int k = static_cast<int>(s.rows.size());
  for (const Pt& coeff : enumerate_points(f, k - 1)) {
    Pt p(s.ambient, 0);
    for (int i = 0; i < k; ++i) {
      if (coeff[i] == 0) continue;
      for (int j = 0; j < s.ambient; ++j) p[j] = f.add(p[j], f.mul(coeff[i], s.rows[i][j]));
    }
    out.push_back(normalized(f, std::move(p)));
  }
  return out;
}

template <class F>
bool collinear(const F& f, const Pt& a, const Pt& b, const Pt& c) {
  return rank(f, Mat{a, b, c}) <= 2;
}

template <class F>
Mat mat_inverse(const F& f, const Mat& m) {
  std::size_t n = m.size();
  Mat aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, 0);
    aug[i][n + i] = 1;
  }
  aug = rref(f, aug);
  if (aug.size() != n) throw DomainError("singular matrix");
  Mat inv(n, Pt(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((i == j && aug[i][j] != 1) || (i != j && aug[i][j] != 0))
        throw DomainError("singular matrix");
      inv[i][j] = aug[i][n + j];
    }
  }
  return inv;
}

struct Homography {
  Mat m;     // (n+1)x(n+1), acting on column coordinate vectors
  Mat minv;  // cached inverse
};

template <class F>
Homography make_homography(const F& f, Mat m) {
  Homography h;
  h.minv = mat_inverse(f, m);  // throws DomainError if singular
  h.m = std::move(m);
  return h;
}

template <class F>
Pt mat_apply(const F& f, const Mat& m, const Pt& p) {
  std::size_t n = m.size();
  Pt out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] = f.add(out[i], f.mul(m[i][j], p[j]));
  }
  return out;
}

template <class F>
Pt apply_homography(const F& f, const Homography& h, const Pt& p) {
  if (h.m.size() != p.size()) throw DimensionError("homography/point dimension mismatch");
  return normalized(f, mat_apply(f, h.m, p));
}

template <class F>
Subspace apply_homography(const F& f, const Homography& h, const Subspace& s) {
  Mat rows;
  rows.reserve(s.rows.size());
  for (const auto& r : s.rows) rows.push_back(mat_apply(f, h.m, r));
  return Subspace{s.ambient, rref(f, rows)};
}

template <class F>
Pt apply_inverse(const F& f, const Homography& h, const Pt& p) {
  return normalized(f, mat_apply(f, h.minv, p));
}

template <class F>
Subspace apply_inverse(const F& f, const Homography& h, const Subspace& s) {
  Mat rows;
  rows.reserve(s.rows.size());
  for (const auto& r : s.rows) rows.push_back(mat_apply(f, h.minv, r));
  return Subspace{s.ambient, rref(f, rows)};
}

// --- Klein correspondence (char 2: p_i q_j - p_j q_i = p_i q_j + p_j q_i) ---

/// Line of PG(3,q) -> point of the Klein quadric x0x5 + x1x4 + x2x3 = 0,
/// with coordinate order (l01, l02, l03, l12, l31, l23).
template <class F>
Pt klein_map(const F& f, const Subspace& ln) {
  if (ln.ambient != 4 || ln.dim() != 1) throw DimensionError("klein_map expects a line of PG(3,q)");
  const Pt& p = ln.rows[0];
  const Pt& r = ln.rows[1];
  auto pl = [&](int i, int j) { return f.add(f.mul(p[i], r[j]), f.mul(p[j], r[i])); };
  Pt out{pl(0, 1), pl(0, 2), pl(0, 3), pl(1, 2), pl(3, 1), pl(2, 3)};
  return normalized(f, std::move(out));
}

template <class F>
bool on_klein_quadric(const F& f, const Pt& x) {
  unsigned v = f.add(f.add(f.mul(x[0], x[5]), f.mul(x[1], x[4])), f.mul(x[2], x[3]));
  return v == 0;
}

/// Bilinear form of the Klein quadric; lines of PG(3,q) meet iff their
/// images are conjugate.
template <class F>
bool klein_conjugate(const F& f, const Pt& x, const Pt& y) {
  unsigned v = 0;
  v = f.add(v, f.add(f.mul(x[0], y[5]), f.mul(x[5], y[0])));
  v = f.add(v, f.add(f.mul(x[1], y[4]), f.mul(x[4], y[1])));
  v = f.add(v, f.add(f.mul(x[2], y[3]), f.mul(x[3], y[2])));
  return v == 0;
}

/// Inverse of the Klein map: the rows of the rank-2 Pluecker matrix span the
/// line.
template <class F>
Subspace klein_inverse(const F& f, const Pt& x) {
  if (x.size() != 6) throw DimensionError("klein_inverse expects 6 coordinates");
  if (!on_klein_quadric(f, x)) throw DomainError("point is not on the Klein quadric");
  // L[i][j] = l_ij, symmetric in char 2, zero diagonal
  Mat l(4, Pt(4, 0));
  l[0][1] = l[1][0] = x[0];
  l[0][2] = l[2][0] = x[1];
  l[0][3] = l[3][0] = x[2];
  l[1][2] = l[2][1] = x[3];
  l[1][3] = l[3][1] = x[4];
  l[2][3] = l[3][2] = x[5];
  Subspace s{4, rref(f, l)};
  if (s.dim() != 1) throw DomainError("degenerate Pluecker coordinates");
  return s;
}

// --- PG(1,q) charts and fractional-linear maps ------------------------------
// Chart values are encoded as unsigned in [0, q] with q standing for infinity.

template <class F>
std::array<unsigned, 2> pg1_rep(const F& f, unsigned v) {
  if (v == f.size()) return {1u, 0u};
  return {v, 1u};
}

template <class F>
unsigned pg1_value(const F& f, unsigned x, unsigned y) {
  if (y == 0) {
    if (x == 0) throw DomainError("zero vector has no PG(1) value");
    return f.size();
  }
  return f.mul(x, f.inv(y));
}

template <class F>
unsigned mobius_apply(const F& f, const Mat& m, unsigned v) {
  auto r = pg1_rep(f, v);
  unsigned x = f.add(f.mul(m[0][0], r[0]), f.mul(m[0][1], r[1]));
  unsigned y = f.add(f.mul(m[1][0], r[0]), f.mul(m[1][1], r[1]));
  return pg1_value(f, x, y);
}

/// The unique fractional-linear map sending p0, p1, pinf to 0, 1, infinity.
template <class F>
Mat mobius_to_std(const F& f, unsigned p0, unsigned p1, unsigned pinf) {
  auto r0 = pg1_rep(f, p0);
  auto rinf = pg1_rep(f, pinf);
  auto r1 = pg1_rep(f, p1);
  // solve a*rinf + b*r0 = r1
  Mat sys{{rinf[0], r0[0], r1[0]}, {rinf[1], r0[1], r1[1]}};
  Mat red = rref(f, sys);
  if (red.size() != 2) throw DomainError("mobius_to_std needs three distinct points");
  unsigned a = red[0][2], b = red[1][2];
  if (a == 0 || b == 0) throw DomainError("mobius_to_std needs three distinct points");
  Mat n{{f.mul(a, rinf[0]), f.mul(b, r0[0])}, {f.mul(a, rinf[1]), f.mul(b, r0[1])}};
  return mat_inverse(f, n);
}

}  // namespace fgeom
