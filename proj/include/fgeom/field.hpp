#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace fgeom {

/// The fixed primitive polynomial used for GF(2^h), encoded as a bit mask
/// (e.g. x^4+x+1 -> 0b10011 = 19). Fixing these keeps integer encodings of
/// field elements stable across runs.
unsigned default_primitive_poly(int h);

/// Arithmetic tables for GF(2^h). Elements are encoded as integers in
/// [0, 2^h) via the polynomial basis; addition is bitwise XOR.
struct FieldTable {
  int h = 0;
  unsigned poly = 0;
  unsigned q = 0;
  std::vector<unsigned> exp_;  // exp_[i] = x^i, doubled length for index math
  std::vector<unsigned> log_;  // log_[a] for a != 0

  FieldTable(int h, unsigned poly);
  static FieldTable with_default_poly(int h);

  unsigned size() const { return q; }
  unsigned add(unsigned a, unsigned b) const { return a ^ b; }
  unsigned mul(unsigned a, unsigned b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  unsigned inv(unsigned a) const;
  unsigned div(unsigned a, unsigned b) const { return mul(a, inv(b)); }
  unsigned pow(unsigned a, long long e) const;
  /// a^(2^n), n-fold squaring.
  unsigned frob_pow(unsigned a, int n) const;
};

/// GF(q^2) built on top of GF(q) as GF(q)[tau] with tau^2 = t1*tau + t0,
/// where x^2 + t1 x + t0 is primitive over GF(q). Elements are encoded as
/// a0 | (a1 << h) for the unique decomposition a0 + a1*tau.
struct Fq2Config {
  FieldTable base;
  unsigned t1 = 0, t0 = 0;
  unsigned q2 = 0;
  std::vector<unsigned> exp_;  // powers of tau, doubled length
  std::vector<unsigned> log_;

  Fq2Config(FieldTable base_field, unsigned t1_, unsigned t0_);

  unsigned size() const { return q2; }
  unsigned add(unsigned a, unsigned b) const { return a ^ b; }
  unsigned compose(unsigned a0, unsigned a1) const { return a0 | (a1 << base.h); }
  std::pair<unsigned, unsigned> decompose(unsigned alpha) const {
    return {alpha & (base.q - 1u), alpha >> base.h};
  }
  unsigned tau() const { return compose(0, 1); }
  unsigned mul(unsigned a, unsigned b) const;
  unsigned inv(unsigned a) const;
  unsigned div(unsigned a, unsigned b) const { return mul(a, inv(b)); }
  unsigned pow(unsigned a, long long e) const;
  unsigned frob_pow(unsigned a, int n) const;
};

/// Lexicographically smallest (t1, t0) with x^2 + t1 x + t0 primitive over
/// the base field.
Fq2Config find_primitive_quadratic(const FieldTable& base);

}  // namespace fgeom
