#include "fgeom/field.hpp"

#include "fgeom/errors.hpp"

namespace fgeom {

unsigned default_primitive_poly(int h) {
  switch (h) {
    case 1: return 0b11;      // x + 1
    case 2: return 0b111;     // x^2 + x + 1
    case 3: return 0b1011;    // x^3 + x + 1
    case 4: return 0b10011;   // x^4 + x + 1
    default:
      throw DomainError("no default primitive polynomial for h=" + std::to_string(h));
  }
}

FieldTable::FieldTable(int h_, unsigned poly_) : h(h_), poly(poly_), q(1u << h_) {
  if (h < 1 || h > 16) throw DomainError("field degree out of range");
  exp_.assign(2 * (q - 1), 0);
  log_.assign(q, 0);
  if (h == 1) {
    exp_[0] = 1;
    log_[1] = 0;
    return;
  }
  // Powers of x; poly must be primitive so that x generates the group.
  unsigned e = 1;
  for (unsigned i = 0; i < q - 1; ++i) {
    exp_[i] = e;
    exp_[i + (q - 1)] = e;
    log_[e] = i;
    e <<= 1;
    if (e & q) e ^= poly;
  }
  if (e != 1) throw DomainError("polynomial is not primitive");
  // A proper cycle visits every nonzero element exactly once.
  for (unsigned a = 1; a < q; ++a) {
    if (exp_[log_[a]] != a) throw DomainError("polynomial is not primitive");
  }
}

FieldTable FieldTable::with_default_poly(int h) {
  return FieldTable(h, default_primitive_poly(h));
}

unsigned FieldTable::inv(unsigned a) const {
  if (a == 0) throw DomainError("inverse of zero");
  if (a == 1) return 1;
  return exp_[(q - 1) - log_[a]];
}

unsigned FieldTable::pow(unsigned a, long long e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw DomainError("negative power of zero");
    return 0;
  }
  long long m = q - 1;
  long long r = ((log_[a] * (e % m)) % m + m) % m;
  return exp_[static_cast<unsigned>(r)];
}

unsigned FieldTable::frob_pow(unsigned a, int n) const {
  unsigned r = a;
  for (int i = 0; i < n; ++i) r = mul(r, r);
  return r;
}

Fq2Config::Fq2Config(FieldTable base_field, unsigned t1_, unsigned t0_)
    : base(std::move(base_field)), t1(t1_), t0(t0_), q2(base.q * base.q) {
  exp_.assign(2 * (q2 - 1), 0);
  log_.assign(q2, 0);
  // Walk powers of tau with the pair-multiplication formula; tau must have
  // order q^2-1, which also certifies x^2 + t1 x + t0 irreducible.
  unsigned e = 1;
  for (unsigned i = 0; i < q2 - 1; ++i) {
    if (e == 0 || (i > 0 && e == 1)) throw DomainError("quadratic is not primitive");
    exp_[i] = e;
    exp_[i + (q2 - 1)] = e;
    log_[e] = i;
    e = mul(e, tau());
  }
  if (e != 1) throw DomainError("quadratic is not primitive");
}

unsigned Fq2Config::mul(unsigned a, unsigned b) const {
  auto [a0, a1] = decompose(a);
  auto [b0, b1] = decompose(b);
  const FieldTable& f = base;
  unsigned cross = f.mul(a1, b1);
  unsigned c0 = f.add(f.mul(a0, b0), f.mul(t0, cross));
  unsigned c1 = f.add(f.add(f.mul(a0, b1), f.mul(a1, b0)), f.mul(t1, cross));
  return compose(c0, c1);
}

unsigned Fq2Config::inv(unsigned a) const {
  if (a == 0) throw DomainError("inverse of zero");
  if (a == 1) return 1;
  return exp_[(q2 - 1) - log_[a]];
}

unsigned Fq2Config::pow(unsigned a, long long e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw DomainError("negative power of zero");
    return 0;
  }
  long long m = q2 - 1;
  long long r = ((log_[a] * (e % m)) % m + m) % m;
  return exp_[static_cast<unsigned>(r)];
}

unsigned Fq2Config::frob_pow(unsigned a, int n) const {
  unsigned r = a;
  for (int i = 0; i < n; ++i) r = mul(r, r);
  return r;
}

Fq2Config find_primitive_quadratic(const FieldTable& base) {
  for (unsigned t1 = 0; t1 < base.q; ++t1) {
    for (unsigned t0 = 0; t0 < base.q; ++t0) {
      try {
        return Fq2Config(base, t1, t0);
      } catch (const DomainError&) {
        continue;
      }
    }
  }
  throw DomainError("no primitive quadratic found");  // unreachable for valid base
}

}  // namespace fgeom
