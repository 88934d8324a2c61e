#include "prismalab/zmod.hpp"

#include "prismalab/errors.hpp"

namespace prismalab {

i64 ipow(i64 b, int e) {
  i64 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

bool is_prime(i64 p) {
  if (p < 2) return false;
  for (i64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int vp(i64 x, i64 p) {
  if (x == 0) return 1 << 20;
  int v = 0;
  if (x < 0) x = -x;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

int vp_factorial(i64 k, i64 p) {
  int v = 0;
  while (k > 0) {
    k /= p;
    v += static_cast<int>(k);
  }
  return v;
}

Zpk::Zpk(i64 p_, int k_) : p(p_), k(k_), q(ipow(p_, k_)) {
  if (!is_prime(p)) throw InvalidRing("p must be prime");
  if (k < 1) throw InvalidRing("precision must be >= 1");
  // products go through __int128, so q only has to fit in 62 bits
  long double approx = 1;
  for (int i = 0; i < k; ++i) approx *= static_cast<long double>(p);
  if (approx > 4.0e18L) throw InvalidRing("p^k exceeds 62 bits");
}

int Zpk::val(i64 a) const {
  if (a == 0) return k;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

i64 Zpk::inv(i64 a) const {
  a = red(a);
  if (a % p == 0) throw NotAUnit("residue is divisible by p");
  // extended Euclid on (a, q)
  __int128 r0 = q, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 t = r0 / r1;
    __int128 r2 = r0 - t * r1;
    r0 = r1;
    r1 = r2;
    __int128 s2 = s0 - t * s1;
    s0 = s1;
    s1 = s2;
  }
  return red(static_cast<i64>(s0 % q));
}

i64 Zpk::pow(i64 a, i64 e) const {
  i64 r = red(1);
  a = red(a);
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

i64 Zpk::ppow(int e) const {
  if (e >= k) return 0;
  return ipow(p, e);
}

}  // namespace prismalab
