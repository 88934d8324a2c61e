#pragma once

#include <cstdint>
#include <vector>

namespace prismalab {

using i64 = std::int64_t;

i64 ipow(i64 b, int e);
bool is_prime(i64 p);
// p-adic valuation of a nonzero integer
int vp(i64 x, i64 p);
// v_p(k!)
int vp_factorial(i64 k, i64 p);

// Arithmetic in Z/p^k; residues kept in [0, q).
struct Zpk {
  i64 p = 2;
  int k = 1;
  i64 q = 2;

  Zpk() = default;
  Zpk(i64 p_, int k_);

  i64 red(i64 x) const {
    x %= q;
    return x < 0 ? x + q : x;
  }
  i64 add(i64 a, i64 b) const {
    i64 s = a + b;
    return s >= q ? s - q : s;
  }
  i64 sub(i64 a, i64 b) const {
    i64 s = a - b;
    return s < 0 ? s + q : s;
  }
  i64 neg(i64 a) const { return a == 0 ? 0 : q - a; }
  i64 mul(i64 a, i64 b) const {
    return static_cast<i64>((static_cast<__int128>(a) * b) % q);
  }
  // valuation of a residue, k for zero
  int val(i64 a) const;
  bool is_unit(i64 a) const { return a % p != 0; }
  // inverse of a unit; throws NotAUnit otherwise
  i64 inv(i64 a) const;
  i64 pow(i64 a, i64 e) const;
  // p^e as a residue (zero when e >= k)
  i64 ppow(int e) const;
};

}  // namespace prismalab
