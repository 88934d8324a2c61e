#pragma once

#include <string>
#include <vector>

#include "prismalab/witt.hpp"

namespace prismalab {

// Element of W_n(F_{p^m})[[u]] / u^N. Exact elements are genuine polynomials of degree < N;
// operations that would push an exact result past N raise PrecisionLoss.
class SeriesElem {
 public:
  SeriesElem() = default;
  SeriesElem(WittRingPtr R, int N, bool exact = true);

  static SeriesElem from_coeffs(WittRingPtr R, int N, const std::vector<i64>& ints, bool exact = true);
  static SeriesElem monomial(WittRingPtr R, int N, int deg, i64 c = 1, bool exact = true);
  static SeriesElem constant(const WittElem& a, int N, bool exact = true);

  const WittRingPtr& ring() const { return R_; }
  int N() const { return N_; }
  bool exact() const { return exact_; }
  int m() const { return R_->m(); }
  // degree of the stored polynomial, -1 for zero
  int degree() const;
  bool is_zero() const { return degree() < 0; }

  WittElem coeff(int i) const;
  void set_coeff(int i, const WittElem& a);
  const i64* raw(int i) const { return c_.data() + static_cast<size_t>(i) * R_->m(); }
  i64* raw(int i) { return c_.data() + static_cast<size_t>(i) * R_->m(); }

  SeriesElem operator+(const SeriesElem& o) const;
  SeriesElem operator-(const SeriesElem& o) const;
  SeriesElem operator-() const;
  SeriesElem operator*(const SeriesElem& o) const;
  SeriesElem scale(const WittElem& a) const;
  SeriesElem scale(i64 a) const;
  bool operator==(const SeriesElem& o) const;
  bool operator!=(const SeriesElem& o) const { return !(*this == o); }

  // same coefficients at another u-precision; truncating an exact element past its degree is an error
  SeriesElem with_N(int N2) const;
  SeriesElem truncated(int N2) const;  // drops exactness
  SeriesElem shift(int k) const;       // multiply by u^k
  SeriesElem pow(int e) const;
  // lowest degree with a nonzero coefficient, -1 for zero
  int u_valuation() const;
  // minimal p-adic valuation over all coefficients (n for zero)
  int p_valuation() const;
  // reduce coefficients to another p-adic precision (n2 <= n)
  SeriesElem reduce_p(int n2) const;
  // reinterpret coefficients at a larger precision (lift by representatives)
  SeriesElem lift_p(int n2) const;
  std::string str() const;

 private:
  SeriesElem binop(const SeriesElem& o, bool subtract) const;

  WittRingPtr R_;
  int N_ = 0;
  bool exact_ = true;
  std::vector<i64> c_;
};

// products and sums of exact polynomials that grow the u-precision cap as needed
SeriesElem pmul(const SeriesElem& a, const SeriesElem& b);
SeriesElem padd(const SeriesElem& a, const SeriesElem& b);
SeriesElem psub(const SeriesElem& a, const SeriesElem& b);

// sigma on coefficients, u -> u^p; default output precision p*N
SeriesElem phi_apply(const SeriesElem& x, int out_N = -1);

// exact division by a monic polynomial (both exact); NotDivisible on a nonzero remainder
SeriesElem divide_exact(const SeriesElem& x, const SeriesElem& by);
// division by p^i; the quotient lives at precision n - i >= min_n
SeriesElem divide_exact_p(const SeriesElem& x, int i, int min_n = 1);

struct EisensteinPoly {
  SeriesElem E;
  int e = 0;
  WittElem a0;
  std::string kind;

  // ((u+1)^{p^n} - 1) / ((u+1)^{p^{n-1}} - 1) over W_prec
  static EisensteinPoly cyclotomic(WittRingPtr R, int n);
  // monic, coefficients c0..ce
  static EisensteinPoly explicit_coeffs(WittRingPtr R, const std::vector<WittElem>& c);
  static EisensteinPoly explicit_ints(WittRingPtr R, const std::vector<i64>& c);
  EisensteinPoly with_precision(int n2) const;
};

// (u + 1)^k - 1 as an exact polynomial
SeriesElem shifted_power_minus_one(WittRingPtr R, i64 k, int N);

}  // namespace prismalab
