#pragma once

#include <memory>
#include <string>
#include <vector>

#include "prismalab/zmod.hpp"

namespace prismalab {

class WittRing;
using WittRingPtr = std::shared_ptr<const WittRing>;

// Element of W_n(F_{p^m}) = (Z/p^n)[x]/(f), stored as m residues.
struct WittElem {
  WittRingPtr ring;
  std::vector<i64> c;

  WittElem operator+(const WittElem& o) const;
  WittElem operator-(const WittElem& o) const;
  WittElem operator-() const;
  WittElem operator*(const WittElem& o) const;
  bool operator==(const WittElem& o) const { return c == o.c; }
  bool operator!=(const WittElem& o) const { return c != o.c; }
  bool is_zero() const;
  bool is_unit() const;
  std::string str() const;
};

class WittRing : public std::enable_shared_from_this<WittRing> {
 public:
  // f has m+1 coefficients c0..cm with cm = 1; f mod p must be irreducible
  static WittRingPtr make(i64 p, int n, int m, std::vector<i64> f);
  // W_n(F_p) with f = x
  static WittRingPtr prime(i64 p, int n);
  // F_{p^m} = W_1(F_{p^m}) with the lexicographically first monic irreducible of degree m
  static WittRingPtr residue_field(i64 p, int m);

  i64 p() const { return z_.p; }
  int n() const { return z_.k; }
  int m() const { return m_; }
  const Zpk& z() const { return z_; }
  const std::vector<i64>& f() const { return f_; }
  // the same polynomial model at another p-adic precision
  WittRingPtr with_precision(int n2) const;
  bool same_field(const WittRing& o) const;
  // number of elements is p^{nm}
  i64 log_p_size() const { return static_cast<i64>(z_.k) * m_; }

  WittElem zero() const;
  WittElem one() const;
  WittElem scalar(i64 a) const;
  WittElem gen() const;  // the class of x
  WittElem elem(std::vector<i64> c) const;

  // raw arithmetic on length-m coefficient arrays
  void add(const i64* a, const i64* b, i64* out) const;
  void sub(const i64* a, const i64* b, i64* out) const;
  void mul(const i64* a, const i64* b, i64* out) const;
  void mul_acc(const i64* a, const i64* b, i64* out) const;  // out += a*b
  void sigma(const i64* a, i64* out) const;
  void sigma_inv(const i64* a, i64* out) const;

  WittElem add(const WittElem& a, const WittElem& b) const;
  WittElem mul(const WittElem& a, const WittElem& b) const;
  WittElem inv(const WittElem& a) const;  // NotAUnit when a = 0 mod p
  WittElem sigma(const WittElem& a) const;
  WittElem sigma_pow(const WittElem& a, int k) const;
  WittElem pow(const WittElem& a, i64 e) const;

  // matrix of sigma on the Z/p^n-basis 1, x, ..., x^{m-1}: sigma(x^j) = sum_i S(i,j) x^i
  const std::vector<std::vector<i64>>& sigma_matrix() const { return sig_; }
  // multiplication-by-a as a Z/p^n-matrix in the same basis
  std::vector<std::vector<i64>> mult_matrix(const WittElem& a) const;

  // all p^{nm} elements, lexicographic in the coefficient vector
  std::vector<WittElem> enumerate() const;

 private:
  WittRing(Zpk z, int m, std::vector<i64> f);
  void compute_sigma();
  void reduce(std::vector<i64>& prod) const;  // length 2m-1 -> m

  Zpk z_;
  int m_;
  std::vector<i64> f_;
  std::vector<std::vector<i64>> sig_;
  std::vector<std::vector<i64>> sig_inv_;
};

// F_p[x] helpers used for irreducibility and residue-field work
namespace fp_poly {
using Poly = std::vector<i64>;  // low degree first, trimmed
void trim(Poly& a);
Poly mod(const Poly& a, const Poly& b, i64 p);
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, i64 p);
Poly gcd(Poly a, Poly b, i64 p);
Poly powmod(const Poly& a, i64 e, const Poly& f, i64 p);
bool irreducible(const Poly& f, i64 p);
}  // namespace fp_poly

}  // namespace prismalab
