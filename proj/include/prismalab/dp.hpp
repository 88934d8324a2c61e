#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "prismalab/linalg.hpp"
#include "prismalab/series.hpp"

namespace prismalab {

class DpRing;
using DpRingPtr = std::shared_ptr<const DpRing>;

// Element of S / (p^K, I_D) on the basis b_l = u^l / e(l)!, e(l) = floor(l/e), l < D.
struct DpElem {
  DpRingPtr S;
  std::vector<i64> c;  // D * m residues

  DpElem operator+(const DpElem& o) const;
  DpElem operator-(const DpElem& o) const;
  DpElem operator-() const;
  DpElem operator*(const DpElem& o) const;
  DpElem scale(const WittElem& a) const;
  bool operator==(const DpElem& o) const { return c == o.c; }
  bool operator!=(const DpElem& o) const { return c != o.c; }
  bool is_zero() const;
  WittElem coord(int l) const;
  const i64* raw(int l) const;
  i64* raw(int l);
  // lowest l with a nonzero coordinate, -1 for zero
  int low() const;
  std::string str() const;
};

class DpRing : public std::enable_shared_from_this<DpRing> {
 public:
  // internal precision K <= precision of E (default: equal); the full E is kept for c1 and lifts
  static DpRingPtr make(const EisensteinPoly& E, int D, int K = -1);

  const WittRingPtr& R() const { return R_; }
  const EisensteinPoly& eisenstein() const { return E_; }
  i64 p() const { return R_->p(); }
  int K() const { return R_->n(); }
  int e() const { return E_.e; }
  int D() const { return D_; }
  int m() const { return R_->m(); }
  DpRingPtr with_precision(int K2) const;

  // [e(i+j)! / (e(i)! e(j)!)] mod p^K
  i64 struct_const(int i, int j) const;
  // [e(pl)! / e(l)!] mod p^K
  i64 phi_const(int l) const;
  // v_p and unit part of q! for q <= D/e + 1
  int fact_val(int q) const { return fval_[q]; }

  DpElem zero() const;
  DpElem one() const;
  DpElem basis(int l, i64 c = 1) const;
  DpElem scalar(const WittElem& a) const;
  DpElem from_series(const SeriesElem& s) const;  // u^l = e(l)! b_l
  DpElem u_pow(int k) const;
  DpElem E_elem() const;
  DpElem gamma(int q) const;  // gamma_q(E) = E^q / q!

  DpElem phi(const DpElem& x) const;
  DpElem nabla(const DpElem& x) const;  // d/du
  DpElem mul_u_pow(const DpElem& x, int a) const;

  // image of Fil^i S in S/(p^K, I_D) as a Z/p^K-row span on the coordinates
  const RowSpan& fil_span(int i) const;
  bool in_fil(const DpElem& x, int i) const;
  // number of gamma_q generators used for Fil^i (q ranges over [i, fil_qmax])
  int fil_qmax() const;

  // mod p only: Fil^i S_1 = span{b_l : l >= e i} for i <= p
  bool in_fil_modp(const DpElem& x, int i) const;
  // mod p closed form of phi_h on Fil^h S_1 (p >= 3 or h = 0); PrecisionTooLow for p = 2, h >= 1
  DpElem phi_div_modp(const DpElem& x, int h) const;
  // c1 = phi(E)/p at precision K; needs E known to precision K + 1
  DpElem c1() const;
  // S -> W(k): coordinate of b_0
  WittElem residue(const DpElem& x) const { return x.coord(0); }

 private:
  DpRing(EisensteinPoly E, EisensteinPoly E_full, int D);

  WittRingPtr R_;
  EisensteinPoly E_;
  EisensteinPoly E_full_;
  int D_;
  std::vector<int> fval_;
  std::vector<i64> funit_, funit_inv_;
  mutable std::mutex mu_;
  mutable std::map<int, RowSpan> fil_cache_;
  mutable std::map<int, DpRingPtr> prec_cache_;
  mutable std::unique_ptr<DpElem> c1_cache_;
};

// phi(x) / p^i for x in Fil^i S; result over the ring of precision K - i
DpElem s_phi_div(const DpElem& x, int i, int min_K = 1);
// x / p^i for x with every coordinate divisible by p^i
DpElem divide_exact_p(const DpElem& x, int i, int min_K = 1);
// inverse of an element with unit constant term (the positive part is nilpotent in the truncation)
DpElem dp_inverse(const DpElem& x);
// reduce coordinates to precision K2 <= K
DpElem reduce_precision(const DpElem& x, int K2);

}  // namespace prismalab
