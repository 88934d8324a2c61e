#pragma once

#include <vector>

#include "prismalab/linalg.hpp"
#include "prismalab/series.hpp"

namespace prismalab {

// The free module F = (W_n[u]/u^N)^g expanded on the Z/p^n-basis u^i x^j e_k,
// coordinate index (k*N + i)*m + j.
struct Ambient {
  WittRingPtr R;
  int g = 0;
  int N = 1;

  Ambient() = default;
  Ambient(WittRingPtr R_, int g_, int N_) : R(std::move(R_)), g(g_), N(N_) {}
  int m() const { return R->m(); }
  int dim() const { return g * N * m(); }
  int idx(int k, int i, int j) const { return (k * N + i) * m() + j; }
  const Zpk& z() const { return R->z(); }

  IVec zero() const { return IVec::Zero(dim()); }
  IVec gen(int k) const;
  IVec from_series(const std::vector<SeriesElem>& v) const;
  std::vector<SeriesElem> to_series(const IVec& v) const;
  IVec mul_u(const IVec& v, int times = 1) const;
  IVec mul_witt(const IVec& v, const WittElem& a) const;
  IVec mul_series(const IVec& v, const SeriesElem& s) const;
  IVec add(const IVec& a, const IVec& b) const;
  IVec sub(const IVec& a, const IVec& b) const;
  IVec scale(const IVec& a, i64 c) const;
  // rows u^i x^j v for every row v: the S-submodule generated by the rows
  IMat saturate(const IMat& rows) const;
  // row-convention matrix of the semilinear map with phi(e_k) = sum_l Phi[l][k] e_l
  IMat phi_matrix(const std::vector<std::vector<SeriesElem>>& Phi) const;
  IVec apply(const IVec& v, const IMat& M) const;
  IMat apply_rows(const IMat& rows, const IMat& M) const;
};

IMat rows_of(const std::vector<IVec>& v, int cols);

// Subquotient top/bot of an ambient free module, both S-submodules, with a Z/p^n-linear Frobenius.
struct SubQuotient {
  Ambient amb;
  RowSpan top;  // S-submodule containing bot
  RowSpan bot;
  IMat phi;     // ambient Frobenius (row convention), must preserve top and bot

  i64 length() const { return top.length() - bot.length(); }
  bool is_zero() const { return length() == 0; }
  // Howell rows of top that are nonzero modulo bot
  IMat generators() const;
  // u * top + bot
  RowSpan u_top_plus_bot() const;
  bool phi_stable() const;
  // quotient by the S-submodule generated by extra rows (inside top)
  SubQuotient quotient_by(const IMat& extra) const;
  // submodule generated by rows (taken inside top) over the same bot
  SubQuotient submodule(const IMat& rows) const;
  bool equal_as_sub(const SubQuotient& o) const;
};

SubQuotient make_subquotient(const Ambient& amb, const IMat& top_gens, const IMat& bot_gens, const IMat& phi);

}  // namespace prismalab
