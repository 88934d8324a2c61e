#include "prismalab/residual.hpp"

#include "prismalab/errors.hpp"

namespace prismalab {

namespace {

EisensteinPoly power_E(const WittRingPtr& k, int e, int prec) {
  const i64 p = k->p();
  WittRingPtr R = k->with_precision(prec);
  std::vector<i64> c(e + 1, 0);
  c[0] = -p;
  c[e] = 1;
  return EisensteinPoly::explicit_ints(R, c);
}

i64 truncation(i64 p, int e, int Dz) {
  i64 D = e;
  for (int t = 0; t <= Dz; ++t) D *= p;
  return D;
}

}  // namespace

BoundaryPhi boundary_divided_frobenius(i64 p, int e, int Dz, int m) {
  if (e < 1 || (p - 1) % e != 0) throw BadRamification("e must divide p - 1");
  BoundaryPhi out;
  out.p = p;
  out.e = e;
  out.i = static_cast<int>((p - 1) / e);
  const int i = out.i;
  const int D = static_cast<int>(truncation(p, e, Dz));
  auto E = power_E(m == 1 ? WittRing::prime(p, 1) : WittRing::residue_field(p, m), e, i + 2);
  auto Shi = DpRing::make(E, D, i + 1);
  DpElem lift = Shi->u_pow(e - 1);
  for (int t = 0; t < p - 1; ++t) lift = lift * Shi->E_elem();
  out.generic = reduce_precision(s_phi_div(lift, i), 1);
  auto S1 = Shi->with_precision(1);
  if (p >= 3) out.closed_form = S1->phi_div_modp(S1->u_pow(static_cast<int>(e * p - 1)), i);
  if (e == 1) {
    DpElem c = S1->c1();
    out.expected = S1->one();
    for (int t = 0; t < p - 1; ++t) out.expected = out.expected * c;
  } else {
    out.expected = S1->zero();
  }
  out.ok = out.generic == out.expected && (!out.closed_form || *out.closed_form == out.expected);
  return out;
}

ResidualModule residual_module(const EtalePhiModule& V, int e, int Dz) {
  const i64 p = V.k->p();
  if (e < 1 || (p - 1) % e != 0) throw BadRamification("e must divide p - 1");
  ResidualModule M;
  M.V = V;
  M.e = e;
  M.h = static_cast<int>((p - 1) / e);
  auto E = power_E(V.k, e, M.h + 2);
  const int D = static_cast<int>(truncation(p, e, Dz));
  auto Shi = DpRing::make(E, D, M.h + 1);
  M.S = Shi->with_precision(1);
  const auto& S = M.S;
  // S_1[u^p]: multiplication by u^p is diagonal on the b_l; the top p coordinates are left out
  DpElem up = S->u_pow(static_cast<int>(p));
  for (int l = 0; l + p < D; ++l) {
    if ((up * S->basis(l)).is_zero()) M.torsion_basis.push_back(l);
    int q = l / e, q2 = static_cast<int>((l + p) / e);
    if (S->fact_val(q2) > S->fact_val(q)) M.formula_basis.push_back(l);
  }
  // phi_i on the generator u^{ep-1} of the u-torsion of the filtration, through a lift
  DpElem lift = Shi->u_pow(e - 1);
  for (int t = 0; t < p - 1; ++t) lift = lift * Shi->E_elem();
  DpElem factor = reduce_precision(s_phi_div(lift, M.h), 1);
  if (e > 1) {
    M.phi_vanishes = factor.is_zero();
    return M;
  }
  // phi_h(v_k (x) 1) = sum_i sigma(A_ik) v_i (x) factor on the basis v_k (x) 1 of Frob^* V
  const int d = V.d, m = V.k->m();
  const auto& k = V.k;
  M.residue_frobenius = IMat::Zero(d * m, d * m);
  WittElem f0 = factor.coord(0);
  WittElem xj = k->one();
  for (int j = 0; j < m; ++j) {
    WittElem s = k->sigma(xj);
    for (int kk = 0; kk < d; ++kk)
      for (int i = 0; i < d; ++i) {
        WittElem c = s * k->sigma(V.A[i][kk]) * f0;
        for (int l = 0; l < m; ++l) M.residue_frobenius(kk * m + j, i * m + l) = c.c[l];
      }
    xj = xj * (m == 1 ? k->one() : k->gen());
  }
  if (p == 2) return M;
  std::vector<DpVec> fil, pf, pe, nab;
  DpElem dlog = S->nabla(S->c1()) * dp_inverse(S->c1());
  for (int kk = 0; kk < d; ++kk) {
    fil.push_back(dpvec_unit(S, d, kk));
    DpVec y = dpvec_zero(S, d);
    for (int i = 0; i < d; ++i) y[i] = factor * S->scalar(k->sigma(V.A[i][kk]));
    pf.push_back(y);
    pe.push_back(dpvec_zero(S, d));
    nab.push_back(dlog * dpvec_unit(S, d, kk));
  }
  M.breuil = BreuilModule::make(S, d, M.h, fil, pf, pe, nab);
  return M;
}

FixedPoints unramified_realization(const ResidualModule& M, int t_max) {
  if (M.e != 1) throw BadRamification("the realization is computed for e = 1");
  return fp_fixed_points(M.residue_frobenius, M.V.k->p(), t_max);
}

}  // namespace prismalab
