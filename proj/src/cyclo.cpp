#include "prismalab/cyclo.hpp"

#include <chrono>

#include "prismalab/dp.hpp"
#include "prismalab/errors.hpp"

namespace prismalab {

CycloInstance CycloInstance::make(i64 p, int n, int B, int D, int slack) {
  if (!is_prime(p)) throw InvalidRing("p must be prime");
  if (n < 1) throw InvalidRing("n must be >= 1");
  if (slack < 0) throw InvalidRing("precision slack must be >= 0");
  CycloInstance I;
  I.p = p;
  I.n = n;
  I.q = ipow(p, n - 1);
  I.e = static_cast<int>(I.q * (p - 1));
  I.slack = slack;
  I.R = WittRing::prime(p, n + slack);
  I.d = EisensteinPoly::cyclotomic(I.R, n);
  I.q_n = shifted_power_minus_one(I.R, I.q * p, static_cast<int>(I.q * p + 1));
  I.g = shifted_power_minus_one(I.R, I.q, static_cast<int>(I.q + 1));
  I.B = B < 0 ? I.min_B() : B;
  I.D = D < 0 ? I.min_D() : D;
  if (I.D < I.min_D()) throw BoundTooSmall("divided-power truncation must be >= 2 p^n e");
  return I;
}

int CycloInstance::min_B() const {
  // 4e/(p-1) and room for the band above deg g
  int b = static_cast<int>((4 * e + p - 2) / (p - 1));
  return std::max(b, static_cast<int>(q) + e);
}

int CycloInstance::min_D() const { return static_cast<int>(2 * q * p * e); }

bool CycloInstance::d_identity() const { return pmul(d.E, g) == q_n.with_N(std::max(q_n.N(), pmul(d.E, g).N())); }

KernelReport ker_phi_minus_d(const CycloInstance& inst, int m) {
  if (m < 1 || m > inst.n) throw InvalidRing("m must lie in [1, n]");
  if (inst.B < inst.min_B()) throw BoundTooSmall("degree bound below 4e/(p-1)");
  KernelReport rep;
  rep.m = m;
  rep.B = inst.B;
  auto Rm = inst.R->with_precision(m);
  const Zpk& z = Rm->z();
  const int B = inst.B, e = inst.e;
  const int out = static_cast<int>(std::max<i64>(inst.p * B, B + e)) + 1;
  SeriesElem d = inst.d.E.reduce_p(m);
  IMat A = IMat::Zero(B + 1, out);
  for (int i = 0; i <= B; ++i) {
    SeriesElem f = SeriesElem::monomial(Rm, i + 1, i);
    SeriesElem lhs = phi_apply(f, out);
    SeriesElem rhs = pmul(d, f);
    for (int t = 0; t < out; ++t) {
      i64 a = lhs.raw(t)[0];
      i64 b = t < rhs.N() ? rhs.raw(t)[0] : 0;
      A(i, t) = z.sub(a, b);
    }
  }
  RowSpan ker(left_kernel(A, z), z);
  rep.length = ker.length();
  const auto& H = ker.howell().H;
  for (int r = 0; r < H.rows(); ++r) {
    std::vector<i64> c(H.row(r).data(), H.row(r).data() + H.cols());
    rep.gens.push_back(SeriesElem::from_coeffs(Rm, B + 1, c));
  }
  rep.band_empty = true;
  for (int r = 0; r < H.rows(); ++r)
    for (int t = std::max(0, B - e + 1); t <= B; ++t)
      if (H(r, t) != 0) rep.band_empty = false;
  if (!rep.band_empty) throw BoundaryContamination("kernel element with degree in the boundary band; raise B");
  IVec gv = IVec::Zero(B + 1);
  SeriesElem gm = inst.g.reduce_p(m);
  for (int t = 0; t <= gm.degree(); ++t) gv(t) = gm.raw(t)[0];
  RowSpan gspan(IMat(gv), z);
  rep.generated_by_g = gspan == ker;
  SeriesElem phig = phi_apply(inst.g, static_cast<int>(inst.q * inst.p + 1));
  rep.closed = psub(phig, pmul(inst.d.E, inst.g)).is_zero();
  return rep;
}

bool H2Report::pass() const {
  return torsion_length == length && equal && inclusion.holds && fixed_dim == 1 && (!boundary || boundary->pass());
}

H2Report h2_torsion_report(const CycloInstance& inst) {
  H2Report rep;
  auto Rn = inst.R->with_precision(inst.n);
  const int b = static_cast<int>(inst.q) * (inst.n + 1);
  auto f = shifted_power_minus_one(Rn, inst.q, b + 1);
  rep.M = diagonal_module(Rn, {f}, {SeriesElem::from_coeffs(Rn, b + 1, {1})}, Shape::Finite, inst.n, b, b + 1);
  rep.length = rep.M.length();
  rep.torsion_length = u_torsion(rep.M).length();
  rep.alpha = annihilator_alpha(rep.M);
  rep.bound_num = inst.e * (rep.i - 1);
  rep.bound_den = static_cast<int>(inst.p - 1);
  rep.equal = static_cast<i64>(rep.alpha) * rep.bound_den == rep.bound_num;
  rep.inclusion = check_ann_inclusion(rep.alpha, inst.e, rep.i, inst.p);
  if (inst.n == 1) rep.boundary = boundary_structure_check(rep.M);
  // the mod p shadow S/(p, u^{p^{n-1}}) and its Frobenius fixed points
  auto R1 = inst.R->with_precision(1);
  auto f1 = shifted_power_minus_one(R1, inst.q, static_cast<int>(inst.q) + 1);
  auto M1 = diagonal_module(R1, {f1}, {SeriesElem::from_coeffs(R1, static_cast<int>(inst.q) + 1, {1})}, Shape::Finite, 1,
                            static_cast<int>(inst.q), static_cast<int>(inst.q) + 1);
  RowSpan rel = M1.relation_span();
  IMat P = M1.phi_matrix();
  std::vector<bool> piv(P.rows(), false);
  for (int c : rel.howell().pivcol) piv[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < P.rows(); ++c)
    if (!piv[c]) free_cols.push_back(c);
  const int q = static_cast<int>(free_cols.size());
  Zpk z(inst.p, 1);
  IMat Dm = IMat::Zero(q, q);
  for (int r = 0; r < q; ++r) {
    IVec v = rel.reduce(P.row(free_cols[r]));
    for (int s = 0; s < q; ++s) Dm(r, s) = z.sub(v(free_cols[s]), r == s ? 1 : 0);
  }
  rep.fixed_dim = q - static_cast<int>(RowSpan(Dm, z).length());
  return rep;
}

namespace {

// J/mJ computed in S/Fil^{D2} and projected to S/Fil^D, which discards kernel elements created by the truncation
int mingens_at(const CycloInstance& inst, int D) {
  const int n = inst.n, K = 2 * n + inst.slack;
  const int D2 = D + static_cast<int>(inst.q * inst.p) * inst.e;
  auto RK = inst.R->with_precision(K);
  auto E = EisensteinPoly::cyclotomic(RK, n);
  auto SK = DpRing::make(E, D2, K);
  auto Sn = SK->with_precision(n);
  const int m = SK->m();
  const int dim = D2 * m, low = D * m;
  SeriesElem qn = shifted_power_minus_one(inst.R->with_precision(n), inst.q * inst.p,
                                          static_cast<int>(inst.q * inst.p + 1));
  DpElem qd = Sn->from_series(qn);
  auto unit = [&](const DpRingPtr& S, int j) {
    std::vector<i64> c(m, 0);
    c[j] = 1;
    return S->R()->elem(c);
  };
  IMat Mq(dim, dim);
  for (int l = 0; l < D2; ++l)
    for (int j = 0; j < m; ++j) {
      DpElem y = Sn->basis(l).scale(unit(Sn, j)) * qd;
      Mq.row(l * m + j) = Eigen::Map<const IVec>(y.c.data(), dim);
    }
  IMat ker = left_kernel(Mq, Sn->R()->z());
  const Zpk& zK = SK->R()->z();
  IMat pn = IMat::Identity(dim, dim) * zK.ppow(n);
  RowSpan J(vstack(ker, pn), zK);
  const IMat& H = J.howell().H;
  std::vector<IVec> jrows, mj;
  for (int r = 0; r < H.rows(); ++r) {
    IVec v = H.row(r);
    jrows.push_back(v.head(low));
    mj.push_back(v.head(low).unaryExpr([&](i64 a) { return zK.mul(a, zK.p); }));
    DpElem x = SK->zero();
    x.c.assign(v.data(), v.data() + dim);
    for (int l = 1; l < D; ++l)
      for (int j = 0; j < m; ++j) {
        DpElem y = SK->basis(l).scale(unit(SK, j)) * x;
        if (!y.is_zero()) mj.push_back(Eigen::Map<const IVec>(y.c.data(), low));
      }
  }
  RowSpan Jd(rows_of(jrows, low), zK);
  RowSpan mJ(rows_of(mj, low), zK);
  return static_cast<int>((Jd.length() - mJ.length()) / m);
}

}  // namespace

JReport ideal_j_mingens(const CycloInstance& inst) {
  JReport rep;
  rep.D = inst.D;
  rep.K = 2 * inst.n + inst.slack;
  rep.mu = mingens_at(inst, inst.D);
  rep.mu_check = mingens_at(inst, inst.D + inst.e);
  if (rep.mu != rep.mu_check) throw Unstable("minimal generator count changes under D -> D + e");
  return rep;
}

std::vector<SharpnessRow> sharpness_report(const std::vector<std::pair<i64, int>>& range) {
  std::vector<SharpnessRow> rows;
  for (auto [p, n] : range) {
    auto t0 = std::chrono::steady_clock::now();
    auto inst = CycloInstance::make(p, n);
    auto h = h2_torsion_report(inst);
    SharpnessRow r;
    r.p = p;
    r.n = n;
    r.e = inst.e;
    r.i = h.i;
    r.alpha = h.alpha;
    r.bound_num = h.bound_num;
    r.bound_den = h.bound_den;
    r.equal = h.equal;
    r.pass = h.pass() && h.alpha == inst.q;
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(r);
  }
  return rows;
}

}  // namespace prismalab
