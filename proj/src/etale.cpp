#include "prismalab/etale.hpp"

#include "prismalab/errors.hpp"

namespace prismalab {

namespace {

IMat identity(int n) { return IMat::Identity(n, n); }

i64 rank_fp(const IMat& A, const Zpk& z) { return RowSpan(A, z).length(); }

}  // namespace

EtalePhiModule EtalePhiModule::make(WittRingPtr k, std::vector<std::vector<WittElem>> A) {
  if (k->n() != 1) throw InvalidRing("an etale phi-module lives over a finite field");
  EtalePhiModule V;
  V.k = std::move(k);
  V.d = static_cast<int>(A.size());
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != V.d) throw DimensionMismatch("Frobenius matrix must be square");
  V.A = std::move(A);
  IMat B = V.fp_matrix();
  if (rank_fp(B, V.k->z()) != B.rows()) throw IllFormedPhi("Frobenius is not bijective");
  return V;
}

IMat EtalePhiModule::fp_matrix() const {
  const int m = k->m();
  IMat B = IMat::Zero(d * m, d * m);
  for (int kk = 0; kk < d; ++kk) {
    WittElem xj = k->one();
    for (int j = 0; j < m; ++j) {
      WittElem s = k->sigma(xj);
      for (int i = 0; i < d; ++i) {
        WittElem c = s * A[i][kk];
        for (int l = 0; l < m; ++l) B(kk * m + j, i * m + l) = c.c[l];
      }
      xj = xj * (m == 1 ? k->one() : k->gen());
    }
  }
  return B;
}

FixedPoints fp_fixed_points(const IMat& B, i64 p, int t_max) {
  Zpk z(p, 1);
  const int D = static_cast<int>(B.rows());
  FixedPoints out;
  IMat P = identity(D);
  for (int t = 1; t <= t_max; ++t) {
    P = mat_mul(P, B, z);
    IMat Dm = reduce_mod(P - identity(D), z);
    int dim = D - static_cast<int>(rank_fp(Dm, z));
    out.dims.push_back(dim);
    if (dim == D) {
      out.t = t;
      break;
    }
  }
  if (out.t == 0) throw BoundTooSmall("fixed space not full over F_{p^" + std::to_string(t_max) + "}");
  const int t = out.t;
  out.field = WittRing::residue_field(p, t);
  const auto& S = out.field->sigma_matrix();  // Frob(y^s) = sum_r S[r][s] y^r
  // L = B (x) Frob in row convention on index b*t + s
  IMat L = IMat::Zero(D * t, D * t);
  for (int b = 0; b < D; ++b)
    for (int s = 0; s < t; ++s)
      for (int c = 0; c < D; ++c) {
        if (B(b, c) == 0) continue;
        for (int r = 0; r < t; ++r) L(b * t + s, c * t + r) = z.add(L(b * t + s, c * t + r), z.mul(B(b, c), S[r][s]));
      }
  IMat K = left_kernel(reduce_mod(L - identity(D * t), z), z);
  out.basis = RowSpan(K, z).howell().H;
  return out;
}

FixedPoints etale_fixed_points(const EtalePhiModule& V, int t_max) {
  return fp_fixed_points(V.fp_matrix(), V.k->p(), t_max);
}

int enumerate_fixed_dimension(const IMat& B, i64 p, int t) {
  Zpk z(p, 1);
  const int D = static_cast<int>(B.rows());
  i64 total = ipow(p, D), count = 0;
  IVec v(D);
  for (i64 code = 0; code < total; ++code) {
    i64 c = code;
    for (int i = 0; i < D; ++i) {
      v(i) = c % p;
      c /= p;
    }
    IVec w = v;
    for (int s = 0; s < t; ++s) w = reduce_mod(w * B, z);
    count += w == v;
  }
  int dim = 0;
  while (count > 1) {
    count /= p;
    ++dim;
  }
  return dim;
}

IMat boundary_frobenius(const PhiModule& M) {
  if (M.g == 0) return IMat(0, 0);
  if (M.R->n() != 1) throw NotKilledByP("boundary Frobenius needs a module over S_1");
  Ambient A = M.ambient(1);
  Ambient full = M.ambient();
  RowSpan rel = M.relation_span();
  for (int k = 0; k < M.g; ++k)
    if (!rel.contains(full.mul_u(full.gen(k)))) throw NotKilledByP("module is not killed by u");
  RowSpan rel1 = M.relation_span(1);
  std::vector<bool> piv(A.dim(), false);
  for (int c : rel1.howell().pivcol) piv[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < A.dim(); ++c)
    if (!piv[c]) free_cols.push_back(c);
  IMat P = M.phi_matrix(1);
  const int D = static_cast<int>(free_cols.size());
  IMat B = IMat::Zero(D, D);
  for (int r = 0; r < D; ++r) {
    IVec v = rel1.reduce(P.row(free_cols[r]));
    for (int s = 0; s < D; ++s) B(r, s) = v(free_cols[s]);
  }
  return B;
}

}  // namespace prismalab
