#include "prismalab/phi_module.hpp"

#include <algorithm>
#include <sstream>

#include "prismalab/errors.hpp"

namespace prismalab {

namespace {

SeriesElem as_exact(const SeriesElem& s) {
  SeriesElem r(s.ring(), s.N(), true);
  for (int i = 0; i < s.N(); ++i)
    for (int j = 0; j < s.m(); ++j) r.raw(i)[j] = s.raw(i)[j];
  return r;
}

std::vector<SeriesElem> column(const SeriesMat& M, int c) {
  std::vector<SeriesElem> out;
  for (const auto& row : M) out.push_back(row[c]);
  return out;
}

// u^t as a row-convention matrix on the ambient
IMat shift_matrix(const Ambient& A, int t) {
  IMat U = IMat::Zero(A.dim(), A.dim());
  for (int k = 0; k < A.g; ++k)
    for (int i = 0; i + t < A.N; ++i)
      for (int j = 0; j < A.m(); ++j) U(A.idx(k, i, j), A.idx(k, i + t, j)) = 1;
  return U;
}

// {x : x * Mat lies in span}, as generators in the first block
IMat preimage_of_span(const IMat& Mat, const RowSpan& span, const Zpk& z) {
  IMat stack = vstack(Mat, span.howell().H);
  if (span.howell().H.rows() == 0) stack = Mat;
  IMat K = left_kernel(stack, z);
  return K.leftCols(Mat.rows());
}

SeriesElem zero_series(const WittRingPtr& R, int N) { return SeriesElem(R, std::max(N, 1), true); }

}  // namespace

PhiModule PhiModule::make(WittRingPtr R, int g, SeriesMat rel, SeriesMat Phi, Shape shape, int a, int b, int N) {
  PhiModule M;
  M.R = std::move(R);
  M.g = g;
  M.rel = std::move(rel);
  M.Phi = std::move(Phi);
  M.shape = shape;
  M.kill_a = a;
  M.kill_b = b;
  M.N = N;
  if (static_cast<int>(M.rel.size()) != g || static_cast<int>(M.Phi.size()) != g)
    throw DimensionMismatch("relation and Frobenius matrices need one row per generator");
  for (const auto& row : M.rel)
    if (row.size() != M.rel[0].size()) throw DimensionMismatch("ragged relation matrix");
  for (const auto& row : M.Phi)
    if (static_cast<int>(row.size()) != g) throw DimensionMismatch("Frobenius matrix must be g x g");
  if (N < 1) throw PrecisionTooLow("u-precision must be >= 1");
  if (shape == Shape::Finite && N <= b) throw PrecisionTooLow("u-kill exponent must lie below the u-precision");
  if (shape == Shape::FreePlusFinite && N < 2 * b + 2)
    throw PrecisionTooLow("u-precision must be at least 2b + 2 for a free-plus-finite module");
  if (g == 0) return M;
  Ambient A = M.ambient();
  RowSpan span = M.relation_span();
  if (shape == Shape::Finite) {
    if (a < 0 || a > M.R->n()) throw PrecisionTooLow("p-kill exponent out of range");
    for (int k = 0; k < g; ++k) {
      if (!span.contains(A.mul_u(A.gen(k), b))) throw PrecisionTooLow("u^b does not kill generator " + std::to_string(k));
      if (!span.contains(A.scale(A.gen(k), A.z().ppow(a))))
        throw PrecisionTooLow("p^a does not kill generator " + std::to_string(k));
    }
  }
  IMat P = M.phi_matrix();
  for (int c = 0; c < M.num_rel(); ++c) {
    IVec v = A.apply(A.from_series(column(M.rel, c)), P);
    if (!span.contains(v)) throw IllFormedPhi("phi does not preserve relation " + std::to_string(c));
  }
  return M;
}

PhiModule PhiModule::zero(WittRingPtr R) {
  PhiModule M;
  M.R = std::move(R);
  M.shape = Shape::Finite;
  M.N = 1;
  return M;
}

IMat PhiModule::relation_rows(int N2) const {
  Ambient A = ambient(N2);
  std::vector<IVec> cols;
  for (int c = 0; c < num_rel(); ++c) cols.push_back(A.from_series(column(rel, c)));
  return A.saturate(rows_of(cols, A.dim()));
}

RowSpan PhiModule::relation_span(int N2) const { return RowSpan(relation_rows(N2), R->z()); }

IMat PhiModule::phi_matrix(int N2) const { return ambient(N2).phi_matrix(Phi); }

SubQuotient PhiModule::as_subquotient(int N2) const {
  Ambient A = ambient(N2);
  SubQuotient s;
  s.amb = A;
  s.bot = relation_span(N2);
  s.top = RowSpan(IMat::Identity(A.dim(), A.dim()), R->z());
  s.phi = phi_matrix(N2);
  return s;
}

i64 PhiModule::length() const {
  if (shape != Shape::Finite) throw PrecisionTooLow("length needs a certified finite module");
  Ambient A = ambient();
  return static_cast<i64>(A.dim()) * R->n() - relation_span().length();
}

std::string PhiModule::describe() const {
  std::ostringstream os;
  os << "phi-module g=" << g << " relations=" << num_rel() << " N=" << N;
  if (shape == Shape::Finite) os << " killed by (p^" << kill_a << ", u^" << kill_b << ")";
  if (shape == Shape::FreePlusFinite) os << " free + finite, torsion killed by u^" << kill_b;
  return os.str();
}

PhiModule diagonal_module(WittRingPtr R, const std::vector<SeriesElem>& rel, const std::vector<SeriesElem>& phi,
                          Shape shape, int a, int b, int N) {
  const int g = static_cast<int>(rel.size());
  if (static_cast<int>(phi.size()) != g) throw DimensionMismatch("one Frobenius entry per generator");
  SeriesMat rm(g), pm(g, std::vector<SeriesElem>(g, zero_series(R, 1)));
  for (int k = 0; k < g; ++k) {
    pm[k][k] = phi[k];
    if (rel[k].is_zero()) continue;
    for (int i = 0; i < g; ++i) rm[i].push_back(i == k ? rel[k] : zero_series(R, 1));
  }
  return PhiModule::make(std::move(R), g, rm, pm, shape, a, b, N);
}

PhiModule direct_sum(const PhiModule& A, const PhiModule& B) {
  if (A.g == 0) return B;
  if (B.g == 0) return A;
  const int g = A.g + B.g;
  const int N = std::max(A.N, B.N);
  const int ra = A.num_rel(), rb = B.num_rel();
  SeriesMat rel(g, std::vector<SeriesElem>(ra + rb, zero_series(A.R, N)));
  SeriesMat Phi(g, std::vector<SeriesElem>(g, zero_series(A.R, N)));
  for (int i = 0; i < A.g; ++i) {
    for (int c = 0; c < ra; ++c) rel[i][c] = A.rel[i][c];
    for (int j = 0; j < A.g; ++j) Phi[i][j] = A.Phi[i][j];
  }
  for (int i = 0; i < B.g; ++i) {
    for (int c = 0; c < rb; ++c) rel[A.g + i][ra + c] = B.rel[i][c];
    for (int j = 0; j < B.g; ++j) Phi[A.g + i][A.g + j] = B.Phi[i][j];
  }
  Shape s = Shape::General;
  if (A.shape == Shape::Finite && B.shape == Shape::Finite) s = Shape::Finite;
  if (A.shape != Shape::General && B.shape != Shape::General && s != Shape::Finite) s = Shape::FreePlusFinite;
  int b = std::max(A.kill_b, B.kill_b);
  int Nn = N;
  if (s == Shape::FreePlusFinite) Nn = std::max(N, 2 * b + 2);
  return PhiModule::make(A.R, g, rel, Phi, s, std::max(A.kill_a, B.kill_a), b, Nn);
}

PhiModule present(const SubQuotient& sq, int a, int b) {
  const Ambient& A = sq.amb;
  const Zpk& z = A.z();
  std::vector<IVec> chosen;
  IMat cand = sq.generators();
  RowSpan cur = sq.bot;
  for (int r = 0; r < cand.rows(); ++r) {
    if (cur.contains(cand.row(r))) continue;
    chosen.push_back(cand.row(r));
    cur = RowSpan(vstack(cur.howell().H, A.saturate(cand.row(r))), z);
  }
  const int s = static_cast<int>(chosen.size());
  if (s == 0) return PhiModule::zero(A.R);
  const int Ns = b + 1;
  Ambient As(A.R, s, Ns);
  IMat Img(As.dim(), A.dim());
  WittElem x = A.m() == 1 ? A.R->one() : A.R->gen();
  for (int k = 0; k < s; ++k) {
    IVec v = chosen[k];
    for (int i = 0; i < Ns; ++i) {
      IVec w = v;
      for (int j = 0; j < A.m(); ++j) {
        Img.row(As.idx(k, i, j)) = w;
        w = A.mul_witt(w, x);
      }
      v = A.mul_u(v);
    }
  }
  IMat K = preimage_of_span(Img, sq.bot, z);
  RowSpan Ks(K, z);
  SeriesMat rel(s);
  const auto& KH = Ks.howell().H;
  for (int r = 0; r < KH.rows(); ++r) {
    auto col = As.to_series(KH.row(r));
    for (int k = 0; k < s; ++k) rel[k].push_back(as_exact(col[k]));
  }
  IMat stack = vstack(Img, sq.bot.howell().H);
  RowSpan solver(stack, z, true);
  SeriesMat Phi(s, std::vector<SeriesElem>(s, zero_series(A.R, Ns)));
  for (int k = 0; k < s; ++k) {
    IVec target = A.apply(chosen[k], sq.phi);
    auto sol = solver.solve(target);
    if (!sol) throw IllFormedPhi("Frobenius does not preserve the submodule");
    IVec first = sol->leftCols(As.dim());
    auto col = As.to_series(first);
    for (int i = 0; i < s; ++i) Phi[i][k] = as_exact(col[i]);
  }
  return PhiModule::make(A.R, s, rel, Phi, Shape::Finite, a, b, Ns);
}

PhiModule u_torsion(const PhiModule& M) {
  if (M.g == 0) return M;
  if (M.shape == Shape::Finite) return M;
  if (M.shape == Shape::General) throw PrecisionTooLow("u-torsion needs a kill certificate or a free-plus-finite shape");
  const int b = M.kill_b;
  Ambient A = M.ambient();
  RowSpan rel = M.relation_span();
  IMat K = preimage_of_span(shift_matrix(A, b), rel, A.z());
  // the torsion is K modulo rel + u^{N-b} F
  std::vector<IVec> tail;
  for (int k = 0; k < A.g; ++k) tail.push_back(A.mul_u(A.gen(k), A.N - b));
  IMat tailm = A.saturate(rows_of(tail, A.dim()));
  SubQuotient sq;
  sq.amb = A;
  sq.bot = RowSpan(vstack(rel.howell().H, tailm), A.z());
  sq.top = RowSpan(vstack(sq.bot.howell().H, K), A.z());
  sq.phi = M.phi_matrix();
  if (sq.length() == 0) return PhiModule::zero(M.R);
  return present(sq, M.R->n(), b);
}

namespace {

// rows: Z/p^n-basis of Ann(M) on the coordinates u^i x^j (index i m + j)
IMat annihilator_rows(const PhiModule& M) {
  Ambient A = M.ambient();
  const Zpk& z = A.z();
  const int src = A.N * A.m();
  RowSpan rel = M.relation_span();
  const auto& RH = rel.howell().H;
  const int g = A.g, dim = A.dim();
  IMat stack = IMat::Zero(src + g * RH.rows(), g * dim);
  WittElem x = A.m() == 1 ? A.R->one() : A.R->gen();
  for (int i = 0; i < A.N; ++i) {
    WittElem xj = A.R->one();
    for (int j = 0; j < A.m(); ++j) {
      for (int k = 0; k < g; ++k) {
        IVec v = A.mul_witt(A.mul_u(A.gen(k), i), xj);
        stack.block(i * A.m() + j, k * dim, 1, dim) = v;
      }
      xj = xj * x;
    }
  }
  for (int k = 0; k < g; ++k) stack.block(src + k * RH.rows(), k * dim, RH.rows(), dim) = RH;
  return left_kernel(stack, z).leftCols(src);
}

}  // namespace

int annihilator_alpha(const PhiModule& M) {
  if (M.g == 0) return 0;
  if (M.shape != Shape::Finite) throw PrecisionTooLow("alpha needs a certified finite module");
  IMat K = annihilator_rows(M);
  const Zpk& z = M.R->z();
  const int m = M.R->m();
  int alpha = M.N;
  for (int r = 0; r < K.rows(); ++r)
    for (int t = 0; t < K.cols(); ++t)
      if (K(r, t) % z.p != 0) {
        alpha = std::min(alpha, t / m);
        break;
      }
  return alpha;
}

AnnExponents annihilator_exponents(const PhiModule& M) {
  AnnExponents out;
  if (M.g == 0) return out;
  if (M.shape != Shape::Finite) throw PrecisionTooLow("annihilator exponents need a certified finite module");
  const Zpk& z = M.R->z();
  const int m = M.R->m();
  IMat K = annihilator_rows(M);
  out.gamma = z.k;
  for (int r = 0; r < K.rows(); ++r)
    for (int j = 0; j < m; ++j)
      if (K(r, j) != 0) out.gamma = std::min(out.gamma, vp(K(r, j), z.p));
  Ambient A = M.ambient();
  RowSpan rel = M.relation_span();
  out.beta = z.k;
  for (int b = 0; b < z.k; ++b) {
    bool ok = true;
    for (int k = 0; k < A.g && ok; ++k) ok = rel.contains(A.scale(A.gen(k), z.ppow(b)));
    if (ok) {
      out.beta = b;
      break;
    }
  }
  return out;
}

int annihilator_alpha_modp(const PhiModule& M) {
  if (M.g == 0) return 0;
  if (M.shape != Shape::Finite) throw PrecisionTooLow("alpha needs a certified finite module");
  Ambient A = M.ambient();
  std::vector<IVec> pe;
  for (int k = 0; k < A.g; ++k) pe.push_back(A.scale(A.gen(k), A.z().p));
  RowSpan span(vstack(M.relation_rows(), A.saturate(rows_of(pe, A.dim()))), A.z());
  for (int a = 0; a <= A.N; ++a) {
    bool ok = true;
    for (int k = 0; k < A.g && ok; ++k) ok = span.contains(A.mul_u(A.gen(k), a));
    if (ok) return a;
  }
  return A.N;
}

AnnInclusion check_ann_inclusion(int alpha, int e, int i, i64 p) {
  AnnInclusion r;
  r.lhs = e * (i - 1) + alpha;
  r.rhs = static_cast<int>(p * alpha);
  r.holds = r.lhs >= r.rhs;
  return r;
}

BoundaryReport boundary_structure_check(const PhiModule& M) {
  BoundaryReport rep;
  if (M.g == 0) {
    rep.killed_by_p_u = rep.phi_bijective = true;
    return rep;
  }
  if (M.shape != Shape::Finite) throw PrecisionTooLow("boundary check needs a certified finite module");
  Ambient A = M.ambient();
  RowSpan rel = M.relation_span();
  rep.killed_by_p_u = true;
  for (int k = 0; k < A.g; ++k) {
    rep.killed_by_p_u &= rel.contains(A.mul_u(A.gen(k)));
    rep.killed_by_p_u &= rel.contains(A.scale(A.gen(k), A.z().p));
  }
  IMat img = M.phi_matrix();
  RowSpan im(vstack(img, rel.howell().H), A.z());
  rep.phi_bijective = im.length() == static_cast<i64>(A.dim()) * A.z().k;
  return rep;
}

ZpShape zp_shape(const PhiModule& M) {
  ZpShape out;
  const int n = M.R->n();
  const int m = M.R->m();
  if (M.g == 0) {
    out.lengths.assign(n + 1, 0);
    out.certified = true;
    return out;
  }
  auto quotient_length = [&](int t, int j) {
    Ambient A = M.ambient(t);
    std::vector<IVec> pj;
    for (int k = 0; k < A.g; ++k) pj.push_back(A.scale(A.gen(k), A.z().ppow(j)));
    RowSpan s(vstack(M.relation_rows(t), A.saturate(rows_of(pj, A.dim()))), A.z());
    return static_cast<i64>(A.dim()) * n - s.length();
  };
  out.lengths.push_back(0);
  for (int j = 1; j <= n; ++j) out.lengths.push_back(quotient_length(1, j));
  std::vector<int> count(n + 2, 0);
  for (int j = 1; j <= n; ++j) count[j] = static_cast<int>((out.lengths[j] - out.lengths[j - 1]) / m);
  for (int j = 1; j <= n; ++j)
    for (int c = 0; c < count[j] - count[j + 1]; ++c) out.exponents.push_back(j);
  std::sort(out.exponents.begin(), out.exponents.end());
  // refutation: u-torsion in M/p^j visible below u^{N-1}
  Ambient A = M.ambient();
  for (int j = 1; j <= n; ++j) {
    std::vector<IVec> pj;
    for (int k = 0; k < A.g; ++k) pj.push_back(A.scale(A.gen(k), A.z().ppow(j)));
    RowSpan relj(vstack(M.relation_rows(), A.saturate(rows_of(pj, A.dim()))), A.z());
    IMat K = preimage_of_span(shift_matrix(A, 1), relj, A.z());
    std::vector<IVec> tail;
    for (int k = 0; k < A.g; ++k) tail.push_back(A.mul_u(A.gen(k), A.N - 1));
    RowSpan big(vstack(relj.howell().H, A.saturate(rows_of(tail, A.dim()))), A.z());
    for (int r = 0; r < K.rows(); ++r)
      if (!big.contains(K.row(r))) {
        out.refuted = true;
        out.fail_j = j;
        out.witness = K.row(r);
        return out;
      }
  }
  // certify by the full length sequences
  for (int j = 1; j <= n; ++j) {
    i64 per = 0;
    for (int a : out.exponents) per += std::min(a, j);
    for (int t = 1; t < A.N; ++t)
      if (quotient_length(t, j) != static_cast<i64>(t) * m * per) {
        out.refuted = true;
        out.fail_j = j;
        return out;
      }
  }
  out.certified = true;
  return out;
}

SeriesElem eisenstein_power(const EisensteinPoly& E, int k) {
  SeriesElem r = SeriesElem::constant(E.E.ring()->one(), 1, true);
  for (int i = 0; i < k; ++i) r = pmul(r, E.E);
  return r;
}

bool height_check(const KisinModule& K) {
  const PhiModule& M = K.M;
  const int g = M.g;
  if (g == 0) return true;
  auto R = M.R;
  SeriesElem Eh = eisenstein_power(K.E.with_precision(R->n()), K.h);
  auto product = [&](const SeriesMat& X, const SeriesMat& Y) {
    SeriesMat Z(g, std::vector<SeriesElem>(g, SeriesElem(R, 1, true)));
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) Z[i][j] = padd(Z[i][j], pmul(X[i][k], Y[k][j]));
    return Z;
  };
  SeriesMat PP = product(M.Phi, K.Psi);  // (1 (x) phi) o psi
  SeriesMat QQ = product(K.Psi, M.Phi);  // psi o (1 (x) phi)
  for (int i = 0; i < g; ++i) {
    PP[i][i] = psub(PP[i][i], Eh);
    QQ[i][i] = psub(QQ[i][i], Eh);
  }
  if (M.num_rel() == 0) {
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        if (!PP[i][j].is_zero() || !QQ[i][j].is_zero()) return false;
    return true;
  }
  int N1 = M.N;
  int N2 = M.shape == Shape::Finite ? std::max<int>(M.N, static_cast<int>(R->p()) * M.kill_b + 1) : M.N;
  Ambient A1 = M.ambient(N1);
  RowSpan rel1 = M.relation_span(N1);
  PhiModule T = frobenius_twist(M);
  Ambient A2(R, g, N2);
  RowSpan rel2 = T.relation_span(N2);
  for (int j = 0; j < g; ++j) {
    std::vector<SeriesElem> c1, c2;
    for (int i = 0; i < g; ++i) {
      c1.push_back(PP[i][j]);
      c2.push_back(QQ[i][j]);
    }
    if (!rel1.contains(A1.from_series(c1))) return false;
    if (!rel2.contains(A2.from_series(c2))) return false;
  }
  return true;
}

PhiModule frobenius_twist(const PhiModule& M) {
  if (M.g == 0) return M;
  const i64 p = M.R->p();
  SeriesMat rel(M.g);
  for (int i = 0; i < M.g; ++i)
    for (const auto& s : M.rel[i]) rel[i].push_back(phi_apply(s, static_cast<int>(p * s.N())));
  int b = static_cast<int>(p * M.kill_b);
  int N = M.shape == Shape::Finite ? b + 1 : static_cast<int>(p * M.N);
  if (M.shape == Shape::FreePlusFinite) N = std::max(N, 2 * b + 2);
  SeriesMat Phi(M.g, std::vector<SeriesElem>(M.g, SeriesElem(M.R, 1, true)));
  return PhiModule::make(M.R, M.g, rel, Phi, M.shape, M.kill_a, b, N);
}

TwistIso twist_u_torsion_iso(const PhiModule& M) {
  TwistIso out;
  if (M.g == 0) {
    out.lands_in_target = out.injective = true;
    return out;
  }
  if (M.shape == Shape::FreePlusFinite) return twist_u_torsion_iso(u_torsion(M));
  if (M.shape != Shape::Finite) throw PrecisionTooLow("twist map needs a certified module");
  const i64 p = M.R->p();
  PhiModule T = frobenius_twist(M);
  Ambient A1 = M.ambient(), A2 = T.ambient();
  RowSpan rel1 = M.relation_span(), rel2 = T.relation_span();
  IMat K1 = preimage_of_span(shift_matrix(A1, 1), rel1, A1.z());
  IMat K2 = preimage_of_span(shift_matrix(A2, 1), rel2, A2.z());
  RowSpan S1(vstack(K1, rel1.howell().H), A1.z()), S2(vstack(K2, rel2.howell().H), A2.z());
  out.len_source = S1.length() - rel1.length();
  out.len_target = S2.length() - rel2.length();
  // m -> u^{p-1} (1 (x) m): u^i x^j e_k -> u^{p-1+pi} sigma(x^j) e_k
  IMat Map = IMat::Zero(A1.dim(), A2.dim());
  WittElem x = A1.m() == 1 ? M.R->one() : M.R->gen();
  for (int k = 0; k < A1.g; ++k) {
    WittElem xj = M.R->one();
    for (int j = 0; j < A1.m(); ++j) {
      IVec base = A2.mul_witt(A2.gen(k), M.R->sigma(xj));
      for (int i = 0; i < A1.N; ++i) Map.row(A1.idx(k, i, j)) = A2.mul_u(base, static_cast<int>(p - 1 + p * i));
      xj = xj * x;
    }
  }
  const auto& SH = S1.howell().H;
  IMat img = mat_mul(SH, Map, A2.z());
  out.lands_in_target = true;
  for (int r = 0; r < img.rows(); ++r) out.lands_in_target &= S2.contains(img.row(r));
  RowSpan imspan(vstack(img, rel2.howell().H), A2.z());
  out.injective = imspan.length() - rel2.length() == out.len_source;
  // relations must map into relations for the map to be well defined
  IMat relimg = mat_mul(rel1.howell().H, Map, A2.z());
  for (int r = 0; r < relimg.rows(); ++r) out.lands_in_target &= rel2.contains(relimg.row(r));
  return out;
}

}  // namespace prismalab
