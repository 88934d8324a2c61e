#include "prismalab/decomposition.hpp"

#include <random>

#include "prismalab/errors.hpp"

namespace prismalab {

namespace {

IMat identity(int n) { return IMat::Identity(n, n); }

IMat mat_pow(const IMat& A, int e, const Zpk& z) {
  IMat R = identity(static_cast<int>(A.rows()));
  for (int t = 0; t < e; ++t) R = mat_mul(R, A, z);
  return R;
}

IVec vec_mul(const IVec& v, const IMat& A, const Zpk& z) {
  IMat r = mat_mul(IMat(v), A, z);
  return r.row(0);
}

i64 rank(const IMat& A, const Zpk& z) { return A.rows() == 0 ? 0 : RowSpan(A, z).length(); }

int log_p_ceil(i64 p, i64 b) {
  int s = 0;
  for (i64 q = 1; q < b; q *= p) ++s;
  return s;
}

WittElem xpow(const WittRingPtr& R, int j) {
  WittElem x = R->one();
  for (int t = 0; t < j; ++t) x = x * R->gen();
  return x;
}

}  // namespace

// ---- phi-modules over S_1 ----

Section mult_section(const PhiModule& M, std::uint64_t seed) {
  Section out;
  if (M.g == 0) return out;
  if (M.R->n() != 1) throw NotKilledByP("the multiplicative section is computed over S_1");
  if (M.shape != Shape::Finite) throw PrecisionTooLow("the multiplicative section needs a finite module");
  const Ambient A = M.ambient();
  const Zpk& z = A.z();
  const IMat P = M.phi_matrix();
  const IMat relH = M.relation_span().howell().H;
  std::vector<IVec> urows;
  for (int k = 0; k < A.g; ++k)
    for (int i = 1; i < A.N; ++i)
      for (int j = 0; j < A.m(); ++j) {
        IVec v = A.zero();
        v(A.idx(k, i, j)) = 1;
        urows.push_back(v);
      }
  const RowSpan U(vstack(rows_of(urows, A.dim()), relH), z);
  const int L = A.dim() - static_cast<int>(U.length());
  const IMat PL = mat_pow(P, L, z);
  std::vector<IVec> imgs;
  for (int k = 0; k < A.g; ++k)
    for (int j = 0; j < A.m(); ++j) {
      IVec v = A.zero();
      v(A.idx(k, 0, j)) = 1;
      imgs.push_back(U.reduce(vec_mul(v, PL, z)));
    }
  out.basis = RowSpan(rows_of(imgs, A.dim()), z).howell().H;
  out.T = L + log_p_ceil(M.R->p(), M.kill_b);
  if (out.basis.rows() == 0) {
    out.values = IMat(0, A.dim());
    return out;
  }
  const IMat PT = mat_pow(P, out.T, z);
  const IMat sys = vstack(PT, U.howell().H);
  const RowSpan solver(sys, z, true);
  IMat K;
  if (seed) K = left_kernel(sys, z);
  std::mt19937_64 rng(seed);
  const RowSpan rel(relH, z);
  out.values = IMat(out.basis.rows(), A.dim());
  for (int r = 0; r < out.basis.rows(); ++r) {
    auto sol = solver.solve(out.basis.row(r));
    if (!sol) throw Inconsistent("Frobenius is not bijective on the multiplicative part");
    IVec y = sol->leftCols(A.dim());
    if (seed) {
      for (int t = 0; t < K.rows(); ++t) {
        i64 c = static_cast<i64>(rng() % z.q);
        y = A.add(y, A.scale(K.row(t).leftCols(A.dim()), c));
      }
      IVec w = A.zero();
      for (int t = 0; t < w.size(); ++t) w(t) = static_cast<i64>(rng() % z.q);
      y = A.add(y, A.mul_u(w));
    }
    out.values.row(r) = rel.reduce(vec_mul(y, PT, z));
  }
  return out;
}

PhiSplit split_phi_module(const PhiModule& M, std::uint64_t seed) {
  PhiSplit S;
  if (M.g == 0) {
    S.mult = S.nilp = M;
    S.phi_stable = S.mult_surjective = S.nilp_nilpotent = true;
    return S;
  }
  S.section = mult_section(M, seed);
  const Ambient A = M.ambient();
  const Zpk& z = A.z();
  const IMat P = M.phi_matrix();
  const IMat relH = M.relation_span().howell().H;
  const int b = M.kill_b;
  S.mult_sq = make_subquotient(A, S.section.values, relH, P);
  S.nilp_sq = make_subquotient(A, identity(A.dim()), vstack(S.section.values, relH), P);
  S.len = M.length();
  S.len_mult = S.mult_sq.length();
  S.len_nilp = S.nilp_sq.length();
  S.mult = S.len_mult ? present(S.mult_sq, 1, b) : PhiModule::zero(M.R);
  S.nilp = S.len_nilp ? present(S.nilp_sq, 1, b) : PhiModule::zero(M.R);
  S.phi_stable = S.mult_sq.phi_stable();
  IMat phis = A.saturate(A.apply_rows(S.mult_sq.top.howell().H, P));
  S.mult_surjective = RowSpan(vstack(phis, relH), z).contains_span(S.mult_sq.top);
  const RowSpan un = S.nilp_sq.u_top_plus_bot();
  const RowSpan unil(vstack(un.howell().H, S.mult_sq.top.howell().H), z);
  const int L = static_cast<int>(S.len_nilp);
  IMat img = mat_mul(identity(A.dim()), mat_pow(P, L, z), z);
  S.nilp_nilpotent = true;
  // phi^L(M_nilp) inside u M_nilp
  for (int r = 0; r < img.rows(); ++r)
    if (!unil.contains(img.row(r))) S.nilp_nilpotent = false;
  return S;
}

bool split_functorial(const PhiModule& M, const PhiModule& M2, const IMat& f) {
  const Ambient A = M.ambient(), A2 = M2.ambient();
  const Zpk& z = A.z();
  if (f.rows() != A.dim() || f.cols() != A2.dim()) throw DimensionMismatch("map of the wrong shape");
  const RowSpan rel2 = M2.relation_span();
  const IMat P = M.phi_matrix(), P2 = M2.phi_matrix();
  IMat relimg = mat_mul(M.relation_span().howell().H, f, z);
  for (int r = 0; r < relimg.rows(); ++r)
    if (!rel2.contains(relimg.row(r))) return false;
  for (int r = 0; r < A.dim(); ++r) {
    IVec v = A.zero();
    v(r) = 1;
    IVec a = vec_mul(vec_mul(v, P, z), f, z);
    IVec b = A2.apply(vec_mul(v, f, z), P2);
    if (!rel2.contains(A2.sub(a, b))) return false;
    IVec c = vec_mul(A.mul_u(v), f, z);
    if (!rel2.contains(A2.sub(c, A2.mul_u(vec_mul(v, f, z))))) return false;
  }
  auto s1 = split_phi_module(M), s2 = split_phi_module(M2);
  IMat img = mat_mul(s1.mult_sq.top.howell().H, f, z);
  for (int r = 0; r < img.rows(); ++r)
    if (!s2.mult_sq.top.contains(img.row(r))) return false;
  return true;
}

// ---- Breuil modules ----

namespace {

using DpMat = std::vector<std::vector<DpElem>>;

bool unit_residue(const DpElem& x) { return x.coord(0).is_unit(); }

DpMat dp_mat_inverse(DpMat G) {
  const int n = static_cast<int>(G.size());
  if (n == 0) return G;
  const auto& S = G[0][0].S;
  DpMat I(n, std::vector<DpElem>(n, S->zero()));
  for (int i = 0; i < n; ++i) I[i][i] = S->one();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (unit_residue(G[r][c])) {
        piv = r;
        break;
      }
    if (piv < 0) throw NotAUnit("matrix is not invertible modulo I_+");
    std::swap(G[c], G[piv]);
    std::swap(I[c], I[piv]);
    DpElem inv = dp_inverse(G[c][c]);
    for (int k = 0; k < n; ++k) {
      G[c][k] = G[c][k] * inv;
      I[c][k] = I[c][k] * inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || G[r][c].is_zero()) continue;
      DpElem f = G[r][c];
      for (int k = 0; k < n; ++k) {
        G[r][k] = G[r][k] - f * G[c][k];
        I[r][k] = I[r][k] - f * I[c][k];
      }
    }
  }
  return I;
}

// residues of a vector of DpElems as F_p coordinates (k*m + j)
IVec residue_coords(const DpVec& v, int m) {
  IVec out(static_cast<int>(v.size()) * m);
  for (size_t k = 0; k < v.size(); ++k)
    for (int j = 0; j < m; ++j) out(static_cast<int>(k) * m + j) = v[k].raw(0)[j];
  return out;
}

DpVec constant_vec(const DpRingPtr& S, const IVec& c, int r) {
  const int m = S->m();
  DpVec v = dpvec_zero(S, r);
  for (int k = 0; k < r; ++k)
    for (int j = 0; j < m; ++j) v[k].raw(0)[j] = c(k * m + j);
  return v;
}

// F_p matrix of Frobenius modulo I_+ (row convention)
IMat residue_frobenius(const BreuilModule& B) {
  const auto& S = B.S;
  const int m = S->m(), r = B.r;
  IMat F = IMat::Zero(r * m, r * m);
  for (int k = 0; k < r; ++k)
    for (int j = 0; j < m; ++j) {
      DpVec e = dpvec_zero(S, r);
      e[k] = S->scalar(xpow(S->R(), j));
      F.row(k * m + j) = residue_coords(B.frobenius(e), m);
    }
  return F;
}

// basis s completed by standard vectors to an S-basis of M; rows of G
struct Completion {
  DpMat G, Ginv;
  int L = 0;
  std::vector<int> comp;  // standard vectors used
};

Completion complete(const DpRingPtr& S, int r, const std::vector<DpVec>& s) {
  const int m = S->m();
  const Zpk& z = S->R()->z();
  Completion C;
  C.L = static_cast<int>(s.size());
  std::vector<IVec> res;
  for (const auto& v : s)
    for (int j = 0; j < m; ++j) {
      DpVec w = v;
      for (auto& x : w) x = x.scale(xpow(S->R(), j));
      res.push_back(residue_coords(w, m));
    }
  if (rank(rows_of(res, r * m), z) != static_cast<i64>(C.L) * m) throw Inconsistent("section residues are dependent");
  for (const auto& v : s) C.G.push_back(v);
  for (int k = 0; k < r && static_cast<int>(C.G.size()) < r; ++k) {
    std::vector<IVec> trial = res;
    for (int j = 0; j < m; ++j) {
      IVec e = IVec::Zero(r * m);
      e(k * m + j) = 1;
      trial.push_back(e);
    }
    if (rank(rows_of(trial, r * m), z) == static_cast<i64>(trial.size())) {
      res = trial;
      C.comp.push_back(k);
      C.G.push_back(dpvec_unit(S, r, k));
    }
  }
  C.Ginv = dp_mat_inverse(C.G);
  return C;
}

DpVec coords_in(const Completion& C, const DpVec& v) {
  const int r = static_cast<int>(v.size());
  const auto& S = v.empty() ? nullptr : v[0].S;
  DpVec a = dpvec_zero(S, r);
  for (int i = 0; i < r; ++i) {
    if (v[i].is_zero()) continue;
    for (int j = 0; j < r; ++j) a[j] = a[j] + v[i] * C.Ginv[i][j];
  }
  return a;
}

bool in_span(const Completion& C, const DpVec& v) {
  DpVec a = coords_in(C, v);
  for (size_t j = C.L; j < a.size(); ++j)
    if (!a[j].is_zero()) return false;
  return true;
}

DpVec slice(const DpVec& v, int from, int to) { return DpVec(v.begin() + from, v.begin() + to); }

DpElem random_plus(const DpRingPtr& S, std::mt19937_64& rng) {
  DpElem x = S->zero();
  for (int t = 0; t < 3; ++t) {
    int l = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::max(1, S->D() - 1)));
    if (l >= S->D()) continue;
    for (int j = 0; j < S->m(); ++j) x.raw(l)[j] = static_cast<i64>(rng() % S->p());
  }
  return x;
}

bool nilpotent_fp(const IMat& F, const Zpk& z) {
  if (F.rows() == 0) return true;
  return mat_pow(F, static_cast<int>(F.rows()), z).isZero();
}

}  // namespace

BreuilSplit split_breuil(const BreuilModule& B, std::uint64_t seed) {
  BreuilSplit out;
  if (B.S->K() != 1) throw NotKilledByP("Breuil split is computed mod p");
  const auto& S = B.S;
  const Zpk& z = S->R()->z();
  const int m = S->m(), r = B.r;
  if (r == 0) {
    out.mult = out.nilp = B;
    out.phi_stable = out.mult_bijective = out.nilp_nilpotent = out.fil_trivial = true;
    return out;
  }
  const IMat F = residue_frobenius(B);
  const int L = r * m;
  const int ell = log_p_ceil(S->p(), S->e()) + 1;
  out.T = L + ell;
  const IMat basis = RowSpan(mat_pow(F, L, z), z).howell().H;
  const IMat FT = mat_pow(F, out.T, z);
  const RowSpan solver(FT, z, true);
  IMat K;
  if (seed) K = left_kernel(FT, z);
  std::mt19937_64 rng(seed);
  // one vector per k-dimension: keep rows whose x-multiples are new
  std::vector<IVec> chosen_res;
  for (int b = 0; b < basis.rows(); ++b) {
    auto sol = solver.solve(basis.row(b));
    if (!sol) throw Inconsistent("Frobenius is not bijective on the multiplicative part");
    IVec y = *sol;
    if (seed)
      for (int t = 0; t < K.rows(); ++t) y = y + static_cast<i64>(rng() % z.q) * K.row(t);
    for (int t = 0; t < y.size(); ++t) y(t) = z.red(y(t));
    DpVec v = constant_vec(S, y, r);
    if (seed)
      for (auto& x : v) x = x + random_plus(S, rng);
    for (int t = 0; t < out.T; ++t) v = B.frobenius(v);
    std::vector<IVec> trial = chosen_res;
    for (int j = 0; j < m; ++j) {
      DpVec w = v;
      for (auto& x : w) x = x.scale(xpow(S->R(), j));
      trial.push_back(residue_coords(w, m));
    }
    if (rank(rows_of(trial, r * m), z) == static_cast<i64>(trial.size())) {
      chosen_res = trial;
      out.section.push_back(v);
    }
  }
  const int Lm = static_cast<int>(out.section.size());
  Completion C = complete(S, r, out.section);
  // multiplicative part: Fil^h = Fil^h S M_mult, phi_h(E^h s_i) = c1^h phi(s_i)
  DpElem ch = S->one();
  for (int t = 0; t < B.h; ++t) ch = ch * S->c1();
  out.phi_stable = true;
  std::vector<DpVec> Zm;
  for (const auto& s : out.section) {
    DpVec a = coords_in(C, B.frobenius(s));
    for (int j = Lm; j < r; ++j)
      if (!a[j].is_zero()) out.phi_stable = false;
    Zm.push_back(ch * slice(a, 0, Lm));
  }
  out.mult = BreuilModule::make(S, Lm, B.h, {}, {}, Zm);
  {
    IMat Fm = residue_frobenius(*out.mult);
    out.mult_bijective = rank(Fm, z) == static_cast<i64>(Lm) * m;
  }
  // quotient by the multiplicative part
  std::vector<DpVec> fil, pf, pe;
  for (size_t t = 0; t < B.fil.size(); ++t) {
    fil.push_back(slice(coords_in(C, B.fil[t]), Lm, r));
    pf.push_back(slice(coords_in(C, B.phi_fil[t]), Lm, r));
  }
  for (int c : C.comp) pe.push_back(slice(coords_in(C, B.phi_eh[c]), Lm, r));
  out.nilp = BreuilModule::make(S, r - Lm, B.h, fil, pf, pe);
  out.nilp_nilpotent = nilpotent_fp(residue_frobenius(*out.nilp), z);
  // M_mult meets Fil^h M only in Fil^h S M_mult
  const int eh = std::min(S->e() * B.h, S->D());
  std::vector<IVec> w;
  for (const auto& s : out.section)
    for (int l = 0; l < eh; ++l)
      for (int j = 0; j < m; ++j) w.push_back(B.qcoords(S->basis(l).scale(xpow(S->R(), j)) * s));
  const int qd = B.quotient_dim();
  IMat W = rows_of(w, qd);
  const IMat& FH = B.fil_quotient().howell().H;
  i64 rw = rank(W, z), rf = FH.rows() ? rank(FH, z) : 0;
  out.fil_trivial = rw == static_cast<i64>(w.size()) && rank(vstack(W, FH), z) == rw + rf;
  return out;
}

bool same_submodule(const BreuilModule& B, const std::vector<DpVec>& section, const std::vector<DpVec>& gens) {
  const auto& S = B.S;
  const int m = S->m();
  std::vector<IVec> res;
  for (const auto& g : gens)
    for (int j = 0; j < m; ++j) {
      DpVec w = g;
      for (auto& x : w) x = x.scale(xpow(S->R(), j));
      res.push_back(residue_coords(w, m));
    }
  if (rank(rows_of(res, B.r * m), S->R()->z()) != static_cast<i64>(section.size()) * m) return false;
  Completion C = complete(S, B.r, section);
  for (const auto& g : gens)
    if (!in_span(C, g)) return false;
  return true;
}

bool split_breuil_canonical(const BreuilModule& B, const std::vector<DpVec>& alt) {
  const auto& S = B.S;
  const Zpk& z = S->R()->z();
  Completion C = complete(S, B.r, alt);
  const int La = static_cast<int>(alt.size());
  // phi-stable with bijective Frobenius mod I_+ and nilpotent quotient
  std::vector<DpVec> Zm;
  for (const auto& a : alt) {
    DpVec c = coords_in(C, B.frobenius(a));
    for (int j = La; j < B.r; ++j)
      if (!c[j].is_zero()) return false;
    Zm.push_back(slice(c, 0, La));
  }
  const int m = S->m();
  IMat Fa = IMat::Zero(La * m, La * m);
  for (int i = 0; i < La; ++i)
    for (int j = 0; j < m; ++j) {
      DpVec e = dpvec_zero(S, B.r);
      for (int k = 0; k < B.r; ++k) e[k] = alt[i][k].scale(xpow(S->R(), j));
      Fa.row(i * m + j) = residue_coords(slice(coords_in(C, B.frobenius(e)), 0, La), m);
    }
  if (rank(Fa, z) != static_cast<i64>(La) * m) return false;
  const int rn = B.r - La;
  IMat Fn = IMat::Zero(rn * m, rn * m);
  for (int i = 0; i < rn; ++i)
    for (int j = 0; j < m; ++j) {
      DpVec e = dpvec_zero(S, B.r);
      e[C.comp[i]] = S->scalar(xpow(S->R(), j));
      Fn.row(i * m + j) = residue_coords(slice(coords_in(C, B.frobenius(e)), La, B.r), m);
    }
  if (!nilpotent_fp(Fn, z)) return false;
  auto sp = split_breuil(B);
  return same_submodule(B, sp.section, alt);
}

// ---- Fontaine-Laffaille modules ----

namespace {

IMat fl_phi0(const FLModule& M) {
  const int m = M.R->m();
  IMat F(M.coord_dim(), M.coord_dim());
  for (int k = 0; k < M.d; ++k)
    for (int j = 0; j < m; ++j) {
      WittVec e(M.d, M.R->zero());
      e[k] = xpow(M.R, j);
      F.row(k * m + j) = M.coords(*M.eval_phi(0, e));
    }
  return F;
}

// F_p rows of x^j v for every vector
IMat k_rows(const FLModule& M, const std::vector<WittVec>& vs) {
  std::vector<IVec> rows;
  for (const auto& v : vs)
    for (int j = 0; j < M.R->m(); ++j) {
      WittVec w = v;
      for (auto& x : w) x = x * xpow(M.R, j);
      rows.push_back(M.coords(w));
    }
  return rows_of(rows, M.coord_dim());
}

// k-coordinates of v in the basis rows (with x^j multiples) of G
WittVec k_coords(const FLModule& M, const RowSpan& G, int n, const IVec& v) {
  auto sol = G.solve(v);
  if (!sol) throw Inconsistent("vector outside the span");
  const int m = M.R->m();
  WittVec out(n, M.R->zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out[i] = out[i] + M.R->scalar((*sol)(i * m + j)) * xpow(M.R, j);
  return out;
}

}  // namespace

FLSplit split_fl(const FLModule& M) {
  if (M.R->n() != 1) throw NotKilledByP("split_fl works mod p");
  auto chk = is_fl_module(M);
  if (!chk.ok) throw NotFL("axiom " + chk.axiom + " fails");
  const Zpk& z = M.R->z();
  const int m = M.R->m(), dm = M.coord_dim();
  FLSplit out;
  const IMat F = M.d ? fl_phi0(M) : IMat(0, 0);
  out.mult_basis = M.d ? RowSpan(mat_pow(F, dm, z), z).howell().H : IMat(0, 0);
  // k-basis of M^m, then standard vectors
  std::vector<WittVec> kb;
  for (int r = 0; r < out.mult_basis.rows(); ++r) {
    WittVec v = M.from_coords(out.mult_basis.row(r));
    std::vector<WittVec> trial = kb;
    trial.push_back(v);
    if (rank(k_rows(M, trial), z) == static_cast<i64>(trial.size()) * m) kb = trial;
  }
  const int dmul = static_cast<int>(kb.size());
  std::vector<WittVec> full = kb;
  for (int k = 0; k < M.d; ++k) {
    WittVec e(M.d, M.R->zero());
    e[k] = M.R->one();
    std::vector<WittVec> trial = full;
    trial.push_back(e);
    if (rank(k_rows(M, trial), z) == static_cast<i64>(trial.size()) * m) full = trial;
  }
  const RowSpan G(k_rows(M, full), z, true);
  auto proj = [&](const WittVec& v, int from, int to) {
    WittVec c = k_coords(M, G, M.d, M.coords(v));
    return WittVec(c.begin() + from, c.begin() + to);
  };
  const int h = M.h;
  std::vector<std::vector<WittVec>> fm(h + 1), pm(h + 1), fn(h + 1), pn(h + 1);
  bool stable = true;
  for (int i = 0; i < dmul; ++i) {
    WittVec e(dmul, M.R->zero());
    e[i] = M.R->one();
    fm[0].push_back(e);
    WittVec img = *M.eval_phi(0, kb[i]);
    WittVec c = k_coords(M, G, M.d, M.coords(img));
    for (int j = dmul; j < M.d; ++j)
      if (!c[j].is_zero()) stable = false;
    pm[0].push_back(WittVec(c.begin(), c.begin() + dmul));
  }
  out.mult = FLModule::make(M.R, std::vector<int>(dmul, 1), h, fm, pm);
  for (int i = 0; i <= h; ++i)
    for (size_t g = 0; g < M.fil[i].size(); ++g) {
      fn[i].push_back(proj(M.fil[i][g], dmul, M.d));
      pn[i].push_back(proj(M.phis[i][g], dmul, M.d));
    }
  out.nilp = FLModule::make(M.R, std::vector<int>(M.d - dmul, 1), h, fn, pn);
  // Fil^1 meets M^m trivially
  const IMat W = k_rows(M, kb);
  const IMat& F1 = h >= 1 ? M.fil_span(1).howell().H : IMat(0, dm);
  const i64 rw = rank(W, z), rf = rank(F1, z);
  out.fil_trivial = rank(vstack(W, F1), z) == rw + rf;
  out.phi0_bijective = stable && (dmul == 0 || rank(fl_phi0(out.mult), z) == static_cast<i64>(dmul) * m);
  out.phi0_nilpotent = out.nilp.d == 0 || nilpotent_fp(fl_phi0(out.nilp), z);
  return out;
}

bool check_split_compat(const FLModule& M, int Dz) {
  auto fs = split_fl(M);
  auto B = fl_to_breuil(M, Dz);
  auto bs = split_breuil(B);
  if (!fs.ok() || !bs.ok()) return false;
  std::vector<DpVec> gens;
  const int m = M.R->m();
  for (int r = 0; r < fs.mult_basis.rows(); ++r) {
    DpVec v = dpvec_zero(B.S, M.d);
    for (int k = 0; k < M.d; ++k)
      for (int j = 0; j < m; ++j) v[k].raw(0)[j] = fs.mult_basis(r, k * m + j);
    gens.push_back(v);
  }
  // gens spans S (x) M^m over S; trim to a k-basis
  std::vector<DpVec> basis;
  std::vector<IVec> res;
  for (const auto& g : gens) {
    std::vector<IVec> trial = res;
    for (int j = 0; j < m; ++j) {
      DpVec w = g;
      for (auto& x : w) x = x.scale(xpow(M.R, j));
      trial.push_back(residue_coords(w, m));
    }
    if (rank(rows_of(trial, M.d * m), M.R->z()) == static_cast<i64>(trial.size())) {
      res = trial;
      basis.push_back(g);
    }
  }
  return static_cast<int>(basis.size()) == bs.mult->r && same_submodule(B, bs.section, basis);
}

}  // namespace prismalab
