#include "prismalab/fl.hpp"

#include <sstream>

#include "prismalab/errors.hpp"

namespace prismalab {

namespace {

WittElem xpow(const WittRingPtr& R, int j) {
  WittElem x = R->one();
  for (int t = 0; t < j; ++t) x = x * R->gen();
  return x;
}

WittVec scale(const WittElem& c, const WittVec& v) {
  WittVec r = v;
  for (auto& x : r) x = c * x;
  return r;
}

WittVec add(const WittVec& a, const WittVec& b) {
  WittVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

// x^j g for every generator g
IMat gen_rows(const FLModule& M, const std::vector<WittVec>& gens, int mult = 1) {
  const int m = M.R->m();
  IMat A(static_cast<int>(gens.size()) * m, M.coord_dim());
  int row = 0;
  for (const auto& g : gens)
    for (int j = 0; j < m; ++j, ++row) A.row(row) = M.coords(scale(M.R->scalar(mult) * xpow(M.R, j), g));
  return A;
}

IMat intersect(const IMat& U, const IMat& V, const Zpk& z) {
  IMat K = left_kernel(vstack(U, V), z);
  if (K.rows() == 0) return IMat(0, U.cols());
  return mat_mul(IMat(K.leftCols(U.rows())), U, z);
}

}  // namespace

FLModule FLModule::make(WittRingPtr R, std::vector<int> a, int h, std::vector<std::vector<WittVec>> fil,
                        std::vector<std::vector<WittVec>> phis) {
  if (h < 0) throw InvalidRing("height must be >= 0");
  if (static_cast<int>(fil.size()) != h + 1 || static_cast<int>(phis.size()) != h + 1)
    throw DimensionMismatch("need Fil^i and phi_i for i = 0..h");
  for (int ak : a)
    if (ak < 0 || ak > R->n()) throw DimensionMismatch("elementary divisor exponent out of range");
  FLModule M;
  M.R = std::move(R);
  M.d = static_cast<int>(a.size());
  M.a = std::move(a);
  M.h = h;
  for (int i = 0; i <= h; ++i) {
    if (fil[i].size() != phis[i].size()) throw DimensionMismatch("one phi_i value per Fil^i generator");
    for (const auto& v : fil[i])
      if (static_cast<int>(v.size()) != M.d) throw DimensionMismatch("vector of the wrong rank");
    for (const auto& v : phis[i])
      if (static_cast<int>(v.size()) != M.d) throw DimensionMismatch("vector of the wrong rank");
  }
  M.fil = std::move(fil);
  M.phis = std::move(phis);
  return M;
}

IVec FLModule::coords(const WittVec& x) const {
  const int m = R->m();
  IVec v(coord_dim());
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < m; ++j) v(k * m + j) = x[k].c[j];
  return v;
}

WittVec FLModule::from_coords(const IVec& v) const {
  const int m = R->m();
  WittVec x(d, R->zero());
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < m; ++j) x[k].c[j] = R->z().red(v(k * m + j));
  return x;
}

IMat FLModule::relation_rows() const {
  const int m = R->m();
  std::vector<WittVec> gens;
  for (int k = 0; k < d; ++k) {
    if (a[k] == R->n()) continue;
    WittVec g(d, R->zero());
    g[k] = R->scalar(R->z().ppow(a[k]));
    gens.push_back(g);
  }
  IMat A(static_cast<int>(gens.size()) * m, coord_dim());
  int row = 0;
  for (const auto& g : gens)
    for (int j = 0; j < m; ++j, ++row) A.row(row) = coords(scale(xpow(R, j), g));
  return A;
}

RowSpan FLModule::fil_span(int i) const { return RowSpan(vstack(gen_rows(*this, fil[i]), relation_rows()), R->z()); }

std::optional<WittVec> FLModule::eval_phi(int i, const WittVec& x) const {
  const int m = R->m();
  IMat G = gen_rows(*this, fil[i]);
  RowSpan sp(vstack(G, relation_rows()), R->z(), true);
  auto sol = sp.solve(coords(x));
  if (!sol) return std::nullopt;
  WittVec out(d, R->zero());
  for (size_t g = 0; g < fil[i].size(); ++g)
    for (int j = 0; j < m; ++j) {
      i64 c = R->z().red((*sol)(static_cast<int>(g) * m + j));
      if (c == 0) continue;
      out = add(out, scale(R->scalar(c) * R->sigma(xpow(R, j)), phis[i][g]));
    }
  return out;
}

i64 FLModule::length() const {
  i64 L = 0;
  for (int ak : a) L += static_cast<i64>(ak) * R->m();
  return L;
}

std::string FLModule::describe() const {
  std::ostringstream os;
  os << "FL module over W_" << R->n() << "(F_" << R->p() << "^" << R->m() << ") exponents [";
  for (int k = 0; k < d; ++k) os << (k ? "," : "") << a[k];
  os << "] h=" << h;
  return os.str();
}

FLCheck is_fl_module(const FLModule& M) {
  FLCheck out;
  auto fail = [&](const std::string& ax, const std::string& det) {
    out.ok = false;
    out.axiom = ax;
    out.detail = det;
    return out;
  };
  const Zpk& z = M.R->z();
  const IMat rel = M.relation_rows();
  const RowSpan all(vstack(IMat::Identity(M.coord_dim(), M.coord_dim()), rel), z);
  if (M.d == 0) return out;
  if (!M.fil_span(0).contains_span(all)) return fail("fil0", "Fil^0 is not M");
  for (int i = 0; i < M.h; ++i)
    if (!M.fil_span(i).contains_span(M.fil_span(i + 1)))
      return fail("decreasing", "Fil^" + std::to_string(i + 1) + " not inside Fil^" + std::to_string(i));
  // purity of Fil^{i+1} in Fil^i: A cap p^j B = p^j A modulo the relations
  for (int i = 0; i < M.h; ++i) {
    IMat A = gen_rows(M, M.fil[i + 1]);
    for (int j = 1; j < M.R->n(); ++j) {
      i64 pj = z.ppow(j);
      IMat Ar = vstack(A, rel);
      IMat pB = vstack(gen_rows(M, M.fil[i], static_cast<int>(pj)), rel);
      IMat cap = intersect(Ar, pB, z);
      i64 lhs = RowSpan(vstack(cap, rel), z).length();
      i64 rhs = RowSpan(vstack(gen_rows(M, M.fil[i + 1], static_cast<int>(pj)), rel), z).length();
      if (lhs != rhs) return fail("summand", "Fil^" + std::to_string(i + 1) + " is not a direct summand");
    }
  }
  const RowSpan relspan(rel, z);
  const int m = M.R->m();
  for (int i = 0; i <= M.h; ++i) {
    IMat G = vstack(gen_rows(M, M.fil[i]), rel);
    IMat K = left_kernel(G, z);
    for (int r = 0; r < K.rows(); ++r) {
      WittVec img(M.d, M.R->zero());
      for (int g = 0; g < static_cast<int>(M.fil[i].size()); ++g)
        for (int j = 0; j < m; ++j) {
          i64 c = z.red(K(r, g * m + j));
          if (c) img = add(img, scale(M.R->scalar(c) * M.R->sigma(xpow(M.R, j)), M.phis[i][g]));
        }
      if (!relspan.contains(M.coords(img)))
        return fail("well_defined", "phi_" + std::to_string(i) + " does not respect a relation");
    }
  }
  for (int i = 0; i < M.h; ++i)
    for (const auto& g : M.fil[i + 1]) {
      auto lhs = M.eval_phi(i, g);
      auto rhs = M.eval_phi(i + 1, g);
      IVec diff = M.coords(*lhs) - z.ppow(1) * M.coords(*rhs);
      for (int c = 0; c < diff.size(); ++c) diff(c) = z.red(diff(c));
      if (!relspan.contains(diff))
        return fail("axiom2", "phi_" + std::to_string(i) + " != p phi_" + std::to_string(i + 1) + " on Fil^" +
                                  std::to_string(i + 1));
    }
  IMat img = rel;
  for (int i = 0; i <= M.h; ++i) img = vstack(img, gen_rows(M, M.phis[i]));
  if (!RowSpan(img, z).contains_span(all)) return fail("axiom3", "the phi_i images do not span M");
  return out;
}

FLModule fl_direct_sum(const FLModule& A, const FLModule& B) {
  if (!A.R->same_field(*B.R) || A.R->n() != B.R->n()) throw DimensionMismatch("direct sum over different rings");
  const int h = std::max(A.h, B.h), d = A.d + B.d;
  auto pad = [&](const WittVec& v, int off) {
    WittVec w(d, A.R->zero());
    for (size_t i = 0; i < v.size(); ++i) w[off + i] = v[i];
    return w;
  };
  std::vector<std::vector<WittVec>> fil(h + 1), phis(h + 1);
  for (int i = 0; i <= h; ++i) {
    if (i <= A.h)
      for (size_t g = 0; g < A.fil[i].size(); ++g) {
        fil[i].push_back(pad(A.fil[i][g], 0));
        phis[i].push_back(pad(A.phis[i][g], 0));
      }
    if (i <= B.h)
      for (size_t g = 0; g < B.fil[i].size(); ++g) {
        fil[i].push_back(pad(B.fil[i][g], A.d));
        phis[i].push_back(pad(B.phis[i][g], A.d));
      }
  }
  std::vector<int> a = A.a;
  a.insert(a.end(), B.a.begin(), B.a.end());
  return FLModule::make(A.R, a, h, fil, phis);
}

BreuilModule fl_to_breuil(const FLModule& M, int Dz) {
  if (M.R->n() != 1) throw NotKilledByP("fl_to_breuil works mod p");
  for (int ak : M.a)
    if (ak != 1) throw DimensionMismatch("mod p FL module must be free over the residue field");
  const i64 p = M.R->p();
  auto R2 = M.R->with_precision(2);
  auto E = EisensteinPoly::explicit_ints(R2, {-p, 1});
  auto S = breuil_ring(E, Dz);
  const int r = M.d, h = M.h;
  auto lift = [&](const WittVec& v) {
    DpVec out = dpvec_zero(S, r);
    for (int k = 0; k < r; ++k) out[k] = S->scalar(v[k]);
    return out;
  };
  std::vector<DpVec> fil, pf;
  for (int i = 0; i < h; ++i) {
    DpElem ui = S->u_pow(i);
    DpElem phi_ui = S->phi_div_modp(ui, i);
    for (size_t g = 0; g < M.fil[h - i].size(); ++g) {
      fil.push_back(ui * lift(M.fil[h - i][g]));
      pf.push_back(phi_ui * lift(M.phis[h - i][g]));
    }
  }
  DpElem ch = S->one();
  for (int t = 0; t < h; ++t) ch = ch * S->c1();
  std::vector<DpVec> pe;
  for (int k = 0; k < r; ++k) {
    WittVec ek(r, M.R->zero());
    ek[k] = M.R->one();
    auto v = M.eval_phi(0, ek);
    if (!v) throw NotFL("Fil^0 is not the whole module");
    pe.push_back(ch * lift(*v));
  }
  std::vector<DpVec> nab(r, dpvec_zero(S, r));
  return BreuilModule::make(S, r, h, fil, pf, pe, nab);
}

bool fl_criterion(const FLModule& M, int Dz) { return phi_h_generates(fl_to_breuil(M, Dz)); }

}  // namespace prismalab
