#include "prismalab/breuil.hpp"

#include <random>
#include <sstream>

#include "prismalab/errors.hpp"

namespace prismalab {

DpVec dpvec_zero(const DpRingPtr& S, int r) { return DpVec(r, S->zero()); }

DpVec dpvec_unit(const DpRingPtr& S, int r, int k) {
  DpVec v = dpvec_zero(S, r);
  v[k] = S->one();
  return v;
}

DpVec operator+(const DpVec& a, const DpVec& b) {
  DpVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

DpVec operator-(const DpVec& a, const DpVec& b) {
  DpVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

DpVec operator*(const DpElem& s, const DpVec& v) {
  DpVec r = v;
  for (auto& x : r) x = s * x;
  return r;
}

bool dpvec_is_zero(const DpVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

DpRingPtr breuil_ring(const EisensteinPoly& E, int Dz) {
  if (E.E.ring()->n() < 2) throw InsufficientPrecision("the Breuil layer needs E to precision 2");
  if (Dz < 0) throw InvalidRing("divided-power truncation index must be >= 0");
  i64 D = E.e;
  const i64 p = E.E.ring()->p();
  for (int i = 0; i <= Dz; ++i) D *= p;
  if (D > 100000) throw InvalidRing("divided-power truncation too large");
  return DpRing::make(E, static_cast<int>(D), 1);
}

namespace {

WittElem xpow(const WittRingPtr& R, int j) {
  WittElem x = R->one();
  for (int t = 0; t < j; ++t) x = x * R->gen();
  return x;
}

DpElem scalar_fp(const DpRingPtr& S, i64 a) { return S->scalar(S->R()->scalar(a)); }

// coordinates below lim agree; the top band depends on discarded divided powers once a derivative is taken
bool agree_below(const DpVec& a, const DpVec& b, int lim) {
  for (size_t k = 0; k < a.size(); ++k)
    for (int l = 0; l < lim; ++l)
      for (int j = 0; j < a[k].S->m(); ++j)
        if (a[k].raw(l)[j] != b[k].raw(l)[j]) return false;
  return true;
}

DpElem random_elem(const DpRingPtr& S, std::mt19937_64& rng, int lo, int hi) {
  DpElem x = S->zero();
  const i64 p = S->p();
  hi = std::min(hi, S->D());
  for (int t = 0; t < 3 && lo < hi; ++t) {
    int l = lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo));
    for (int j = 0; j < S->m(); ++j) x.raw(l)[j] = static_cast<i64>(rng() % p);
  }
  return x;
}

}  // namespace

BreuilModule BreuilModule::make(DpRingPtr S, int r, int h, std::vector<DpVec> fil, std::vector<DpVec> phi_fil,
                                std::vector<DpVec> phi_eh, std::optional<std::vector<DpVec>> nabla) {
  if (S->K() != 1) throw NotKilledByP("Breuil modules are handled mod p");
  if (h < 0 || h > S->p() - 1) throw InvalidRing("height must lie in [0, p-1]");
  if (S->p() == 2 && h >= 1) throw PrecisionTooLow("divided Frobenius does not descend to the truncation for p = 2");
  if (fil.size() != phi_fil.size()) throw DimensionMismatch("one phi_h value per filtration generator");
  if (static_cast<int>(phi_eh.size()) != r) throw DimensionMismatch("one phi_h(E^h e_k) per basis vector");
  auto check = [r](const DpVec& v) {
    if (static_cast<int>(v.size()) != r) throw DimensionMismatch("vector of the wrong rank");
  };
  for (const auto& v : fil) check(v);
  for (const auto& v : phi_fil) check(v);
  for (const auto& v : phi_eh) check(v);
  if (nabla) {
    if (static_cast<int>(nabla->size()) != r) throw DimensionMismatch("one connection value per basis vector");
    for (const auto& v : *nabla) check(v);
  }
  BreuilModule B;
  B.S = std::move(S);
  B.r = r;
  B.h = h;
  B.fil = std::move(fil);
  B.phi_fil = std::move(phi_fil);
  B.phi_eh = std::move(phi_eh);
  B.nabla = std::move(nabla);
  B.prepare();
  return B;
}

int BreuilModule::quotient_dim() const {
  int eh = std::min(S->e() * h, S->D());
  return r * eh * S->m();
}

IVec BreuilModule::qcoords(const DpVec& x) const {
  const int eh = std::min(S->e() * h, S->D()), m = S->m();
  IVec v = IVec::Zero(quotient_dim());
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < eh; ++l)
      for (int j = 0; j < m; ++j) v((k * eh + l) * m + j) = x[k].raw(l)[j];
  return v;
}

void BreuilModule::prepare() {
  const int eh = std::min(S->e() * h, S->D()), m = S->m();
  rows_.clear();
  row_images_.clear();
  for (size_t t = 0; t < fil.size(); ++t)
    for (int l = 0; l < eh; ++l)
      for (int j = 0; j < m; ++j) {
        DpElem s = S->basis(l).scale(xpow(S->R(), j));
        rows_.push_back(s * fil[t]);
        row_images_.push_back(S->phi(s) * phi_fil[t]);
      }
  IMat Q(static_cast<int>(rows_.size()), quotient_dim());
  for (size_t i = 0; i < rows_.size(); ++i) Q.row(static_cast<int>(i)) = qcoords(rows_[i]);
  qspan_ = RowSpan(Q, S->R()->z(), true);
  cinv_h_ = S->one();
  if (h > 0) {
    DpElem ci = dp_inverse(S->c1());
    for (int t = 0; t < h; ++t) cinv_h_ = cinv_h_ * ci;
  }
}

bool BreuilModule::in_fil(const DpVec& x) const { return qspan_.contains(qcoords(x)); }

DpVec BreuilModule::phi_h(const DpVec& x) const {
  auto sol = qspan_.solve(qcoords(x));
  if (!sol) throw NotInFiltration("element is not in Fil^h M");
  DpVec rem = x, out = dpvec_zero(S, r);
  for (int i = 0; i < sol->size(); ++i) {
    i64 a = S->R()->z().red((*sol)(i));
    if (a == 0) continue;
    DpElem c = scalar_fp(S, a);
    rem = rem - c * rows_[i];
    out = out + c * row_images_[i];
  }
  for (int k = 0; k < r; ++k) {
    if (rem[k].is_zero()) continue;
    out = out + (S->phi_div_modp(rem[k], h) * cinv_h_) * phi_eh[k];
  }
  return out;
}

DpVec BreuilModule::frobenius(const DpVec& x) const {
  DpVec out = dpvec_zero(S, r);
  for (int k = 0; k < r; ++k)
    if (!x[k].is_zero()) out = out + (S->phi(x[k]) * cinv_h_) * phi_eh[k];
  return out;
}

DpVec BreuilModule::apply_nabla(const DpVec& x) const {
  DpVec out = dpvec_zero(S, r);
  for (int k = 0; k < r; ++k) {
    out[k] = out[k] + S->nabla(x[k]);
    if (nabla) out = out + x[k] * (*nabla)[k];
  }
  return out;
}

std::string BreuilModule::describe() const {
  std::ostringstream os;
  os << "Breuil module rank " << r << " h=" << h << " D=" << S->D() << " extra Fil generators=" << fil.size();
  if (nabla) os << " with connection";
  return os.str();
}

bool phi_h_well_defined(const BreuilModule& B, std::string* detail) {
  const auto& S = B.S;
  DpElem Eh = S->one();
  for (int t = 0; t < B.h; ++t) Eh = Eh * S->E_elem();
  DpElem phiEh = S->phi(Eh);
  // E^h g lies in Fil^h S M: both routes must agree
  for (size_t t = 0; t < B.fil.size(); ++t) {
    DpVec W = dpvec_zero(S, B.r);
    for (int k = 0; k < B.r; ++k) W = W + S->phi(B.fil[t][k]) * B.phi_eh[k];
    DpVec lhs = phiEh * B.phi_fil[t];
    if (lhs != W) {
      if (detail) *detail = "E^h times generator " + std::to_string(t);
      return false;
    }
  }
  // S-relations among the generators modulo Fil^h S M
  const int eh = std::min(S->e() * B.h, S->D());
  const int m = S->m();
  std::vector<DpVec> rows, imgs;
  for (size_t t = 0; t < B.fil.size(); ++t)
    for (int l = 0; l < eh; ++l)
      for (int j = 0; j < m; ++j) {
        DpElem s = S->basis(l).scale(xpow(S->R(), j));
        rows.push_back(s * B.fil[t]);
        imgs.push_back(S->phi(s) * B.phi_fil[t]);
      }
  if (rows.empty()) return true;
  const int qd = B.r * eh * m;
  IMat Q(static_cast<int>(rows.size()), qd);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int k = 0; k < B.r; ++k)
      for (int l = 0; l < eh; ++l)
        for (int j = 0; j < m; ++j) Q(static_cast<int>(i), (k * eh + l) * m + j) = rows[i][k].raw(l)[j];
  IMat K = left_kernel(Q, S->R()->z());
  DpElem cinv = S->one();
  if (B.h > 0) {
    DpElem ci = dp_inverse(S->c1());
    for (int t = 0; t < B.h; ++t) cinv = cinv * ci;
  }
  for (int a = 0; a < K.rows(); ++a) {
    DpVec y = dpvec_zero(S, B.r), lhs = dpvec_zero(S, B.r);
    for (int i = 0; i < K.cols(); ++i) {
      if (K(a, i) == 0) continue;
      DpElem c = scalar_fp(S, K(a, i));
      y = y + c * rows[i];
      lhs = lhs + c * imgs[i];
    }
    DpVec rhs = dpvec_zero(S, B.r);
    for (int k = 0; k < B.r; ++k)
      if (!y[k].is_zero()) rhs = rhs + (S->phi_div_modp(y[k], B.h) * cinv) * B.phi_eh[k];
    if (lhs != rhs) {
      if (detail) *detail = "relation " + std::to_string(a) + " among filtration generators";
      return false;
    }
  }
  return true;
}

bool phi_h_generates(const BreuilModule& B) {
  const auto& S = B.S;
  const int m = S->m();
  std::vector<DpVec> vals = B.phi_fil;
  vals.insert(vals.end(), B.phi_eh.begin(), B.phi_eh.end());
  IMat res(static_cast<int>(vals.size()) * m, B.r * m);
  int row = 0;
  for (const auto& v : vals)
    for (int j = 0; j < m; ++j, ++row)
      for (int k = 0; k < B.r; ++k) {
        WittElem c = v[k].coord(0) * xpow(S->R(), j);
        for (int jj = 0; jj < m; ++jj) res(row, k * m + jj) = c.c[jj];
      }
  return RowSpan(res, S->R()->z()).length() == static_cast<i64>(B.r) * m;
}

BreuilCheck is_breuil_module(const BreuilModule& B) {
  BreuilCheck out;
  auto fail = [&](const std::string& ax, const std::string& d) {
    out.ok = false;
    out.axiom = ax;
    out.detail = d;
    return out;
  };
  if (B.r == 0) return out;
  const auto& S = B.S;
  std::string detail;
  if (!phi_h_well_defined(B, &detail)) return fail("well_defined", detail);
  // Fil^h M contains Fil^h S M by construction; check it on the generators u^{eh} e_k anyway
  const int eh = S->e() * B.h;
  for (int k = 0; k < B.r; ++k)
    if (!B.in_fil(S->u_pow(eh) * dpvec_unit(S, B.r, k))) return fail("fil_contains_FilS_M", "basis vector");
  std::mt19937_64 rng(20240601);
  DpElem Eh = S->one();
  for (int t = 0; t < B.h; ++t) Eh = Eh * S->E_elem();
  DpElem cinv = S->one();
  if (B.h > 0) {
    DpElem ci = dp_inverse(S->c1());
    for (int t = 0; t < B.h; ++t) cinv = cinv * ci;
  }
  for (int sample = 0; sample < 4; ++sample) {
    DpElem s = random_elem(S, rng, eh, eh + 2 * S->e() + 1);
    DpVec x = dpvec_zero(S, B.r);
    for (auto& c : x) c = random_elem(S, rng, 0, 2 * S->e() + 2);
    DpVec lhs = B.phi_h(s * x);
    DpVec rhs = (S->phi_div_modp(s, B.h) * cinv) * B.phi_h(Eh * x);
    if (lhs != rhs) return fail("functional_equation", "phi_h(s x) for s in Fil^h S");
    DpElem a = random_elem(S, rng, 0, 2 * S->e() + 2);
    for (size_t t = 0; t < B.fil.size(); ++t) {
      DpVec y = B.fil[t] + s * x;
      if (B.phi_h(a * y) != S->phi(a) * B.phi_h(y)) return fail("functional_equation", "phi-semilinearity");
    }
  }
  if (!phi_h_generates(B)) return fail("generation", "phi_h(Fil^h M) does not generate M");
  if (B.nabla) {
    const int lim = S->D() - 2 * static_cast<int>(S->p()) * S->e();
    DpElem c1 = S->c1();
    DpElem up = S->u_pow(static_cast<int>(S->p() - 1));
    for (int sample = 0; sample < 4; ++sample) {
      DpElem s = random_elem(S, rng, 0, 3 * S->e() + 2);
      DpVec x = dpvec_zero(S, B.r);
      for (auto& c : x) c = random_elem(S, rng, 0, 3 * S->e() + 2);
      DpVec lhs = B.apply_nabla(s * x);
      DpVec rhs = S->nabla(s) * x + s * B.apply_nabla(x);
      if (!agree_below(lhs, rhs, lim)) return fail("leibniz", "sampled product");
    }
    std::vector<DpVec> gens = B.fil;
    for (int k = 0; k < B.r; ++k) gens.push_back(S->u_pow(eh) * dpvec_unit(S, B.r, k));
    for (const auto& g : gens) {
      DpVec En = S->E_elem() * B.apply_nabla(g);
      if (!B.in_fil(En)) return fail("griffiths", "E nabla leaves Fil^h M");
      DpVec lhs = c1 * B.apply_nabla(B.phi_h(g));
      DpVec rhs = up * B.phi_h(En);
      if (!agree_below(lhs, rhs, lim)) return fail("phi_nabla", "square does not commute on a generator");
    }
  }
  return out;
}

BreuilModule breuil_direct_sum(const BreuilModule& A, const BreuilModule& B) {
  if (A.S != B.S && !(A.S->D() == B.S->D() && A.S->K() == B.S->K() && A.S->R()->same_field(*B.S->R()) &&
                      A.S->eisenstein().E == B.S->eisenstein().E))
    throw DimensionMismatch("direct sum needs a common base ring");
  if (A.h != B.h) throw DimensionMismatch("direct sum needs a common height");
  const int r = A.r + B.r;
  auto pad = [&](const DpVec& v, int off) {
    DpVec w = dpvec_zero(A.S, r);
    for (size_t i = 0; i < v.size(); ++i) w[off + i] = v[i];
    return w;
  };
  std::vector<DpVec> fil, pf, pe;
  for (size_t t = 0; t < A.fil.size(); ++t) {
    fil.push_back(pad(A.fil[t], 0));
    pf.push_back(pad(A.phi_fil[t], 0));
  }
  for (size_t t = 0; t < B.fil.size(); ++t) {
    fil.push_back(pad(B.fil[t], A.r));
    pf.push_back(pad(B.phi_fil[t], A.r));
  }
  for (const auto& v : A.phi_eh) pe.push_back(pad(v, 0));
  for (const auto& v : B.phi_eh) pe.push_back(pad(v, A.r));
  std::optional<std::vector<DpVec>> nab;
  if (A.nabla || B.nabla) {
    nab.emplace();
    for (int k = 0; k < A.r; ++k) nab->push_back(A.nabla ? pad((*A.nabla)[k], 0) : dpvec_zero(A.S, r));
    for (int k = 0; k < B.r; ++k) nab->push_back(B.nabla ? pad((*B.nabla)[k], A.r) : dpvec_zero(A.S, r));
  }
  return BreuilModule::make(A.S, r, A.h, fil, pf, pe, nab);
}

BreuilModule kisin_to_breuil(const KisinModule& K, int Dz) {
  const PhiModule& M = K.M;
  if (M.R->n() != 1) throw NotKilledByP("kisin_to_breuil works mod p");
  if (M.num_rel() > 0) {
    if (M.shape == Shape::General) throw HasUTorsion("u-torsion freeness cannot be certified");
    if (u_torsion(M).g > 0) throw HasUTorsion("Kisin module has u-torsion");
    throw DimensionMismatch("Kisin module must be given on a free basis");
  }
  auto S = breuil_ring(K.E, Dz);
  if (!S->R()->same_field(*M.R)) throw DimensionMismatch("E and the module live over different fields");
  const int r = M.g, h = K.h, m = S->m();
  const int eh = std::min(S->e() * h, S->D());
  // A_{ij} in S
  std::vector<std::vector<DpElem>> A(r, std::vector<DpElem>(r, S->zero()));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      SeriesElem s(S->R(), M.Phi[i][j].N(), false);
      for (int l = 0; l < s.N(); ++l)
        for (int t = 0; t < m; ++t) s.raw(l)[t] = M.Phi[i][j].raw(l)[t];
      A[i][j] = S->from_series(s);
    }
  auto applyA = [&](const DpVec& s) {
    DpVec out = dpvec_zero(S, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (!s[j].is_zero()) out[i] = out[i] + A[i][j] * s[j];
    return out;
  };
  // Fil^h M / Fil^h S M = ker(A) on (S / Fil^h S)^r
  const int qd = r * eh * m;
  std::vector<DpVec> basis;
  IMat img(qd, qd);
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < eh; ++l)
      for (int j = 0; j < m; ++j) {
        DpVec v = dpvec_zero(S, r);
        v[k] = S->basis(l).scale(xpow(S->R(), j));
        basis.push_back(v);
        DpVec w = applyA(v);
        for (int kk = 0; kk < r; ++kk)
          for (int ll = 0; ll < eh; ++ll)
            for (int jj = 0; jj < m; ++jj) img(static_cast<int>(basis.size()) - 1, (kk * eh + ll) * m + jj) = w[kk].raw(ll)[jj];
      }
  std::vector<DpVec> fil;
  if (qd > 0) {
    const Zpk& z = S->R()->z();
    IMat ker = RowSpan(left_kernel(img, z), z).howell().H;
    // keep an S-generating subset
    std::vector<IVec> chosen_rows;
    auto qvec = [&](const DpVec& v) {
      IVec q = IVec::Zero(qd);
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < eh; ++l)
          for (int j = 0; j < m; ++j) q((k * eh + l) * m + j) = v[k].raw(l)[j];
      return q;
    };
    for (int a = 0; a < ker.rows(); ++a) {
      DpVec g = dpvec_zero(S, r);
      for (int i = 0; i < qd; ++i)
        if (ker(a, i) != 0) g = g + scalar_fp(S, ker(a, i)) * basis[i];
      if (!chosen_rows.empty()) {
        IMat span = rows_of(chosen_rows, qd);
        if (RowSpan(span, z).contains(qvec(g))) continue;
      }
      fil.push_back(g);
      for (int l = 0; l < eh; ++l)
        for (int j = 0; j < m; ++j) chosen_rows.push_back(qvec(S->basis(l).scale(xpow(S->R(), j)) * g));
    }
  }
  std::vector<DpVec> phi_fil;
  for (const auto& g : fil) {
    DpVec f = applyA(g);
    DpVec y = dpvec_zero(S, r);
    for (int i = 0; i < r; ++i) y[i] = S->phi_div_modp(f[i], h);
    phi_fil.push_back(y);
  }
  DpElem ch = S->one();
  for (int t = 0; t < h; ++t) ch = ch * S->c1();
  std::vector<DpVec> phi_eh;
  for (int k = 0; k < r; ++k) {
    DpVec z = dpvec_zero(S, r);
    for (int i = 0; i < r; ++i) z[i] = ch * S->phi(A[i][k]);
    phi_eh.push_back(z);
  }
  return BreuilModule::make(S, r, h, fil, phi_fil, phi_eh);
}

}  // namespace prismalab
