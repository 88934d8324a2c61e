#include "prismalab/dp.hpp"

#include <algorithm>
#include <sstream>

#include "prismalab/errors.hpp"

namespace prismalab {

// ---- DpElem ----

const i64* DpElem::raw(int l) const { return c.data() + static_cast<size_t>(l) * S->m(); }
i64* DpElem::raw(int l) { return c.data() + static_cast<size_t>(l) * S->m(); }

DpElem DpElem::operator+(const DpElem& o) const {
  DpElem r = *this;
  const Zpk& z = S->R()->z();
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = z.add(c[i], o.c[i]);
  return r;
}

DpElem DpElem::operator-(const DpElem& o) const {
  DpElem r = *this;
  const Zpk& z = S->R()->z();
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = z.sub(c[i], o.c[i]);
  return r;
}

DpElem DpElem::operator-() const { return S->zero() - *this; }

DpElem DpElem::operator*(const DpElem& o) const {
  DpElem r = S->zero();
  const int D = S->D(), m = S->m();
  const auto& R = S->R();
  const Zpk& z = R->z();
  std::vector<int> ia, ib;
  auto nonzero = [m](const DpElem& x, int l) {
    for (int j = 0; j < m; ++j)
      if (x.raw(l)[j] != 0) return true;
    return false;
  };
  for (int l = 0; l < D; ++l) {
    if (nonzero(*this, l)) ia.push_back(l);
    if (nonzero(o, l)) ib.push_back(l);
  }
  std::vector<i64> t(m);
  for (int i : ia)
    for (int j : ib) {
      if (i + j >= D) break;
      i64 sc = S->struct_const(i, j);
      if (sc == 0) continue;
      R->mul(raw(i), o.raw(j), t.data());
      i64* dst = r.raw(i + j);
      for (int k = 0; k < m; ++k) dst[k] = z.add(dst[k], z.mul(sc, t[k]));
    }
  return r;
}

DpElem DpElem::scale(const WittElem& a) const {
  DpElem r = S->zero();
  for (int l = 0; l < S->D(); ++l) S->R()->mul(raw(l), a.c.data(), r.raw(l));
  return r;
}

bool DpElem::is_zero() const {
  for (i64 x : c)
    if (x != 0) return false;
  return true;
}

WittElem DpElem::coord(int l) const { return S->R()->elem(std::vector<i64>(raw(l), raw(l) + S->m())); }

int DpElem::low() const {
  for (int l = 0; l < S->D(); ++l)
    for (int j = 0; j < S->m(); ++j)
      if (raw(l)[j] != 0) return l;
  return -1;
}

std::string DpElem::str() const {
  std::ostringstream os;
  bool first = true;
  for (int l = 0; l < S->D(); ++l) {
    WittElem a = coord(l);
    if (a.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << a.str() << "*u^" << l << "/dp(" << l << ")";
  }
  if (first) os << "0";
  return os.str();
}

// ---- DpRing ----

DpRing::DpRing(EisensteinPoly E, EisensteinPoly E_full, int D)
    : R_(E.E.ring()), E_(std::move(E)), E_full_(std::move(E_full)), D_(D) {
  const int qmax = (D_ + 2) / E_.e + 2;
  const Zpk& z = R_->z();
  fval_.assign(qmax + 1, 0);
  funit_.assign(qmax + 1, 1);
  funit_inv_.assign(qmax + 1, 1);
  for (int q = 1; q <= qmax; ++q) {
    int v = vp(q, z.p);
    i64 u = q;
    for (int t = 0; t < v; ++t) u /= z.p;
    fval_[q] = fval_[q - 1] + v;
    funit_[q] = z.mul(funit_[q - 1], z.red(u));
    funit_inv_[q] = z.inv(funit_[q]);
  }
}

DpRingPtr DpRing::make(const EisensteinPoly& E, int D, int K) {
  if (D < 1) throw PrecisionLoss("divided-power truncation must be >= 1");
  int n = E.E.ring()->n();
  if (K < 0) K = n;
  if (K > n) throw InsufficientPrecision("internal precision exceeds the precision of E");
  EisensteinPoly Ek = K == n ? E : E.with_precision(K);
  return std::shared_ptr<DpRing>(new DpRing(Ek, E, D));
}

DpRingPtr DpRing::with_precision(int K2) const {
  if (K2 == K()) return shared_from_this();
  std::lock_guard<std::mutex> lock(mu_);
  auto it = prec_cache_.find(K2);
  if (it != prec_cache_.end()) return it->second;
  if (K2 > E_full_.E.ring()->n()) throw InsufficientPrecision("E is not known to the requested precision");
  auto r = make(E_full_, D_, K2);
  prec_cache_[K2] = r;
  return r;
}

i64 DpRing::struct_const(int i, int j) const {
  const int e = E_.e;
  int qi = i / e, qj = j / e, q = (i + j) / e;
  int v = fval_[q] - fval_[qi] - fval_[qj];
  const Zpk& z = R_->z();
  if (v >= z.k) return 0;
  return z.mul(z.ppow(v), z.mul(funit_[q], z.mul(funit_inv_[qi], funit_inv_[qj])));
}

i64 DpRing::phi_const(int l) const {
  const int e = E_.e;
  i64 pl = static_cast<i64>(l) * p();
  if (pl >= D_) return 0;
  int q = static_cast<int>(pl / e), ql = l / e;
  int v = fval_[q] - fval_[ql];
  const Zpk& z = R_->z();
  if (v >= z.k) return 0;
  return z.mul(z.ppow(v), z.mul(funit_[q], funit_inv_[ql]));
}

DpElem DpRing::zero() const {
  return DpElem{shared_from_this(), std::vector<i64>(static_cast<size_t>(D_) * m(), 0)};
}

DpElem DpRing::basis(int l, i64 c) const {
  DpElem x = zero();
  if (l < D_) x.raw(l)[0] = R_->z().red(c);
  return x;
}

DpElem DpRing::one() const { return basis(0, 1); }

DpElem DpRing::scalar(const WittElem& a) const {
  DpElem x = zero();
  std::copy(a.c.begin(), a.c.end(), x.raw(0));
  return x;
}

DpElem DpRing::u_pow(int k) const {
  if (k >= D_) return zero();
  int q = k / E_.e;
  const Zpk& z = R_->z();
  i64 c = fval_[q] >= z.k ? 0 : z.mul(z.ppow(fval_[q]), funit_[q]);
  return basis(k, c);
}

DpElem DpRing::from_series(const SeriesElem& s) const {
  DpElem x = zero();
  const Zpk& z = R_->z();
  int d = s.degree();
  if (s.ring()->n() < K()) throw InsufficientPrecision("series has fewer p-adic digits than the ring");
  for (int l = 0; l <= d && l < D_; ++l) {
    DpElem ul = u_pow(l);
    i64 c = ul.raw(l)[0];
    for (int j = 0; j < m(); ++j) x.raw(l)[j] = z.mul(c, z.red(s.raw(l)[j]));
  }
  return x;
}

DpElem DpRing::E_elem() const { return from_series(E_.E); }

DpElem DpRing::mul_u_pow(const DpElem& x, int a) const {
  DpElem r = zero();
  const Zpk& z = R_->z();
  for (int l = 0; l + a < D_; ++l) {
    i64 c = struct_const(l, a);
    // u^a = e(a)! b_a, so u^a b_l = e(a)! [e(l+a)!/(e(l)! e(a)!)] b_{l+a}
    int qa = a / E_.e;
    i64 fa = fval_[qa] >= z.k ? 0 : z.mul(z.ppow(fval_[qa]), funit_[qa]);
    c = z.mul(c, fa);
    if (c == 0) continue;
    for (int j = 0; j < m(); ++j) r.raw(l + a)[j] = z.mul(c, x.raw(l)[j]);
  }
  return r;
}

DpElem DpRing::gamma(int q) const {
  // gamma_q(E) = sum_{k+j=q} b_{ek} * (p g)^j / j!  with E = u^e + p g
  const Zpk& z = R_->z();
  const int e = E_.e;
  const int n = K();
  SeriesElem g(R_, std::max(D_, 1), true);
  for (int t = 0; t < e; ++t) {
    std::vector<i64> c(m());
    for (int j = 0; j < m(); ++j) c[j] = E_full_.E.raw(t)[j] / p();
    g.set_coeff(t, R_->elem(c));
  }
  DpElem out = zero();
  SeriesElem gj = SeriesElem::constant(R_->one(), std::max(D_, 1), false);
  SeriesElem gt = g.truncated(std::max(D_, 1));
  for (int j = 0; j <= q; ++j) {
    if (j > 0) gj = gj * gt;
    int k = q - j;
    if (static_cast<i64>(e) * k >= D_) continue;
    int v = j - (j <= static_cast<int>(fval_.size()) - 1 ? fval_[j] : vp_factorial(j, p()));
    if (v >= n) continue;
    i64 uinv;
    if (j < static_cast<int>(funit_inv_.size())) {
      uinv = funit_inv_[j];
    } else {
      i64 u = 1;
      for (int t = 1; t <= j; ++t) {
        i64 w = t;
        while (w % p() == 0) w /= p();
        u = z.mul(u, z.red(w));
      }
      uinv = z.inv(u);
    }
    i64 coef = z.mul(z.ppow(v), uinv);
    int base = e * k;
    for (int t = 0; base + t < D_; ++t) {
      const i64* gc = gj.raw(t);
      bool nz = false;
      for (int s = 0; s < m(); ++s) nz |= gc[s] != 0;
      if (!nz) continue;
      // u^t b_{ek} = [e(ek+t)! / k!] b_{ek+t}
      int q2 = (base + t) / e;
      int vv = fval_[q2] - fval_[k];
      if (vv >= n) continue;
      i64 sc = z.mul(z.ppow(vv), z.mul(funit_[q2], funit_inv_[k]));
      sc = z.mul(sc, coef);
      for (int s = 0; s < m(); ++s) {
        i64* dst = out.raw(base + t);
        dst[s] = z.add(dst[s], z.mul(sc, gc[s]));
      }
    }
  }
  return out;
}

DpElem DpRing::phi(const DpElem& x) const {
  DpElem r = zero();
  const Zpk& z = R_->z();
  std::vector<i64> t(m());
  for (int l = 0; static_cast<i64>(l) * p() < D_; ++l) {
    i64 c = phi_const(l);
    if (c == 0) continue;
    R_->sigma(x.raw(l), t.data());
    i64* dst = r.raw(static_cast<int>(l * p()));
    for (int j = 0; j < m(); ++j) dst[j] = z.mul(c, t[j]);
  }
  return r;
}

DpElem DpRing::nabla(const DpElem& x) const {
  DpElem r = zero();
  const Zpk& z = R_->z();
  const int e = E_.e;
  for (int l = 1; l < D_; ++l) {
    i64 c = (l % e == 0) ? e : l;
    c = z.red(c);
    if (c == 0) continue;
    for (int j = 0; j < m(); ++j) r.raw(l - 1)[j] = z.mul(c, x.raw(l)[j]);
  }
  return r;
}

int DpRing::fil_qmax() const {
  const i64 pp = p();
  const int e = E_.e;
  int dq = (D_ + e - 1) / e;
  if (pp >= 3) {
    int J = static_cast<int>(((pp - 1) * K() - 1 + (pp - 3)) / (pp - 2));
    return J + dq + 1;
  }
  int w = 1;
  while (w < 4 * (dq + K())) w *= 2;
  return w + 2;
}

const RowSpan& DpRing::fil_span(int i) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = fil_cache_.find(i);
    if (it != fil_cache_.end()) return it->second;
  }
  const int e = E_.e, mm = m();
  const int qmax = fil_qmax();
  std::vector<IVec> rows;
  WittElem x = mm == 1 ? R_->one() : R_->gen();
  for (int q = i; q <= qmax; ++q) {
    DpElem gq = gamma(q);
    if (gq.is_zero()) continue;
    for (int a = 0; a < e; ++a) {
      DpElem g = a == 0 ? gq : mul_u_pow(gq, a);
      WittElem w = R_->one();
      for (int j = 0; j < mm; ++j) {
        DpElem gw = g.scale(w);
        IVec v(gw.c.size());
        for (size_t t = 0; t < gw.c.size(); ++t) v(t) = gw.c[t];
        rows.push_back(v);
        w = w * x;
      }
    }
  }
  IMat A = IMat::Zero(rows.size(), static_cast<i64>(D_) * mm);
  for (size_t r = 0; r < rows.size(); ++r) A.row(r) = rows[r];
  RowSpan span(A, R_->z());
  std::lock_guard<std::mutex> lock(mu_);
  return fil_cache_.emplace(i, std::move(span)).first->second;
}

bool DpRing::in_fil(const DpElem& x, int i) const {
  if (i <= 0) return true;
  IVec v(x.c.size());
  for (size_t t = 0; t < x.c.size(); ++t) v(t) = x.c[t];
  return fil_span(i).contains(v);
}

bool DpRing::in_fil_modp(const DpElem& x, int i) const {
  if (K() != 1) throw InsufficientPrecision("mod p filtration test needs K = 1");
  if (i > p()) throw NotInFiltration("mod p description only valid for i <= p");
  int l = x.low();
  return l < 0 || l >= E_.e * i;
}

DpElem DpRing::c1() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (c1_cache_) return *c1_cache_;
  if (E_full_.E.ring()->n() < K() + 1) throw InsufficientPrecision("c1 needs E to precision K + 1");
  auto hi = make(E_full_, D_, K() + 1);
  DpElem ph = hi->phi(hi->E_elem());
  DpElem c = zero();
  const Zpk& zh = hi->R()->z();
  for (size_t t = 0; t < c.c.size(); ++t) {
    if (ph.c[t] % zh.p != 0) throw NotDivisible("phi(E) is not divisible by p");
    c.c[t] = R_->z().red(ph.c[t] / zh.p);
  }
  c1_cache_ = std::make_unique<DpElem>(c);
  return c;
}

DpElem DpRing::phi_div_modp(const DpElem& x, int h) const {
  if (K() != 1) throw InsufficientPrecision("closed-form divided Frobenius works mod p");
  if (h < 0 || h > p() - 1) throw NotInFiltration("divided Frobenius level must be in [0, p-1]");
  if (!in_fil_modp(x, h)) throw NotInFiltration("element is not in Fil^h S_1");
  if (h == 0) return phi(x);
  if (p() == 2) throw PrecisionTooLow("divided Frobenius does not descend to the truncated ring for p = 2");
  const int e = E_.e;
  const Zpk& z = R_->z();
  DpElem c = c1();
  DpElem ch = one();
  for (int t = 0; t < h; ++t) ch = ch * c;
  // 1/h! mod p
  i64 hf = 1;
  for (int t = 2; t <= h; ++t) hf = z.mul(hf, t);
  DpElem part = zero();
  std::vector<i64> t(m());
  for (int a = 0; a < e; ++a) {
    int l = e * h + a;
    if (l >= D_) break;
    R_->sigma(x.raw(l), t.data());
    DpElem term = u_pow(static_cast<int>(p() * a)).scale(R_->elem(t));
    part = part + term;
  }
  DpElem out = (part * ch).scale(R_->scalar(z.inv(hf)));
  if (h == p() - 1) {
    DpElem cp = ch * c;
    DpElem part2 = zero();
    for (int a = 0; a < e; ++a) {
      int l = static_cast<int>(e * p() + a);
      if (l >= D_) break;
      R_->sigma(x.raw(l), t.data());
      part2 = part2 + u_pow(static_cast<int>(p() * a)).scale(R_->elem(t));
    }
    out = out - part2 * cp;
  }
  return out;
}

// ---- free functions ----

DpElem dp_inverse(const DpElem& x) {
  const auto& S = x.S;
  WittElem c0 = x.coord(0);
  DpElem y = S->scalar(S->R()->inv(c0));
  DpElem two = S->scalar(S->R()->scalar(2));
  for (int it = 0; it < 64; ++it) {
    DpElem xy = x * y;
    if (xy == S->one()) return y;
    y = y * (two - xy);
  }
  throw PrecisionLoss("inverse did not converge in the truncation");
}

DpElem reduce_precision(const DpElem& x, int K2) {
  auto S2 = x.S->with_precision(K2);
  DpElem r = S2->zero();
  const Zpk& z = S2->R()->z();
  for (size_t t = 0; t < x.c.size(); ++t) r.c[t] = z.red(x.c[t]);
  return r;
}

DpElem divide_exact_p(const DpElem& x, int i, int min_K) {
  const int K2 = x.S->K() - i;
  if (K2 < min_K || K2 < 1) throw InsufficientPrecision("dividing by p^i leaves too few p-adic digits");
  const i64 pi = ipow(x.S->p(), i);
  for (i64 c : x.c)
    if (c % pi != 0) throw NotDivisible("coordinate not divisible by p^i");
  auto S2 = x.S->with_precision(K2);
  DpElem r = S2->zero();
  for (size_t t = 0; t < x.c.size(); ++t) r.c[t] = x.c[t] / pi;
  return r;
}

DpElem s_phi_div(const DpElem& x, int i, int min_K) {
  if (i < 0 || i > x.S->p() - 1) throw NotInFiltration("divided Frobenius level must be in [0, p-1]");
  if (!x.S->in_fil(x, i)) throw NotInFiltration("element is not in Fil^i S");
  return divide_exact_p(x.S->phi(x), i, min_K);
}

}  // namespace prismalab
