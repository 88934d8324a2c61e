#include "prismalab/witt.hpp"

#include <sstream>

#include "prismalab/errors.hpp"

namespace prismalab {

namespace fp_poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

static i64 inv_p(i64 a, i64 p) {
  a %= p;
  if (a < 0) a += p;
  i64 r = 1, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

Poly mod(const Poly& a0, const Poly& b0, i64 p) {
  Poly a = a0, b = b0;
  for (auto& x : a) x = ((x % p) + p) % p;
  for (auto& x : b) x = ((x % p) + p) % p;
  trim(a);
  trim(b);
  if (b.empty()) throw std::invalid_argument("polynomial division by zero");
  i64 lead_inv = inv_p(b.back(), p);
  while (a.size() >= b.size()) {
    i64 c = a.back() * lead_inv % p;
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, i64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return mod(r, f, p);
}

Poly gcd(Poly a, Poly b, i64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    i64 li = inv_p(a.back(), p);
    for (auto& x : a) x = x * li % p;
  }
  return a;
}

Poly powmod(const Poly& a, i64 e, const Poly& f, i64 p) {
  Poly r = mod(Poly{1}, f, p), base = mod(a, f, p);
  while (e > 0) {
    if (e & 1) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

bool irreducible(const Poly& f0, i64 p) {
  Poly f = f0;
  for (auto& x : f) x = ((x % p) + p) % p;
  trim(f);
  int m = static_cast<int>(f.size()) - 1;
  if (m < 1) return false;
  if (m == 1) return true;
  Poly xp = {0, 1};
  for (int j = 1; 2 * j <= m; ++j) {
    xp = powmod(xp, p, f, p);
    Poly d = xp;
    if (d.size() < 2) d.resize(2, 0);
    d[1] = ((d[1] - 1) % p + p) % p;
    trim(d);
    Poly g = gcd(f, d, p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace fp_poly

WittRing::WittRing(Zpk z, int m, std::vector<i64> f) : z_(z), m_(m), f_(std::move(f)) {}

WittRingPtr WittRing::make(i64 p, int n, int m, std::vector<i64> f) {
  if (m < 1) throw InvalidRing("residue degree m must be >= 1");
  Zpk z(p, n);
  if (static_cast<int>(f.size()) != m + 1) throw InvalidRing("f must have m+1 coefficients");
  for (auto& c : f) c = z.red(c);
  if (f[m] != 1) throw InvalidRing("f must be monic");
  if (!fp_poly::irreducible(f, p)) throw InvalidRing("f mod p is not irreducible");
  auto r = std::shared_ptr<WittRing>(new WittRing(z, m, std::move(f)));
  r->compute_sigma();
  return r;
}

WittRingPtr WittRing::prime(i64 p, int n) { return make(p, n, 1, {0, 1}); }

WittRingPtr WittRing::residue_field(i64 p, int m) {
  if (m == 1) return prime(p, 1);
  std::vector<i64> f(m + 1, 0);
  f[m] = 1;
  i64 total = ipow(p, m);
  for (i64 code = 0; code < total; ++code) {
    i64 t = code;
    for (int i = 0; i < m; ++i) {
      f[i] = t % p;
      t /= p;
    }
    if (fp_poly::irreducible(f, p)) return make(p, 1, m, f);
  }
  throw InvalidRing("no irreducible polynomial found");
}

WittRingPtr WittRing::with_precision(int n2) const { return make(z_.p, n2, m_, f_); }

bool WittRing::same_field(const WittRing& o) const {
  if (o.p() != p() || o.m() != m_) return false;
  for (int i = 0; i <= m_; ++i)
    if ((f_[i] - o.f_[i]) % p() != 0) return false;
  return true;
}

void WittRing::reduce(std::vector<i64>& prod) const {
  // prod has length up to 2m-1; reduce by the monic f
  for (int d = static_cast<int>(prod.size()) - 1; d >= m_; --d) {
    i64 c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < m_; ++i) prod[d - m_ + i] = z_.sub(prod[d - m_ + i], z_.mul(c, f_[i]));
  }
  prod.resize(m_);
}

void WittRing::add(const i64* a, const i64* b, i64* out) const {
  for (int i = 0; i < m_; ++i) out[i] = z_.add(a[i], b[i]);
}

void WittRing::sub(const i64* a, const i64* b, i64* out) const {
  for (int i = 0; i < m_; ++i) out[i] = z_.sub(a[i], b[i]);
}

void WittRing::mul(const i64* a, const i64* b, i64* out) const {
  if (m_ == 1) {
    out[0] = z_.mul(a[0], b[0]);
    return;
  }
  std::vector<i64> prod(2 * m_ - 1, 0);
  for (int i = 0; i < m_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < m_; ++j) prod[i + j] = z_.add(prod[i + j], z_.mul(a[i], b[j]));
  }
  reduce(prod);
  for (int i = 0; i < m_; ++i) out[i] = prod[i];
}

void WittRing::mul_acc(const i64* a, const i64* b, i64* out) const {
  if (m_ == 1) {
    out[0] = z_.add(out[0], z_.mul(a[0], b[0]));
    return;
  }
  std::vector<i64> t(m_);
  mul(a, b, t.data());
  for (int i = 0; i < m_; ++i) out[i] = z_.add(out[i], t[i]);
}

void WittRing::sigma(const i64* a, i64* out) const {
  if (m_ == 1) {
    out[0] = a[0];
    return;
  }
  std::vector<i64> r(m_, 0);
  for (int j = 0; j < m_; ++j) {
    if (a[j] == 0) continue;
    for (int i = 0; i < m_; ++i) r[i] = z_.add(r[i], z_.mul(sig_[i][j], a[j]));
  }
  for (int i = 0; i < m_; ++i) out[i] = r[i];
}

void WittRing::sigma_inv(const i64* a, i64* out) const {
  if (m_ == 1) {
    out[0] = a[0];
    return;
  }
  std::vector<i64> r(m_, 0);
  for (int j = 0; j < m_; ++j) {
    if (a[j] == 0) continue;
    for (int i = 0; i < m_; ++i) r[i] = z_.add(r[i], z_.mul(sig_inv_[i][j], a[j]));
  }
  for (int i = 0; i < m_; ++i) out[i] = r[i];
}

WittElem WittRing::zero() const { return WittElem{shared_from_this(), std::vector<i64>(m_, 0)}; }

WittElem WittRing::one() const { return scalar(1); }

WittElem WittRing::scalar(i64 a) const {
  WittElem e = zero();
  e.c[0] = z_.red(a);
  return e;
}

WittElem WittRing::gen() const {
  WittElem e = zero();
  if (m_ == 1) {
    e.c[0] = z_.neg(f_[0]);
  } else {
    e.c[1] = 1;
  }
  return e;
}

WittElem WittRing::elem(std::vector<i64> c) const {
  if (static_cast<int>(c.size()) > m_) throw InvalidRing("too many Witt coefficients");
  c.resize(m_, 0);
  for (auto& x : c) x = z_.red(x);
  return WittElem{shared_from_this(), std::move(c)};
}

WittElem WittRing::add(const WittElem& a, const WittElem& b) const {
  WittElem r = zero();
  add(a.c.data(), b.c.data(), r.c.data());
  return r;
}

WittElem WittRing::mul(const WittElem& a, const WittElem& b) const {
  WittElem r = zero();
  mul(a.c.data(), b.c.data(), r.c.data());
  return r;
}

WittElem WittRing::pow(const WittElem& a, i64 e) const {
  WittElem r = one(), b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

WittElem WittRing::inv(const WittElem& a) const {
  i64 p = z_.p;
  fp_poly::Poly abar(a.c.begin(), a.c.end());
  for (auto& x : abar) x %= p;
  fp_poly::trim(abar);
  if (abar.empty()) throw NotAUnit("element is divisible by p");
  // inverse mod p by the extended Euclidean algorithm in F_p[x]
  fp_poly::Poly fbar(f_.begin(), f_.end());
  for (auto& x : fbar) x %= p;
  fp_poly::Poly r0 = fbar, r1 = abar, s0 = {}, s1 = {1};
  auto sub_mul = [&](const fp_poly::Poly& x, const fp_poly::Poly& q, const fp_poly::Poly& y) {
    fp_poly::Poly out = x;
    if (!q.empty() && !y.empty()) {
      fp_poly::Poly prod(q.size() + y.size() - 1, 0);
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) prod[i + j] = (prod[i + j] + q[i] * y[j]) % p;
      if (out.size() < prod.size()) out.resize(prod.size(), 0);
      for (size_t i = 0; i < prod.size(); ++i) out[i] = ((out[i] - prod[i]) % p + p) % p;
    }
    fp_poly::trim(out);
    return out;
  };
  while (!r1.empty()) {
    // polynomial quotient r0 / r1
    fp_poly::Poly q, rem = r0;
    i64 li = 1;
    {
      i64 b = r1.back(), e = p - 2;
      while (e > 0) {
        if (e & 1) li = li * b % p;
        b = b * b % p;
        e >>= 1;
      }
    }
    if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      i64 c = rem.back() * li % p;
      size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] = ((rem[shift + i] - c * r1[i]) % p + p) % p;
      fp_poly::trim(rem);
    }
    fp_poly::trim(q);
    fp_poly::Poly s2 = sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant; s0 * a = r0 mod f
  i64 c = r0[0], ci = 1;
  {
    i64 b = c, e = p - 2;
    while (e > 0) {
      if (e & 1) ci = ci * b % p;
      b = b * b % p;
      e >>= 1;
    }
  }
  std::vector<i64> b0(m_, 0);
  for (size_t i = 0; i < s0.size() && static_cast<int>(i) < m_; ++i) b0[i] = s0[i] * ci % p;
  WittElem b = elem(b0);
  // Newton: b <- b (2 - a b), doubling the p-adic accuracy
  for (int acc = 1; acc < z_.k; acc *= 2) {
    WittElem ab = mul(a, b);
    WittElem two_minus = scalar(2) - ab;
    b = mul(b, two_minus);
  }
  return b;
}

WittElem WittRing::sigma(const WittElem& a) const {
  WittElem r = zero();
  sigma(a.c.data(), r.c.data());
  return r;
}

WittElem WittRing::sigma_pow(const WittElem& a, int k) const {
  k %= m_;
  if (k < 0) k += m_;
  WittElem r = a;
  for (int i = 0; i < k; ++i) r = sigma(r);
  return r;
}

void WittRing::compute_sigma() {
  sig_.assign(m_, std::vector<i64>(m_, 0));
  sig_inv_ = sig_;
  if (m_ == 1) {
    sig_[0][0] = 1;
    sig_inv_[0][0] = 1;
    return;
  }
  WittElem x = gen();
  // y0 = x^p is a root of f mod p; Newton iteration lifts it to a root mod p^n
  WittElem y = pow(x, z_.p);
  auto eval = [&](const WittElem& t) {
    WittElem acc = zero();
    WittElem tp = one();
    for (int i = 0; i <= m_; ++i) {
      acc = acc + mul(scalar(f_[i]), tp);
      tp = mul(tp, t);
    }
    return acc;
  };
  auto deriv = [&](const WittElem& t) {
    WittElem acc = zero();
    WittElem tp = one();
    for (int i = 1; i <= m_; ++i) {
      acc = acc + mul(scalar(z_.mul(f_[i], i % z_.q)), tp);
      tp = mul(tp, t);
    }
    return acc;
  };
  for (int acc = 1; acc < z_.k; acc *= 2) {
    WittElem fy = eval(y);
    WittElem dfy = deriv(y);
    WittElem di;
    try {
      di = inv(dfy);
    } catch (const NotAUnit&) {
      throw NonSeparable("f has a repeated root mod p");
    }
    y = y - mul(fy, di);
  }
  if (!eval(y).is_zero()) throw NonSeparable("Newton iteration did not converge");
  WittElem yp = one();
  for (int j = 0; j < m_; ++j) {
    for (int i = 0; i < m_; ++i) sig_[i][j] = yp.c[i];
    yp = mul(yp, y);
  }
  // sigma^{-1} = sigma^{m-1}
  std::vector<std::vector<i64>> acc(m_, std::vector<i64>(m_, 0));
  for (int i = 0; i < m_; ++i) acc[i][i] = 1;
  for (int t = 0; t < m_ - 1; ++t) {
    std::vector<std::vector<i64>> nxt(m_, std::vector<i64>(m_, 0));
    for (int i = 0; i < m_; ++i)
      for (int k = 0; k < m_; ++k) {
        if (sig_[i][k] == 0) continue;
        for (int j = 0; j < m_; ++j) nxt[i][j] = z_.add(nxt[i][j], z_.mul(sig_[i][k], acc[k][j]));
      }
    acc = std::move(nxt);
  }
  sig_inv_ = acc;
}

std::vector<std::vector<i64>> WittRing::mult_matrix(const WittElem& a) const {
  std::vector<std::vector<i64>> M(m_, std::vector<i64>(m_, 0));
  WittElem xp = one();
  WittElem x = m_ == 1 ? one() : gen();
  for (int j = 0; j < m_; ++j) {
    WittElem col = mul(a, xp);
    for (int i = 0; i < m_; ++i) M[i][j] = col.c[i];
    xp = mul(xp, x);
  }
  return M;
}

std::vector<WittElem> WittRing::enumerate() const {
  std::vector<WittElem> out;
  i64 total = ipow(z_.q, m_);
  out.reserve(total);
  for (i64 code = 0; code < total; ++code) {
    WittElem e = zero();
    i64 t = code;
    for (int i = 0; i < m_; ++i) {
      e.c[i] = t % z_.q;
      t /= z_.q;
    }
    out.push_back(std::move(e));
  }
  return out;
}

WittElem WittElem::operator+(const WittElem& o) const { return ring->add(*this, o); }

WittElem WittElem::operator-(const WittElem& o) const {
  WittElem r = ring->zero();
  ring->sub(c.data(), o.c.data(), r.c.data());
  return r;
}

WittElem WittElem::operator-() const { return ring->zero() - *this; }

WittElem WittElem::operator*(const WittElem& o) const { return ring->mul(*this, o); }

bool WittElem::is_zero() const {
  for (auto x : c)
    if (x != 0) return false;
  return true;
}

bool WittElem::is_unit() const {
  for (auto x : c)
    if (x % ring->p() != 0) return true;
  return false;
}

std::string WittElem::str() const {
  std::ostringstream os;
  if (c.size() == 1) {
    os << c[0];
    return os.str();
  }
  os << "[";
  for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

}  // namespace prismalab
