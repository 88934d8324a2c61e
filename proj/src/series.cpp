#include "prismalab/series.hpp"

#include <algorithm>
#include <sstream>

#include "prismalab/errors.hpp"

namespace prismalab {

SeriesElem::SeriesElem(WittRingPtr R, int N, bool exact)
    : R_(std::move(R)), N_(N), exact_(exact), c_(static_cast<size_t>(N) * R_->m(), 0) {
  if (N < 1) throw PrecisionLoss("u-precision must be >= 1");
}

SeriesElem SeriesElem::from_coeffs(WittRingPtr R, int N, const std::vector<i64>& ints, bool exact) {
  if (static_cast<int>(ints.size()) > N) {
    int d = static_cast<int>(ints.size()) - 1;
    while (d >= 0 && R->z().red(ints[d]) == 0) --d;
    if (d >= N) throw PrecisionLoss("polynomial does not fit in u-precision");
  }
  SeriesElem s(R, N, exact);
  for (int i = 0; i < static_cast<int>(ints.size()) && i < N; ++i) s.raw(i)[0] = R->z().red(ints[i]);
  return s;
}

SeriesElem SeriesElem::monomial(WittRingPtr R, int N, int deg, i64 c, bool exact) {
  if (deg >= N) throw PrecisionLoss("monomial degree exceeds u-precision");
  SeriesElem s(R, N, exact);
  s.raw(deg)[0] = R->z().red(c);
  return s;
}

SeriesElem SeriesElem::constant(const WittElem& a, int N, bool exact) {
  SeriesElem s(a.ring, N, exact);
  s.set_coeff(0, a);
  return s;
}

int SeriesElem::degree() const {
  const int m = R_->m();
  for (int i = N_ - 1; i >= 0; --i)
    for (int j = 0; j < m; ++j)
      if (c_[static_cast<size_t>(i) * m + j] != 0) return i;
  return -1;
}

WittElem SeriesElem::coeff(int i) const {
  if (i < 0 || i >= N_) return R_->zero();
  return R_->elem(std::vector<i64>(raw(i), raw(i) + R_->m()));
}

void SeriesElem::set_coeff(int i, const WittElem& a) {
  if (i >= N_) throw PrecisionLoss("coefficient index exceeds u-precision");
  std::copy(a.c.begin(), a.c.end(), raw(i));
}

SeriesElem SeriesElem::binop(const SeriesElem& o, bool subtract) const {
  int N;
  bool ex = exact_ && o.exact_;
  if (ex) {
    N = std::max(N_, o.N_);
  } else if (exact_) {
    N = o.N_;
  } else if (o.exact_) {
    N = N_;
  } else {
    N = std::min(N_, o.N_);
  }
  SeriesElem r(R_, N, ex);
  const int m = R_->m();
  const Zpk& z = R_->z();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < m; ++j) {
      i64 a = i < N_ ? raw(i)[j] : 0;
      i64 b = i < o.N_ ? o.raw(i)[j] : 0;
      r.raw(i)[j] = subtract ? z.sub(a, b) : z.add(a, b);
    }
  return r;
}

SeriesElem SeriesElem::operator+(const SeriesElem& o) const { return binop(o, false); }
SeriesElem SeriesElem::operator-(const SeriesElem& o) const { return binop(o, true); }
SeriesElem SeriesElem::operator-() const { return SeriesElem(R_, N_, exact_) - *this; }

SeriesElem SeriesElem::operator*(const SeriesElem& o) const {
  bool ex = exact_ && o.exact_;
  int N;
  if (ex) {
    N = std::max(N_, o.N_);
    int da = degree(), db = o.degree();
    if (da >= 0 && db >= 0 && da + db >= N) throw PrecisionLoss("exact product exceeds u-precision");
  } else if (exact_) {
    N = o.N_;
  } else if (o.exact_) {
    N = N_;
  } else {
    N = std::min(N_, o.N_);
  }
  SeriesElem r(R_, N, ex);
  const int da = std::min(degree(), N - 1), db = std::min(o.degree(), N - 1);
  for (int i = 0; i <= da; ++i) {
    const i64* a = raw(i);
    bool nz = false;
    for (int j = 0; j < R_->m(); ++j) nz |= a[j] != 0;
    if (!nz) continue;
    for (int k = 0; k <= db && i + k < N; ++k) R_->mul_acc(a, o.raw(k), r.raw(i + k));
  }
  return r;
}

SeriesElem SeriesElem::scale(const WittElem& a) const {
  SeriesElem r(R_, N_, exact_);
  for (int i = 0; i < N_; ++i) R_->mul(raw(i), a.c.data(), r.raw(i));
  return r;
}

SeriesElem SeriesElem::scale(i64 a) const { return scale(R_->scalar(a)); }

bool SeriesElem::operator==(const SeriesElem& o) const {
  int N = (exact_ && o.exact_) ? std::max(N_, o.N_) : std::min(N_, o.N_);
  if (exact_ && o.exact_) {
    if (degree() != o.degree()) return false;
    N = std::min(N, degree() + 1);
  }
  const int m = R_->m();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < m; ++j) {
      i64 a = i < N_ ? raw(i)[j] : 0;
      i64 b = i < o.N_ ? o.raw(i)[j] : 0;
      if (a != b) return false;
    }
  return true;
}

SeriesElem SeriesElem::with_N(int N2) const {
  if (exact_ && degree() >= N2) throw PrecisionLoss("exact element does not fit in new u-precision");
  if (!exact_ && N2 > N_) throw PrecisionLoss("cannot raise u-precision of a truncated series");
  SeriesElem r(R_, N2, exact_);
  for (int i = 0; i < std::min(N_, N2); ++i) std::copy(raw(i), raw(i) + R_->m(), r.raw(i));
  return r;
}

SeriesElem SeriesElem::truncated(int N2) const {
  SeriesElem r(R_, N2, false);
  for (int i = 0; i < std::min(N_, N2); ++i) std::copy(raw(i), raw(i) + R_->m(), r.raw(i));
  if (!exact_ && N2 > N_) throw PrecisionLoss("cannot raise u-precision of a truncated series");
  return r;
}

SeriesElem SeriesElem::shift(int k) const {
  int d = degree();
  int N = N_;
  if (exact_ && d >= 0 && d + k >= N) throw PrecisionLoss("shift exceeds u-precision");
  SeriesElem r(R_, N, exact_);
  for (int i = 0; i + k < N && i < N_; ++i) std::copy(raw(i), raw(i) + R_->m(), r.raw(i + k));
  return r;
}

SeriesElem SeriesElem::pow(int e) const {
  SeriesElem r = constant(R_->one(), N_, exact_);
  SeriesElem b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

int SeriesElem::u_valuation() const {
  const int m = R_->m();
  for (int i = 0; i < N_; ++i)
    for (int j = 0; j < m; ++j)
      if (raw(i)[j] != 0) return i;
  return -1;
}

int SeriesElem::p_valuation() const {
  int v = R_->n();
  for (i64 x : c_)
    if (x != 0) v = std::min(v, R_->z().val(x));
  return v;
}

SeriesElem SeriesElem::reduce_p(int n2) const {
  if (n2 > R_->n()) throw InsufficientPrecision("cannot raise p-adic precision by reduction");
  auto R2 = n2 == R_->n() ? R_ : R_->with_precision(n2);
  SeriesElem r(R2, N_, exact_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = R2->z().red(c_[i]);
  return r;
}

SeriesElem SeriesElem::lift_p(int n2) const {
  auto R2 = n2 == R_->n() ? R_ : R_->with_precision(n2);
  SeriesElem r(R2, N_, exact_);
  r.c_ = c_;
  return r;
}

std::string SeriesElem::str() const {
  std::ostringstream os;
  bool first = true;
  const int m = R_->m();
  for (int i = 0; i < N_; ++i) {
    bool nz = false;
    for (int j = 0; j < m; ++j) nz |= raw(i)[j] != 0;
    if (!nz) continue;
    if (!first) os << " + ";
    first = false;
    if (m == 1) {
      os << raw(i)[0];
    } else {
      os << "[";
      for (int j = 0; j < m; ++j) os << (j ? "," : "") << raw(i)[j];
      os << "]";
    }
    if (i == 1) os << "*u";
    if (i > 1) os << "*u^" << i;
  }
  if (first) os << "0";
  if (!exact_) os << " + O(u^" << N_ << ")";
  return os.str();
}

SeriesElem pmul(const SeriesElem& a, const SeriesElem& b) {
  if (a.exact() && b.exact()) {
    int need = std::max(a.degree(), 0) + std::max(b.degree(), 0) + 1;
    int N = std::max({a.N(), b.N(), need});
    return a.with_N(N) * b.with_N(N);
  }
  return a * b;
}

SeriesElem padd(const SeriesElem& a, const SeriesElem& b) { return a + b; }

SeriesElem psub(const SeriesElem& a, const SeriesElem& b) { return a - b; }

SeriesElem phi_apply(const SeriesElem& x, int out_N) {
  const auto& R = x.ring();
  const i64 p = R->p();
  int N2 = out_N > 0 ? out_N : static_cast<int>(p * x.N());
  if (!x.exact()) N2 = std::min<i64>(N2, p * x.N());
  int d = x.degree();
  if (x.exact() && d >= 0 && p * d >= N2) throw PrecisionLoss("phi image exceeds u-precision");
  SeriesElem r(R, N2, x.exact());
  for (int i = 0; i <= d && p * i < N2; ++i) R->sigma(x.raw(i), r.raw(static_cast<int>(p * i)));
  return r;
}

SeriesElem divide_exact(const SeriesElem& x, const SeriesElem& by) {
  if (!x.exact() || !by.exact()) throw PrecisionLoss("division by a polynomial needs exact operands");
  const auto& R = x.ring();
  int db = by.degree();
  if (db < 0) throw NotDivisible("division by zero");
  if (by.coeff(db) != R->one()) throw NotDivisible("divisor must be monic");
  SeriesElem rem = x;
  int dx = x.degree();
  SeriesElem q(R, x.N(), true);
  const Zpk& z = R->z();
  const int m = R->m();
  std::vector<i64> t(m);
  for (int d = dx; d >= db; --d) {
    const i64* lead = rem.raw(d);
    bool nz = false;
    for (int j = 0; j < m; ++j) nz |= lead[j] != 0;
    if (!nz) continue;
    std::vector<i64> c(lead, lead + m);
    std::copy(c.begin(), c.end(), q.raw(d - db));
    for (int k = 0; k <= db; ++k) {
      R->mul(c.data(), by.raw(k), t.data());
      i64* dst = rem.raw(d - db + k);
      for (int j = 0; j < m; ++j) dst[j] = z.sub(dst[j], t[j]);
    }
  }
  if (!rem.is_zero()) throw NotDivisible("nonzero remainder");
  return q;
}

SeriesElem divide_exact_p(const SeriesElem& x, int i, int min_n) {
  const auto& R = x.ring();
  int n2 = R->n() - i;
  if (n2 < min_n || n2 < 1) throw InsufficientPrecision("dividing by p^i leaves too few p-adic digits");
  if (x.p_valuation() < i) throw NotDivisible("coefficients not divisible by p^i");
  auto R2 = R->with_precision(n2);
  SeriesElem r(R2, x.N(), x.exact());
  const i64 pi = ipow(R->p(), i);
  for (int k = 0; k < x.N(); ++k)
    for (int j = 0; j < R->m(); ++j) r.raw(k)[j] = x.raw(k)[j] / pi;
  return r;
}

SeriesElem shifted_power_minus_one(WittRingPtr R, i64 k, int N) {
  if (k >= N) throw PrecisionLoss("(u+1)^k - 1 does not fit in u-precision");
  const Zpk& z = R->z();
  // binomial coefficients mod p^n by Pascal's rule
  std::vector<i64> row(k + 1, 0);
  row[0] = 1;
  for (i64 r = 1; r <= k; ++r)
    for (i64 j = r; j >= 1; --j) row[j] = z.add(row[j], row[j - 1]);
  row[0] = 0;
  return SeriesElem::from_coeffs(R, N, row, true);
}

namespace {

EisensteinPoly validate(WittRingPtr R, const std::vector<WittElem>& c, std::string kind) {
  if (c.size() < 2) throw NotEisenstein("degree must be >= 1");
  int e = static_cast<int>(c.size()) - 1;
  if (c[e] != R->one()) throw NotEisenstein("leading coefficient must be 1");
  for (int i = 0; i < e; ++i)
    if (c[i].is_unit()) throw NotEisenstein("non-leading coefficient is a unit");
  if (R->n() < 2) throw NotEisenstein("Eisenstein data needs p-adic precision >= 2");
  const WittElem& c0 = c[0];
  const Zpk& z = R->z();
  std::vector<i64> a(R->m());
  bool unit = false;
  for (int j = 0; j < R->m(); ++j) {
    a[j] = c0.c[j] / z.p;
    unit |= a[j] % z.p != 0;
  }
  if (!unit) throw NotEisenstein("constant term is divisible by p^2");
  EisensteinPoly E;
  E.e = e;
  E.kind = std::move(kind);
  E.a0 = R->elem(a);
  E.E = SeriesElem(R, e + 1, true);
  for (int i = 0; i <= e; ++i) E.E.set_coeff(i, c[i]);
  return E;
}

}  // namespace

EisensteinPoly EisensteinPoly::cyclotomic(WittRingPtr R, int n) {
  if (n < 1) throw NotEisenstein("cyclotomic level must be >= 1");
  i64 p = R->p();
  i64 big = ipow(p, n), small = ipow(p, n - 1);
  auto Rw = R->n() >= 2 ? R : R->with_precision(2);
  SeriesElem q = shifted_power_minus_one(Rw, big, static_cast<int>(big + 1));
  SeriesElem r = shifted_power_minus_one(Rw, small, static_cast<int>(big + 1));
  SeriesElem d = divide_exact(q, r);
  std::vector<WittElem> c;
  for (int i = 0; i <= d.degree(); ++i) c.push_back(d.coeff(i));
  EisensteinPoly E = validate(Rw, c, "cyclotomic(" + std::to_string(n) + ")");
  return Rw == R ? E : E.with_precision(R->n());
}

EisensteinPoly EisensteinPoly::explicit_coeffs(WittRingPtr R, const std::vector<WittElem>& c) {
  return validate(R, c, "explicit");
}

EisensteinPoly EisensteinPoly::explicit_ints(WittRingPtr R, const std::vector<i64>& c) {
  if (c.size() >= 2 && R->n() < 2) {
    // validate over the integers, then reduce
    if (vp(c[0], R->p()) != 1) throw NotEisenstein("constant term must have p-adic valuation 1");
    return explicit_ints(R->with_precision(2), c).with_precision(R->n());
  }
  std::vector<WittElem> w;
  for (i64 x : c) w.push_back(R->scalar(x));
  return validate(R, w, "explicit");
}

EisensteinPoly EisensteinPoly::with_precision(int n2) const {
  EisensteinPoly r = *this;
  auto R = E.ring();
  if (n2 < R->n()) {
    r.E = E.reduce_p(n2);
  } else {
    r.E = E.lift_p(n2);
  }
  auto R2 = r.E.ring();
  r.a0 = R2->elem(std::vector<i64>(a0.c.begin(), a0.c.end()));
  return r;
}

}  // namespace prismalab
