#include "prismalab/linmod.hpp"

#include "prismalab/errors.hpp"

namespace prismalab {

IVec Ambient::gen(int k) const {
  IVec v = zero();
  v(idx(k, 0, 0)) = 1;
  return v;
}

IVec Ambient::from_series(const std::vector<SeriesElem>& v) const {
  if (static_cast<int>(v.size()) != g) throw DimensionMismatch("vector length differs from the rank");
  IVec out = zero();
  for (int k = 0; k < g; ++k) {
    int d = v[k].degree();
    if (v[k].exact() && d >= N) {
      // higher terms vanish in the truncation
      d = N - 1;
    }
    for (int i = 0; i <= d && i < N; ++i)
      for (int j = 0; j < m(); ++j) out(idx(k, i, j)) = z().red(v[k].raw(i)[j]);
  }
  return out;
}

std::vector<SeriesElem> Ambient::to_series(const IVec& v) const {
  std::vector<SeriesElem> out;
  for (int k = 0; k < g; ++k) {
    SeriesElem s(R, N, false);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < m(); ++j) s.raw(i)[j] = v(idx(k, i, j));
    out.push_back(s);
  }
  return out;
}

IVec Ambient::mul_u(const IVec& v, int times) const {
  IVec out = zero();
  for (int k = 0; k < g; ++k)
    for (int i = 0; i + times < N; ++i)
      for (int j = 0; j < m(); ++j) out(idx(k, i + times, j)) = v(idx(k, i, j));
  return out;
}

IVec Ambient::mul_witt(const IVec& v, const WittElem& a) const {
  IVec out = zero();
  for (int k = 0; k < g; ++k)
    for (int i = 0; i < N; ++i) R->mul(v.data() + idx(k, i, 0), a.c.data(), out.data() + idx(k, i, 0));
  return out;
}

IVec Ambient::mul_series(const IVec& v, const SeriesElem& s) const {
  IVec out = zero();
  int d = std::min(s.degree(), N - 1);
  for (int t = 0; t <= d; ++t) {
    WittElem c = s.coeff(t);
    if (c.is_zero()) continue;
    out = add(out, mul_witt(mul_u(v, t), c));
  }
  return out;
}

IVec Ambient::add(const IVec& a, const IVec& b) const {
  IVec o(a.cols());
  for (int i = 0; i < a.cols(); ++i) o(i) = z().add(a(i), b(i));
  return o;
}

IVec Ambient::sub(const IVec& a, const IVec& b) const {
  IVec o(a.cols());
  for (int i = 0; i < a.cols(); ++i) o(i) = z().sub(a(i), b(i));
  return o;
}

IVec Ambient::scale(const IVec& a, i64 c) const {
  IVec o(a.cols());
  for (int i = 0; i < a.cols(); ++i) o(i) = z().mul(a(i), c);
  return o;
}

IMat Ambient::saturate(const IMat& rows) const {
  const int mm = m();
  IMat out(rows.rows() * N * mm, dim());
  int r = 0;
  WittElem x = mm == 1 ? R->one() : R->gen();
  for (int s = 0; s < rows.rows(); ++s) {
    IVec v = rows.row(s);
    for (int i = 0; i < N; ++i) {
      IVec w = v;
      for (int j = 0; j < mm; ++j) {
        out.row(r++) = w;
        if (j + 1 < mm) w = mul_witt(w, x);
      }
      v = mul_u(v);
    }
  }
  return out;
}

IMat Ambient::phi_matrix(const std::vector<std::vector<SeriesElem>>& Phi) const {
  IMat P = IMat::Zero(dim(), dim());
  const int mm = m();
  const i64 p = R->p();
  std::vector<IVec> col(g);
  for (int k = 0; k < g; ++k) {
    std::vector<SeriesElem> c;
    for (int l = 0; l < g; ++l) c.push_back(Phi[l][k]);
    col[k] = from_series(c);
  }
  WittElem x = mm == 1 ? R->one() : R->gen();
  for (int k = 0; k < g; ++k) {
    WittElem xj = R->one();
    for (int j = 0; j < mm; ++j) {
      WittElem sx = R->sigma(xj);
      IVec base = mul_witt(col[k], sx);
      for (int i = 0; i < N; ++i) {
        if (p * i >= N) break;
        P.row(idx(k, i, j)) = mul_u(base, static_cast<int>(p * i));
      }
      xj = xj * x;
    }
  }
  return P;
}

IVec Ambient::apply(const IVec& v, const IMat& M) const {
  IVec out = zero();
  for (int i = 0; i < v.cols(); ++i) {
    if (v(i) == 0) continue;
    for (int j = 0; j < M.cols(); ++j)
      if (M(i, j) != 0) out(j) = z().add(out(j), z().mul(v(i), M(i, j)));
  }
  return out;
}

IMat Ambient::apply_rows(const IMat& rows, const IMat& M) const { return mat_mul(rows, M, z()); }

IMat rows_of(const std::vector<IVec>& v, int cols) {
  IMat A(v.size(), cols);
  for (size_t i = 0; i < v.size(); ++i) A.row(i) = v[i];
  return A;
}

IMat SubQuotient::generators() const {
  std::vector<IVec> out;
  const auto& H = top.howell().H;
  for (int i = 0; i < H.rows(); ++i)
    if (!bot.contains(H.row(i))) out.push_back(H.row(i));
  return rows_of(out, amb.dim());
}

RowSpan SubQuotient::u_top_plus_bot() const {
  const auto& H = top.howell().H;
  IMat U(H.rows(), amb.dim());
  for (int i = 0; i < H.rows(); ++i) U.row(i) = amb.mul_u(H.row(i));
  return RowSpan(vstack(U, bot.howell().H), amb.z());
}

bool SubQuotient::phi_stable() const {
  IMat a = amb.apply_rows(top.howell().H, phi);
  for (int i = 0; i < a.rows(); ++i)
    if (!top.contains(a.row(i))) return false;
  IMat b = amb.apply_rows(bot.howell().H, phi);
  for (int i = 0; i < b.rows(); ++i)
    if (!bot.contains(b.row(i))) return false;
  return true;
}

SubQuotient SubQuotient::quotient_by(const IMat& extra) const {
  SubQuotient q = *this;
  q.bot = RowSpan(vstack(bot.howell().H, amb.saturate(extra)), amb.z());
  return q;
}

SubQuotient SubQuotient::submodule(const IMat& rows) const {
  SubQuotient s = *this;
  s.top = RowSpan(vstack(bot.howell().H, amb.saturate(rows)), amb.z());
  return s;
}

bool SubQuotient::equal_as_sub(const SubQuotient& o) const {
  return bot == o.bot && top.contains_span(o.top) && o.top.contains_span(top);
}

SubQuotient make_subquotient(const Ambient& amb, const IMat& top_gens, const IMat& bot_gens, const IMat& phi) {
  SubQuotient s;
  s.amb = amb;
  s.bot = RowSpan(amb.saturate(bot_gens), amb.z());
  s.top = RowSpan(vstack(s.bot.howell().H, amb.saturate(top_gens)), amb.z());
  s.phi = phi;
  return s;
}

}  // namespace prismalab
