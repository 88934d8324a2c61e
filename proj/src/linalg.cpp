#include "prismalab/linalg.hpp"

#include <algorithm>

#include "prismalab/errors.hpp"

namespace prismalab {

namespace {

using Row = std::vector<i64>;

void row_axpy(Row& dst, const Row& src, i64 c, const Zpk& z, int from = 0) {
  if (c == 0) return;
  for (size_t j = from; j < dst.size(); ++j)
    if (src[j] != 0) dst[j] = z.sub(dst[j], z.mul(c, src[j]));
}

void row_scale(Row& r, i64 c, const Zpk& z) {
  for (auto& x : r) x = z.mul(x, c);
}

bool row_zero(const Row& r, int from, int to) {
  for (int j = from; j < to; ++j)
    if (r[j] != 0) return false;
  return true;
}

}  // namespace

HowellResult howell_form(const IMat& A, const Zpk& z, bool with_transform) {
  const int nr = static_cast<int>(A.rows()), nc = static_cast<int>(A.cols());
  // each working row carries its transform row appended
  const int width = nc + (with_transform ? nr : 0);
  std::vector<Row> W;
  W.reserve(nr + 8);
  for (int i = 0; i < nr; ++i) {
    Row r(width, 0);
    bool nz = false;
    for (int j = 0; j < nc; ++j) {
      r[j] = z.red(A(i, j));
      nz |= r[j] != 0;
    }
    if (with_transform) r[nc + i] = 1;
    if (nz || with_transform) W.push_back(std::move(r));
  }
  HowellResult res;
  int cur = 0;
  for (int c = 0; c < nc && cur < static_cast<int>(W.size()); ++c) {
    int best = -1, bv = z.k;
    for (int r = cur; r < static_cast<int>(W.size()); ++r) {
      if (W[r][c] == 0) continue;
      int v = z.val(W[r][c]);
      if (v < bv) {
        bv = v;
        best = r;
        if (v == 0) break;
      }
    }
    if (best < 0) continue;
    std::swap(W[cur], W[best]);
    i64 pv = z.ppow(bv);
    i64 unit = W[cur][c] / pv;  // residue is p^bv * unit exactly as integers
    row_scale(W[cur], z.inv(unit), z);
    for (int r = cur + 1; r < static_cast<int>(W.size()); ++r) {
      if (W[r][c] == 0) continue;
      row_axpy(W[r], W[cur], W[r][c] / pv, z, c);
    }
    if (bv > 0) {
      Row extra = W[cur];
      row_scale(extra, z.ppow(z.k - bv), z);
      if (!row_zero(extra, 0, width)) W.push_back(std::move(extra));
    }
    for (int r = 0; r < cur; ++r) {
      if (W[r][c] >= pv) row_axpy(W[r], W[cur], W[r][c] / pv, z, c);
    }
    res.pivcol.push_back(c);
    res.pivval.push_back(bv);
    ++cur;
  }
  const int np = cur;
  res.H = IMat::Zero(np, nc);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nc; ++j) res.H(i, j) = W[i][j];
  if (with_transform) {
    res.T = IMat::Zero(np, nr);
    for (int i = 0; i < np; ++i)
      for (int j = 0; j < nr; ++j) res.T(i, j) = W[i][nc + j];
  }
  return res;
}

RowSpan::RowSpan(const IMat& A, const Zpk& z, bool with_transform)
    : z_(z), cols_(static_cast<int>(A.cols())), h_(howell_form(A, z, with_transform)) {}

IVec RowSpan::reduce(const IVec& v0, IVec* coeffs) const {
  IVec v(cols_);
  for (int j = 0; j < cols_; ++j) v(j) = z_.red(v0(j));
  if (coeffs) *coeffs = IVec::Zero(h_.H.rows());
  for (int i = 0; i < static_cast<int>(h_.pivcol.size()); ++i) {
    int c = h_.pivcol[i];
    if (v(c) == 0) continue;
    i64 pv = z_.ppow(h_.pivval[i]);
    i64 t = v(c) / pv;
    if (t == 0) continue;
    for (int j = c; j < cols_; ++j)
      if (h_.H(i, j) != 0) v(j) = z_.sub(v(j), z_.mul(t, h_.H(i, j)));
    if (coeffs) (*coeffs)(i) = t;
  }
  return v;
}

bool RowSpan::contains(const IVec& v) const {
  IVec r = reduce(v);
  for (int j = 0; j < cols_; ++j)
    if (r(j) != 0) return false;
  return true;
}

std::optional<IVec> RowSpan::solve(const IVec& v) const {
  IVec coeffs;
  IVec r = reduce(v, &coeffs);
  for (int j = 0; j < cols_; ++j)
    if (r(j) != 0) return std::nullopt;
  IVec x = IVec::Zero(h_.T.cols());
  for (int i = 0; i < coeffs.cols(); ++i) {
    if (coeffs(i) == 0) continue;
    for (int j = 0; j < x.cols(); ++j) x(j) = z_.add(x(j), z_.mul(coeffs(i), h_.T(i, j)));
  }
  return x;
}

i64 RowSpan::length() const {
  i64 s = 0;
  for (int v : h_.pivval) s += z_.k - v;
  return s;
}

bool RowSpan::operator==(const RowSpan& o) const {
  return cols_ == o.cols_ && h_.pivcol == o.h_.pivcol && h_.pivval == o.h_.pivval && h_.H == o.h_.H;
}

bool RowSpan::contains_span(const RowSpan& o) const {
  for (int i = 0; i < o.h_.H.rows(); ++i)
    if (!contains(o.h_.H.row(i))) return false;
  return true;
}

IMat left_kernel(const IMat& A, const Zpk& z) {
  const int nr = static_cast<int>(A.rows()), nc = static_cast<int>(A.cols());
  IMat Aug = IMat::Zero(nr, nc + nr);
  Aug.leftCols(nc) = A;
  for (int i = 0; i < nr; ++i) Aug(i, nc + i) = 1;
  HowellResult h = howell_form(Aug, z);
  std::vector<int> rows;
  for (int i = 0; i < h.H.rows(); ++i)
    if (h.pivcol[i] >= nc) rows.push_back(i);
  IMat K(rows.size(), nr);
  for (size_t i = 0; i < rows.size(); ++i) K.row(i) = h.H.row(rows[i]).rightCols(nr);
  return K;
}

KernelSolution kernel_solve(const IMat& A, const Zpk& z,
                            const std::optional<Eigen::Matrix<i64, Eigen::Dynamic, 1>>& b) {
  KernelSolution out;
  IMat At = A.transpose();
  out.kernel = left_kernel(At, z).transpose();
  if (b) {
    RowSpan span(At, z, true);
    auto x = span.solve(b->transpose());
    if (!x) throw Inconsistent("right-hand side is not in the column span");
    out.particular = x->transpose();
  }
  return out;
}

std::vector<int> elementary_divisors(const IMat& A0, const Zpk& z) {
  IMat A = reduce_mod(A0, z);
  const int nr = static_cast<int>(A.rows()), nc = static_cast<int>(A.cols());
  std::vector<int> out;
  for (int t = 0; t < std::min(nr, nc); ++t) {
    int bi = -1, bj = -1, bv = z.k;
    for (int i = t; i < nr && bv > 0; ++i)
      for (int j = t; j < nc; ++j) {
        if (A(i, j) == 0) continue;
        int v = z.val(A(i, j));
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (bi < 0) break;
    A.row(t).swap(A.row(bi));
    A.col(t).swap(A.col(bj));
    i64 pv = z.ppow(bv);
    i64 uinv = z.inv(A(t, t) / pv);
    for (int j = t; j < nc; ++j) A(t, j) = z.mul(A(t, j), uinv);
    for (int i = t + 1; i < nr; ++i) {
      if (A(i, t) == 0) continue;
      i64 c = A(i, t) / pv;
      for (int j = t; j < nc; ++j) A(i, j) = z.sub(A(i, j), z.mul(c, A(t, j)));
    }
    for (int j = t + 1; j < nc; ++j) A(t, j) = 0;  // column operations clear the pivot row
    out.push_back(bv);
  }
  return out;
}

i64 cokernel_length(const IMat& A, const Zpk& z) {
  RowSpan s(A, z);
  return static_cast<i64>(A.cols()) * z.k - s.length();
}

IMat mat_mul(const IMat& A, const IMat& B, const Zpk& z) {
  IMat C = IMat::Zero(A.rows(), B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int k = 0; k < A.cols(); ++k) {
      i64 a = A(i, k);
      if (a == 0) continue;
      for (int j = 0; j < B.cols(); ++j)
        if (B(k, j) != 0) C(i, j) = z.add(C(i, j), z.mul(a, B(k, j)));
    }
  return C;
}

IMat vstack(const IMat& A, const IMat& B) {
  if (A.rows() == 0) return B;
  if (B.rows() == 0) return A;
  IMat C(A.rows() + B.rows(), A.cols());
  C.topRows(A.rows()) = A;
  C.bottomRows(B.rows()) = B;
  return C;
}

IMat reduce_mod(const IMat& A, const Zpk& z) {
  IMat B = A;
  for (int i = 0; i < B.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j) B(i, j) = z.red(B(i, j));
  return B;
}

}  // namespace prismalab
