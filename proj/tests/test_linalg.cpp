#include <random>
#include <set>

#include "doctest.h"
#include "prismalab/errors.hpp"
#include "prismalab/linalg.hpp"

using namespace prismalab;

namespace {

IMat random_mat(std::mt19937_64& rng, int r, int c, i64 q) {
  IMat A(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) A(i, j) = static_cast<i64>(rng() % q);
  return A;
}

// all vectors in the row span, by enumerating coefficient vectors
std::set<std::vector<i64>> brute_span(const IMat& A, i64 q) {
  std::set<std::vector<i64>> out;
  const int r = static_cast<int>(A.rows()), c = static_cast<int>(A.cols());
  std::vector<i64> coef(r, 0);
  while (true) {
    std::vector<i64> v(c, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) v[j] = (v[j] + coef[i] * A(i, j)) % q;
    out.insert(v);
    int k = 0;
    while (k < r && ++coef[k] == q) coef[k++] = 0;
    if (k == r) break;
  }
  return out;
}

}  // namespace

TEST_CASE("identity is its own Howell form") {
  Zpk z(3, 2);
  IMat I = IMat::Identity(4, 4);
  auto h = howell_form(I, z);
  CHECK(h.H == I);
}

TEST_CASE("[[2]] over Z/4") {
  Zpk z(2, 2);
  IMat A(1, 1);
  A << 2;
  RowSpan s(A, z);
  CHECK(s.howell().H(0, 0) == 2);
  IVec one(1);
  one << 1;
  CHECK_FALSE(s.contains(one));
  CHECK(s.length() == 1);
}

TEST_CASE("Howell span equals brute-force span over Z/8") {
  Zpk z(2, 3);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 6; ++t) {
    IMat A = random_mat(rng, 3, 4, 8);
    if (t % 2) A.row(2) = (A.row(0) * 2).unaryExpr([](i64 x) { return x % 8; });
    RowSpan s(A, z, true);
    auto span = brute_span(A, 8);
    CHECK(static_cast<i64>(span.size()) == ipow(2, static_cast<int>(s.length())));
    for (int k = 0; k < 50; ++k) {
      IVec v(4);
      for (int j = 0; j < 4; ++j) v(j) = static_cast<i64>(rng() % 8);
      std::vector<i64> vv(v.data(), v.data() + 4);
      CHECK(s.contains(v) == (span.count(vv) > 0));
      auto x = s.solve(v);
      CHECK(x.has_value() == s.contains(v));
      if (x) {
        IVec back = (*x * A).unaryExpr([](i64 a) { return ((a % 8) + 8) % 8; });
        CHECK(back == v);
      }
    }
    for (int i = 0; i < s.howell().H.rows(); ++i) {
      std::vector<i64> row(s.howell().H.row(i).data(), s.howell().H.row(i).data() + 4);
      CHECK(span.count(row) == 1);
    }
    IMat TA = mat_mul(s.howell().T, A, z);
    CHECK(TA == s.howell().H);
  }
}

TEST_CASE("Howell form is canonical under row scrambling") {
  Zpk z(3, 2);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    IMat A = random_mat(rng, 3, 5, 9);
    A.row(1) = (A.row(1) * 3).unaryExpr([](i64 x) { return x % 9; });
    IMat U = random_mat(rng, 3, 3, 9);
    for (int i = 0; i < 3; ++i) U(i, i) = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < i; ++j) U(i, j) = 0;
    IMat B = mat_mul(U, A, z);
    RowSpan sa(A, z), sb(B, z);
    CHECK(sa == sb);
  }
}

TEST_CASE("kernel of zero and of [[p]]") {
  Zpk z(3, 2);
  IMat Z0 = IMat::Zero(2, 3);
  auto k = kernel_solve(Z0, z);
  CHECK(cokernel_length(k.kernel.transpose(), z) == 0);
  IMat P(1, 1);
  P << 3;
  auto kp = kernel_solve(P, z);
  RowSpan s(kp.kernel.transpose(), z);
  IVec three(1);
  three << 3;
  IVec one(1);
  one << 1;
  CHECK(s.contains(three));
  CHECK_FALSE(s.contains(one));
}

TEST_CASE("random 3x5 kernel over Z/9 against enumeration") {
  Zpk z(3, 2);
  std::mt19937_64 rng(21);
  IMat A = random_mat(rng, 3, 5, 9);
  auto ks = kernel_solve(A, z);
  IMat K = ks.kernel;
  for (int j = 0; j < K.cols(); ++j) {
    IMat prod = mat_mul(A, K.col(j), z);
    CHECK(prod.isZero());
  }
  RowSpan kspan(K.transpose(), z);
  i64 count = 0;
  std::vector<i64> x(5, 0);
  int sampled = 0;
  for (i64 code = 0; code < ipow(9, 5); ++code) {
    i64 t = code;
    for (int j = 0; j < 5; ++j) {
      x[j] = t % 9;
      t /= 9;
    }
    bool zero = true;
    for (int i = 0; i < 3; ++i) {
      i64 s = 0;
      for (int j = 0; j < 5; ++j) s += A(i, j) * x[j];
      zero &= s % 9 == 0;
    }
    if (zero) ++count;
    if (code % 591 == 0 && sampled < 100) {
      ++sampled;
      IVec v(5);
      for (int j = 0; j < 5; ++j) v(j) = x[j];
      CHECK(kspan.contains(v) == zero);
    }
  }
  CHECK(count == ipow(3, static_cast<int>(kspan.length())));
}

TEST_CASE("particular solutions and inconsistency") {
  Zpk z(2, 3);
  IMat A(2, 2);
  A << 2, 0, 0, 4;
  Eigen::Matrix<i64, Eigen::Dynamic, 1> b(2);
  b << 6, 4;
  auto s = kernel_solve(A, z, b);
  REQUIRE(s.particular);
  IMat Ax = mat_mul(A, *s.particular, z);
  CHECK(Ax(0, 0) == 6);
  CHECK(Ax(1, 0) == 4);
  b << 1, 0;
  CHECK_THROWS_AS(kernel_solve(A, z, b), Inconsistent);
}

TEST_CASE("elementary divisors") {
  Zpk z(2, 3);
  IMat A(3, 3);
  A << 2, 0, 0, 0, 4, 0, 0, 0, 1;
  auto d = elementary_divisors(A, z);
  std::multiset<int> got(d.begin(), d.end());
  CHECK(got == std::multiset<int>{0, 1, 2});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    IMat B = random_mat(rng, 3, 3, 8);
    auto v = elementary_divisors(B, z);
    i64 len = 0;
    for (int x : v) len += 3 - x;
    CHECK(len == RowSpan(B, z).length());
  }
}
