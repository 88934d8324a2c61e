#include <random>

#include "doctest.h"
#include "prismalab/errors.hpp"
#include "prismalab/etale.hpp"

using namespace prismalab;

namespace {

// #{x in F_{p^t}^d : A Frob(x) = x} with A over F_p, by enumeration
i64 brute_fixed(const std::vector<std::vector<i64>>& A, i64 p, int t) {
  auto F = WittRing::residue_field(p, t);
  auto elems = F->enumerate();
  const int d = static_cast<int>(A.size());
  const i64 q = static_cast<i64>(elems.size());
  i64 total = 1;
  for (int i = 0; i < d; ++i) total *= q;
  i64 count = 0;
  for (i64 code = 0; code < total; ++code) {
    std::vector<WittElem> x;
    i64 c = code;
    for (int i = 0; i < d; ++i) {
      x.push_back(elems[c % q]);
      c /= q;
    }
    bool fixed = true;
    for (int i = 0; i < d && fixed; ++i) {
      WittElem s = F->zero();
      for (int j = 0; j < d; ++j) s = s + F->scalar(A[i][j]) * F->sigma(x[j]);
      fixed = s == x[i];
    }
    count += fixed;
  }
  return count;
}

EtalePhiModule over_fp(i64 p, const std::vector<std::vector<i64>>& A) {
  auto k = WittRing::prime(p, 1);
  std::vector<std::vector<WittElem>> M;
  for (const auto& row : A) {
    M.emplace_back();
    for (i64 a : row) M.back().push_back(k->scalar(a));
  }
  return EtalePhiModule::make(k, M);
}

}  // namespace

TEST_CASE("identity on F_p is fixed at once") {
  auto fp = etale_fixed_points(over_fp(5, {{1}}), 3);
  CHECK(fp.t == 1);
  CHECK(fp.basis.rows() == 1);
}

TEST_CASE("A = [[0,1],[1,1]] over F_2 against enumeration") {
  std::vector<std::vector<i64>> A = {{0, 1}, {1, 1}};
  auto V = over_fp(2, A);
  auto fp = etale_fixed_points(V, 6);
  CHECK(fp.t <= 4);
  CHECK(fp.dims[0] == 0);
  for (int t = 1; t <= fp.t; ++t) CHECK(brute_fixed(A, 2, t) == ipow(2, fp.dims[t - 1]));
  CHECK(fp.basis.rows() == 2);
  CHECK_THROWS_AS(etale_fixed_points(V, fp.t - 1), BoundTooSmall);
}

TEST_CASE("fixed basis vectors are fixed") {
  std::vector<std::vector<i64>> A = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  CHECK_THROWS_AS(over_fp(2, A), IllFormedPhi);
  A = {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}};
  auto V = over_fp(2, A);
  auto fp = etale_fixed_points(V, 12);
  CHECK(fp.basis.rows() == 3);
  auto F = fp.field;
  for (int r = 0; r < fp.basis.rows(); ++r) {
    std::vector<WittElem> x;
    for (int b = 0; b < 3; ++b) {
      std::vector<i64> c(fp.t);
      for (int s = 0; s < fp.t; ++s) c[s] = fp.basis(r, b * fp.t + s);
      x.push_back(F->elem(c));
    }
    for (int i = 0; i < 3; ++i) {
      WittElem s = F->zero();
      for (int j = 0; j < 3; ++j) s = s + F->scalar(A[i][j]) * F->sigma(x[j]);
      CHECK(s == x[i]);
    }
  }
}

TEST_CASE("semilinear module over F_4 matches enumeration of ker(B^t - 1)") {
  auto k = WittRing::residue_field(2, 2);
  auto V = EtalePhiModule::make(k, {{k->gen()}});
  auto fp = etale_fixed_points(V, 6);
  auto B = V.fp_matrix();
  for (int t = 1; t <= fp.t; ++t) CHECK(enumerate_fixed_dimension(B, 2, t) == fp.dims[t - 1]);
  CHECK(fp.dims.back() == 2);
}

TEST_CASE("random etale modules: dimensions against enumeration") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const i64 p = trial % 2 ? 3 : 2;
    const int d = 1 + static_cast<int>(rng() % 2);
    std::vector<std::vector<i64>> A(d, std::vector<i64>(d));
    for (auto& row : A)
      for (auto& a : row) a = static_cast<i64>(rng() % p);
    EtalePhiModule V;
    try {
      V = over_fp(p, A);
    } catch (const IllFormedPhi&) {
      continue;
    }
    auto fp = etale_fixed_points(V, 40);
    for (int t = 1; t <= fp.t && t <= 3; ++t) CHECK(brute_fixed(A, p, t) == ipow(p, fp.dims[t - 1]));
  }
}

TEST_CASE("boundary module of the cyclotomic example has a one-dimensional fixed space at t = 1") {
  for (i64 p : {2, 3, 5}) {
    auto R = WittRing::prime(p, 1);
    auto M = diagonal_module(R, {SeriesElem::monomial(R, 8, 1)}, {SeriesElem::from_coeffs(R, 8, {1})},
                             Shape::Finite, 1, 1, 2);
    auto B = boundary_frobenius(M);
    CHECK(B.rows() == 1);
    auto fp = fp_fixed_points(B, p, 1);
    CHECK(fp.t == 1);
    CHECK(fp.dims[0] == 1);
  }
}
