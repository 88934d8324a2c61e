#include <random>

#include "doctest.h"
#include "prismalab/errors.hpp"
#include "prismalab/phi_module.hpp"

using namespace prismalab;

namespace {

SeriesElem poly(const WittRingPtr& R, std::vector<i64> c, int N = 16) { return SeriesElem::from_coeffs(R, N, c); }
SeriesElem one(const WittRingPtr& R) { return poly(R, {1}); }
SeriesElem zero(const WittRingPtr& R) { return poly(R, {}); }

// S/((u+1)^{p^{n-1}} - 1, p^n) with phi(g) = g
PhiModule cyclo_module(i64 p, int n) {
  auto R = WittRing::prime(p, n);
  i64 q = 1;
  for (int i = 1; i < n; ++i) q *= p;
  auto f = shifted_power_minus_one(R, q, 64);
  int b = static_cast<int>(q) * (n + 1);
  return diagonal_module(R, {f}, {one(R)}, Shape::Finite, n, b, b + 1);
}

// S/(p, u^k) over S_1 with the given phi coefficient
PhiModule uk_module(i64 p, int k, i64 phi = 1) {
  auto R = WittRing::prime(p, 1);
  return diagonal_module(R, {SeriesElem::monomial(R, 16, k)}, {poly(R, {phi})}, Shape::Finite, 1, k, k + 1);
}

}  // namespace

TEST_CASE("u-torsion of a free module is zero") {
  auto R = WittRing::prime(2, 2);
  auto M = diagonal_module(R, {zero(R)}, {one(R)}, Shape::FreePlusFinite, 0, 0, 4);
  CHECK(u_torsion(M).g == 0);
}

TEST_CASE("u-torsion of the cyclotomic module is everything") {
  auto M = cyclo_module(2, 2);
  CHECK(M.length() == 4);
  auto T = u_torsion(M);
  CHECK(T.length() == M.length());
  CHECK(annihilator_alpha(M) == 2);
  CHECK(annihilator_alpha_modp(M) == 2);
}

TEST_CASE("u-torsion picks the second summand of S/p + S/(p,u^3)") {
  auto R = WittRing::prime(3, 1);
  auto M = diagonal_module(R, {zero(R), SeriesElem::monomial(R, 16, 3)}, {one(R), poly(R, {0, 1})},
                           Shape::FreePlusFinite, 1, 3, 8);
  auto T = u_torsion(M);
  auto hand = uk_module(3, 3);
  CHECK(T.length() == hand.length());
  CHECK(annihilator_alpha(T) == 3);
  CHECK(zp_shape(T).refuted);
  // idempotent
  CHECK(u_torsion(T).length() == T.length());
}

TEST_CASE("u-torsion needs a certificate") {
  auto R = WittRing::prime(3, 1);
  auto M = diagonal_module(R, {SeriesElem::monomial(R, 16, 3)}, {one(R)}, Shape::General, 1, 0, 8);
  CHECK_THROWS_AS(u_torsion(M), PrecisionTooLow);
  CHECK_THROWS_AS(diagonal_module(R, {SeriesElem::monomial(R, 16, 3)}, {one(R)}, Shape::Finite, 1, 3, 3),
                  PrecisionTooLow);
  CHECK_THROWS_AS(diagonal_module(R, {SeriesElem::monomial(R, 16, 3)}, {one(R)}, Shape::Finite, 1, 2, 8),
                  PrecisionTooLow);
  CHECK_THROWS_AS(diagonal_module(R, {zero(R)}, {one(R)}, Shape::FreePlusFinite, 1, 3, 7), PrecisionTooLow);
}

TEST_CASE("ill-formed phi is rejected") {
  auto R = WittRing::prime(2, 1);
  SeriesMat rel = {{SeriesElem::monomial(R, 8, 1)}, {zero(R)}};
  SeriesMat Phi = {{zero(R), zero(R)}, {one(R), zero(R)}};
  CHECK_THROWS_AS(PhiModule::make(R, 2, rel, Phi, Shape::General, 1, 0, 8), IllFormedPhi);
  Phi = {{one(R), zero(R)}, {zero(R), zero(R)}};
  CHECK_NOTHROW(PhiModule::make(R, 2, rel, Phi, Shape::General, 1, 0, 8));
}

TEST_CASE("annihilator exponents") {
  CHECK(annihilator_alpha(uk_module(3, 3)) == 3);
  CHECK(annihilator_alpha(PhiModule::zero(WittRing::prime(3, 1))) == 0);
  for (auto [p, n] : std::vector<std::pair<i64, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
    i64 q = 1;
    for (int i = 1; i < n; ++i) q *= p;
    CHECK(annihilator_alpha(cyclo_module(p, n)) == q);
  }
}

TEST_CASE("annihilator of a two-generator module by brute force") {
  // S/(p^2, u^2) + S/(p, u^3) over S_2: Ann + (p) = (u^3, p)
  auto R = WittRing::prime(2, 2);
  auto M = diagonal_module(R, {SeriesElem::monomial(R, 16, 2), SeriesElem::monomial(R, 16, 3)}, {one(R), one(R)},
                           Shape::General, 2, 3, 8);
  SeriesMat rel = M.rel;
  for (auto& row : rel) row.push_back(zero(R));
  rel[1].back() = poly(R, {2});
  auto M2 = PhiModule::make(R, 2, rel, M.Phi, Shape::Finite, 2, 3, 8);
  CHECK(annihilator_alpha(M2) == 3);
  CHECK(annihilator_alpha_modp(M2) == 3);
  CHECK(M2.length() == 4 + 3);
}

TEST_CASE("annihilator inclusion arithmetic") {
  for (i64 p : {2, 3, 5}) CHECK(check_ann_inclusion(1, static_cast<int>(p - 1), 2, p).holds);
  auto r = check_ann_inclusion(2, 1, 2, 3);
  CHECK_FALSE(r.holds);
  CHECK(r.lhs == 3);
  CHECK(r.rhs == 6);
  CHECK(check_ann_inclusion(0, 4, 1, 5).holds);
  // alpha <= e(i-1)/(p-1) whenever the inclusion holds
  for (i64 p : {2, 3, 5, 7})
    for (int e = 1; e < 8; ++e)
      for (int i = 1; i < 5; ++i)
        for (int a = 0; a < 20; ++a)
          if (check_ann_inclusion(a, e, i, p).holds) CHECK(a * (p - 1) <= e * (i - 1));
}

TEST_CASE("boundary structure") {
  CHECK(boundary_structure_check(cyclo_module(2, 1)).pass());
  CHECK(boundary_structure_check(cyclo_module(3, 1)).pass());
  auto dead = boundary_structure_check(uk_module(3, 1, 0));
  CHECK(dead.killed_by_p_u);
  CHECK_FALSE(dead.phi_bijective);
  CHECK_FALSE(boundary_structure_check(uk_module(3, 2)).killed_by_p_u);
  CHECK(boundary_structure_check(PhiModule::zero(WittRing::prime(2, 1))).pass());
}

TEST_CASE("zp shape of S/p + S/p^2") {
  auto R = WittRing::prime(3, 2);
  auto M = diagonal_module(R, {poly(R, {3}), zero(R)}, {one(R), one(R)}, Shape::General, 2, 0, 6);
  auto s = zp_shape(M);
  CHECK_FALSE(s.refuted);
  CHECK(s.certified);
  CHECK(s.exponents == std::vector<int>{1, 2});
}

TEST_CASE("zp shape refutes S/(p,u)") {
  auto s = zp_shape(uk_module(2, 1));
  CHECK(s.refuted);
  CHECK(s.fail_j == 1);
}

TEST_CASE("zp shape recovers hidden exponents under a change of presentation") {
  std::mt19937_64 rng(11);
  auto R = WittRing::prime(2, 3);
  auto rnd = [&](int deg) {
    std::vector<i64> c(deg + 1);
    for (auto& x : c) x = static_cast<i64>(rng() % 8);
    return SeriesElem::from_coeffs(R, 16, c);
  };
  for (auto hidden : std::vector<std::vector<int>>{{1, 1, 3}, {1, 2, 3}, {2, 2}, {3, 3, 1}}) {
    const int g = static_cast<int>(hidden.size());
    // relations U * diag(p^a), U unipotent lower times a permutation
    SeriesMat U(g, std::vector<SeriesElem>(g, zero(R)));
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) U[i][j] = i == j ? one(R) : (i > j ? rnd(2) : zero(R));
    std::rotate(U.begin(), U.begin() + 1, U.end());
    SeriesMat rel(g, std::vector<SeriesElem>(g, zero(R)));
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        i64 pa = 1;
        for (int t = 0; t < hidden[j]; ++t) pa *= 2;
        rel[i][j] = pmul(U[i][j], poly(R, {pa % 8}));
      }
    SeriesMat Phi(g, std::vector<SeriesElem>(g, zero(R)));
    auto M = PhiModule::make(R, g, rel, Phi, Shape::General, 3, 0, 5);
    auto s = zp_shape(M);
    auto want = hidden;
    std::sort(want.begin(), want.end());
    CHECK_FALSE(s.refuted);
    CHECK(s.certified);
    CHECK(s.exponents == want);
  }
}

TEST_CASE("height check") {
  for (i64 p : {2, 3}) {
    auto R = WittRing::prime(p, 2);
    auto E = EisensteinPoly::cyclotomic(R, 1);
    const int h = static_cast<int>(p - 1);
    auto Eh = eisenstein_power(E, h);
    auto M = diagonal_module(R, {zero(R)}, {Eh}, Shape::FreePlusFinite, 0, 0, 4);
    CHECK(height_check({M, h, {{one(R)}}, E}));
    auto M2 = diagonal_module(R, {zero(R)}, {one(R)}, Shape::FreePlusFinite, 0, 0, 4);
    CHECK(height_check({M2, h, {{Eh}}, E}));
    CHECK_FALSE(height_check({M2, h, {{one(R)}}, E}));
  }
}

TEST_CASE("height check fails for phi = E^{h+1} over S/p, any low-degree psi") {
  const i64 p = 3;
  auto R = WittRing::prime(p, 1);
  auto E = EisensteinPoly::cyclotomic(R, 1);
  const int h = 1;
  auto M = diagonal_module(R, {zero(R)}, {eisenstein_power(E, h + 1)}, Shape::FreePlusFinite, 0, 0, 4);
  for (int a = 0; a < 27; ++a) {
    auto psi = poly(R, {a % 3, (a / 3) % 3, a / 9});
    CHECK_FALSE(height_check({M, h, {{psi}}, E}));
  }
}

TEST_CASE("height check modulo relations") {
  // S/(p, u^3) with phi = E^h and psi = 1
  const i64 p = 2;
  auto R = WittRing::prime(p, 1);
  auto E = EisensteinPoly::cyclotomic(R, 1);
  auto M = diagonal_module(R, {SeriesElem::monomial(R, 16, 3)}, {eisenstein_power(E, 1)}, Shape::Finite, 1, 3, 4);
  CHECK(height_check({M, 1, {{one(R)}}, E}));
  CHECK_FALSE(height_check({M, 1, {{zero(R)}}, E}));
}

TEST_CASE("twist map on u-torsion") {
  auto a = twist_u_torsion_iso(uk_module(3, 1));
  CHECK(a.len_source == 1);
  CHECK(a.bijective());
  auto R = WittRing::prime(2, 1);
  auto M = diagonal_module(R, {SeriesElem::monomial(R, 16, 2), SeriesElem::monomial(R, 16, 1)}, {one(R), one(R)},
                           Shape::Finite, 1, 2, 3);
  auto b = twist_u_torsion_iso(M);
  CHECK(b.len_source == 2);
  CHECK(b.len_target == 2);
  CHECK(b.bijective());
  // explicit expansion: phi^*(S/(p,u^k)) = S/(p,u^{pk}) has one-dimensional u-torsion
  auto T = frobenius_twist(M);
  CHECK(T.length() == 2 * 2 + 2 * 1);
  auto F = diagonal_module(R, {zero(R)}, {one(R)}, Shape::FreePlusFinite, 0, 0, 4);
  auto c = twist_u_torsion_iso(F);
  CHECK(c.len_source == 0);
  CHECK(c.len_target == 0);
  CHECK(c.bijective());
}

TEST_CASE("u-torsion is additive on random pairs") {
  std::mt19937_64 rng(5);
  auto R = WittRing::prime(3, 1);
  for (int trial = 0; trial < 10; ++trial) {
    int k1 = 1 + static_cast<int>(rng() % 3), k2 = 1 + static_cast<int>(rng() % 3);
    auto A = diagonal_module(R, {zero(R), SeriesElem::monomial(R, 16, k1)}, {one(R), one(R)}, Shape::FreePlusFinite,
                             1, k1, 2 * k1 + 2);
    auto B = diagonal_module(R, {SeriesElem::monomial(R, 16, k2)}, {poly(R, {0, 1})}, Shape::Finite, 1, k2, k2 + 1);
    auto S = direct_sum(A, B);
    CHECK(u_torsion(S).length() == u_torsion(A).length() + u_torsion(B).length());
  }
}

TEST_CASE("beta and gamma of the annihilator") {
  auto R = WittRing::prime(2, 2);
  // W_2[u]/(u + 2): Z/4 with u = -2, so Ann + (u) = (u, 2) while p^2 is needed to kill it
  auto A = diagonal_module(R, {poly(R, {2, 1})}, {zero(R)}, Shape::Finite, 2, 2, 4);
  auto x = annihilator_exponents(A);
  CHECK(x.beta == 2);
  CHECK(x.gamma == 1);
  // S_2/u^3 + S_2/u: Ann = (u^3)
  auto B = diagonal_module(R, {SeriesElem::monomial(R, 16, 3), SeriesElem::monomial(R, 16, 1)}, {one(R), one(R)},
                           Shape::Finite, 2, 3, 4);
  CHECK(annihilator_exponents(B).beta == 2);
  CHECK(annihilator_exponents(B).gamma == 2);
  auto R1 = WittRing::prime(2, 1);
  auto C = diagonal_module(R1, {SeriesElem::monomial(R1, 16, 2)}, {one(R1)}, Shape::Finite, 1, 2, 3);
  CHECK(annihilator_exponents(C).beta == 1);
  CHECK(annihilator_exponents(C).gamma == 1);
  CHECK(annihilator_exponents(PhiModule::zero(R)).beta == 0);
}
