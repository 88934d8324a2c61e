#include <random>

#include "doctest.h"
#include "prismalab/dp.hpp"
#include "prismalab/errors.hpp"

using namespace prismalab;

namespace {

i64 fact(int q) {
  i64 r = 1;
  for (int i = 2; i <= q; ++i) r *= i;
  return r;
}

}  // namespace

TEST_CASE("structure constants are integral and match factorials") {
  auto R = WittRing::prime(3, 4);
  auto E = EisensteinPoly::cyclotomic(R, 1);
  auto S = DpRing::make(E, 30);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; i + j < 30; ++j) {
      int e = 2;
      i64 num = fact((i + j) / e), den = fact(i / e) * fact(j / e);
      CHECK(num % den == 0);
      CHECK(S->struct_const(i, j) == (num / den) % 81);
    }
}

TEST_CASE("from_series is a ring map and E^q = q! gamma_q(E)") {
  auto R = WittRing::prime(3, 4);
  auto E = EisensteinPoly::cyclotomic(R, 1);
  auto S = DpRing::make(E, 24);
  auto a = SeriesElem::from_coeffs(R, 24, {1, 2, 0, 4}, false);
  auto b = SeriesElem::from_coeffs(R, 24, {5, 0, 7}, false);
  CHECK(S->from_series(a * b) == S->from_series(a) * S->from_series(b));
  DpElem Eq = S->one();
  for (int q = 1; q <= 5; ++q) {
    Eq = Eq * S->E_elem();
    CHECK(Eq == S->gamma(q).scale(R->scalar(fact(q))));
  }
}

TEST_CASE("phi is a ring endomorphism on the truncation") {
  auto R = WittRing::make(2, 3, 2, {1, 1, 1});
  auto E = EisensteinPoly::explicit_ints(R, {2, 2, 1});
  auto S = DpRing::make(E, 20);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    DpElem x = S->zero(), y = S->zero();
    for (auto& c : x.c) c = static_cast<i64>(rng() % 8) * (rng() % 3 == 0);
    for (auto& c : y.c) c = static_cast<i64>(rng() % 8) * (rng() % 3 == 0);
    CHECK(S->phi(x * y) == S->phi(x) * S->phi(y));
    CHECK(S->phi(x + y) == S->phi(x) + S->phi(y));
  }
}

TEST_CASE("c1 for e = 1, p = 3") {
  auto R = WittRing::prime(3, 4);
  auto E = EisensteinPoly::explicit_ints(R, {3, 1});
  auto S = DpRing::make(E, 40, 3);
  DpElem Esq = S->E_elem() * S->E_elem();
  DpElem q = divide_exact_p(S->phi(Esq), 2);
  DpElem c1 = S->c1();
  CHECK(q == reduce_precision(c1 * c1, 1));
  CHECK(c1.coord(0).c[0] % 3 == 1);
  CHECK(s_phi_div(Esq, 2) == q);
}

TEST_CASE("phi_i(E^i) = c1^i") {
  for (int p : {3, 5}) {
    const int K = p + 1;
    auto R = WittRing::prime(p, K + 1);
    auto E = EisensteinPoly::cyclotomic(R, 1);
    auto S = DpRing::make(E, E.e * (p + 8), K);
    DpElem c1 = S->c1();
    DpElem Ei = S->one(), ci = S->one();
    for (int i = 1; i < p; ++i) {
      Ei = Ei * S->E_elem();
      ci = ci * c1;
      CHECK(s_phi_div(Ei, i) == reduce_precision(ci, K - i));
    }
  }
}

TEST_CASE("Fil^r quotient has the length of S/E^r") {
  for (auto [p, n, K] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {5, 1, 2}, {3, 1, 3}}) {
    auto R = WittRing::prime(p, K + 1);
    auto E = EisensteinPoly::cyclotomic(R, n);
    for (int r = 1; r <= p; ++r) {
      auto S = DpRing::make(E, E.e * (r + 2 * p + 6), K);
      i64 total = static_cast<i64>(S->D()) * K;
      CHECK(total - S->fil_span(r).length() == static_cast<i64>(K) * E.e * r);
    }
  }
  // p = 2 is checked mod p
  auto R = WittRing::prime(2, 2);
  auto E = EisensteinPoly::cyclotomic(R, 2);
  for (int r = 1; r <= 2; ++r) {
    auto S = DpRing::make(E, 40, 1);
    CHECK(static_cast<i64>(S->D()) - S->fil_span(r).length() == E.e * r);
  }
}

TEST_CASE("phi(Fil^i) lies in p^i S on random filtered elements") {
  std::mt19937_64 rng(17);
  for (int p : {3, 5}) {
    auto R = WittRing::prime(p, p + 1);
    auto E = EisensteinPoly::cyclotomic(R, 1);
    auto S = DpRing::make(E, E.e * (p + 10), p + 1);
    for (int i = 1; i < p; ++i)
      for (int t = 0; t < 5; ++t) {
        DpElem x = S->zero();
        for (int q = i; q < i + 4; ++q)
          for (int a = 0; a < E.e; ++a) {
            DpElem g = S->mul_u_pow(S->gamma(q), a).scale(R->scalar(static_cast<i64>(rng() % 81)));
            x = x + g;
          }
        CHECK(S->in_fil(x, i));
        DpElem ph = S->phi(x);
        for (i64 c : ph.c) CHECK(c % ipow(p, i) == 0);
        CHECK_NOTHROW(s_phi_div(x, i));
      }
    CHECK_THROWS_AS(s_phi_div(S->one(), 1), NotInFiltration);
  }
}

TEST_CASE("mod p closed-form divided Frobenius matches the generic one") {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}}) {
    auto R = WittRing::prime(p, 6);
    auto E = EisensteinPoly::cyclotomic(R, n);
    int D = E.e * p * p;
    auto S1 = DpRing::make(E, D, 1);
    std::mt19937_64 rng(p * 10 + n);
    for (int h = 0; h < p; ++h) {
      auto Sh = DpRing::make(E, D, h + 1);
      for (int t = 0; t < 4; ++t) {
        DpElem x1 = S1->zero(), xh = Sh->zero();
        for (int l = E.e * h; l < D; ++l) {
          i64 c = static_cast<i64>(rng() % p);
          if (c == 0 || rng() % 2) continue;
          x1.raw(l)[0] = c;
          int q = l / E.e, a = l % E.e;
          xh = xh + Sh->mul_u_pow(Sh->gamma(q), a).scale(Sh->R()->scalar(c));
        }
        DpElem generic = reduce_precision(s_phi_div(xh, h), 1);
        DpElem closed = S1->phi_div_modp(x1, h);
        CHECK(generic.c == closed.c);
      }
    }
  }
}

TEST_CASE("p = 2 divided Frobenius does not descend") {
  auto R = WittRing::prime(2, 3);
  auto E = EisensteinPoly::cyclotomic(R, 1);
  auto S1 = DpRing::make(E, 16, 1);
  CHECK_THROWS_AS(S1->phi_div_modp(S1->basis(2), 1), PrecisionTooLow);
  CHECK(S1->phi_div_modp(S1->basis(0), 0) == S1->one());
}

TEST_CASE("nabla is a derivation") {
  auto R = WittRing::prime(3, 2);
  auto E = EisensteinPoly::cyclotomic(R, 1);
  auto S = DpRing::make(E, 30);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    DpElem x = S->zero(), y = S->zero();
    for (auto& c : x.c) c = static_cast<i64>(rng() % 9) * (rng() % 4 == 0);
    for (auto& c : y.c) c = static_cast<i64>(rng() % 9) * (rng() % 4 == 0);
    DpElem lhs = S->nabla(x * y), rhs = S->nabla(x) * y + x * S->nabla(y);
    // compare below the truncation boundary
    for (int l = 0; l < S->D() - 1; ++l) CHECK(lhs.raw(l)[0] == rhs.raw(l)[0]);
  }
}
