#include <random>

#include "doctest.h"
#include "prismalab/errors.hpp"
#include "prismalab/witt.hpp"

using namespace prismalab;

namespace {

// the unique root of f congruent to x^p mod p, found by enumeration
WittElem brute_sigma_of_x(const WittRingPtr& R) {
  WittElem xp = R->pow(R->gen(), R->p());
  WittElem found;
  int count = 0;
  for (const auto& y : R->enumerate()) {
    WittElem fy = R->zero(), t = R->one();
    for (int i = 0; i <= R->m(); ++i) {
      fy = fy + R->scalar(R->f()[i]) * t;
      t = t * y;
    }
    if (!fy.is_zero()) continue;
    bool congruent = true;
    for (int i = 0; i < R->m(); ++i) congruent &= (y.c[i] - xp.c[i]) % R->p() == 0;
    if (congruent) {
      found = y;
      ++count;
    }
  }
  REQUIRE(count == 1);
  return found;
}

}  // namespace

TEST_CASE("sigma of the generator over W_2(F_4)") {
  auto R = WittRing::make(2, 2, 2, {1, 1, 1});
  WittElem s = R->sigma(R->gen());
  CHECK(s == R->elem({3, 3}));
  CHECK(s == brute_sigma_of_x(R));
}

TEST_CASE("sigma is an involution on W_2(F_4)") {
  auto R = WittRing::make(2, 2, 2, {1, 1, 1});
  for (const auto& x : R->enumerate()) CHECK(R->sigma(R->sigma(x)) == x);
}

TEST_CASE("sigma matches enumeration for several rings") {
  for (auto [p, n, f] : std::vector<std::tuple<int, int, std::vector<i64>>>{
           {2, 3, {1, 1, 1}}, {3, 2, {1, 0, 1}}, {2, 2, {1, 1, 0, 1}}, {5, 1, {2, 0, 1}}}) {
    auto R = WittRing::make(p, n, static_cast<int>(f.size()) - 1, f);
    CHECK(R->sigma(R->gen()) == brute_sigma_of_x(R));
  }
}

TEST_CASE("sigma is the identity for m = 1") {
  auto R = WittRing::prime(7, 3);
  for (i64 a : {0, 1, 5, 100, 342}) CHECK(R->sigma(R->scalar(a)) == R->scalar(a));
}

TEST_CASE("inverse of 4 in Z/9 is 7") {
  auto R = WittRing::prime(3, 2);
  CHECK(R->inv(R->scalar(4)) == R->scalar(7));
  int hits = 0;
  for (i64 b = 0; b < 9; ++b) hits += (4 * b) % 9 == 1 ? static_cast<int>(b) : 0;
  CHECK(hits == 7);
}

TEST_CASE("inverse errors and units") {
  auto R = WittRing::make(3, 3, 2, {1, 0, 1});
  CHECK_THROWS_AS(R->inv(R->scalar(3)), NotAUnit);
  CHECK_THROWS_AS(R->inv(R->zero()), NotAUnit);
  for (const auto& c : R->with_precision(2)->enumerate()) {
    WittElem a = R->one() + R->scalar(3) * R->elem(c.c);
    CHECK(R->inv(a) * a == R->one());
  }
  for (const auto& a : R->enumerate()) {
    if (!a.is_unit()) continue;
    CHECK(R->inv(a) * a == R->one());
  }
}

TEST_CASE("reducible f is rejected") {
  CHECK_THROWS_AS(WittRing::make(2, 2, 2, {1, 0, 1}), InvalidRing);
  CHECK_THROWS_AS(WittRing::make(3, 1, 2, {2, 0, 1}) /* x^2 - 1 */, InvalidRing);
  CHECK_THROWS_AS(WittRing::make(4, 1, 1, {0, 1}), InvalidRing);
}

TEST_CASE("irreducibility agrees with root and factor search") {
  // degree <= 3 polynomials over F_p are irreducible iff they have no root
  for (i64 p : {2, 3, 5}) {
    for (int m = 2; m <= 3; ++m) {
      i64 total = 1;
      for (int i = 0; i < m; ++i) total *= p;
      for (i64 code = 0; code < total; ++code) {
        std::vector<i64> f(m + 1, 0);
        f[m] = 1;
        i64 t = code;
        for (int i = 0; i < m; ++i) {
          f[i] = t % p;
          t /= p;
        }
        bool root = false;
        for (i64 x = 0; x < p; ++x) {
          i64 v = 0, xp = 1;
          for (int i = 0; i <= m; ++i) {
            v = (v + f[i] * xp) % p;
            xp = xp * x % p;
          }
          root |= v == 0;
        }
        CHECK(fp_poly::irreducible(f, p) == !root);
      }
    }
  }
}

TEST_CASE("residue field picks an irreducible polynomial") {
  auto F = WittRing::residue_field(2, 3);
  CHECK(F->m() == 3);
  CHECK(F->f() == std::vector<i64>{1, 1, 0, 1});
  CHECK(WittRing::residue_field(3, 2)->f() == std::vector<i64>{1, 0, 1});
}

TEST_CASE("sigma is additive, multiplicative and has order m") {
  std::mt19937_64 rng(11);
  auto R = WittRing::make(3, 3, 3, {1, 2, 0, 1});
  auto rand_elem = [&] {
    std::vector<i64> c(3);
    for (auto& x : c) x = static_cast<i64>(rng() % 27);
    return R->elem(c);
  };
  for (int t = 0; t < 1000; ++t) {
    WittElem a = rand_elem(), b = rand_elem();
    CHECK(R->sigma(a + b) == R->sigma(a) + R->sigma(b));
    CHECK(R->sigma(a * b) == R->sigma(a) * R->sigma(b));
  }
  for (int t = 0; t < 50; ++t) {
    WittElem a = rand_elem();
    CHECK(R->sigma_pow(a, 3) == a);
    WittElem s = R->sigma(a), ap = R->pow(a, 3);
    for (int i = 0; i < 3; ++i) CHECK((s.c[i] - ap.c[i]) % 3 == 0);
  }
}

TEST_CASE("with_precision reinterprets f") {
  auto R = WittRing::make(2, 1, 2, {1, 1, 1});
  auto R3 = R->with_precision(3);
  CHECK(R3->n() == 3);
  CHECK(R3->same_field(*R));
  CHECK(R3->sigma(R3->sigma(R3->gen())) == R3->gen());
}
