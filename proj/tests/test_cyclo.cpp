#include "doctest.h"
#include "prismalab/cyclo.hpp"
#include "prismalab/errors.hpp"

using namespace prismalab;

TEST_CASE("cyclotomic instance identities") {
  for (auto [p, n] : std::vector<std::pair<i64, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
    auto I = CycloInstance::make(p, n);
    CHECK(I.e == ipow(p, n - 1) * (p - 1));
    CHECK(I.d_identity());
  }
}

TEST_CASE("kernel of phi - d") {
  auto check = [](i64 p, int n, int m, std::vector<i64> expect) {
    auto I = CycloInstance::make(p, n);
    auto k = ker_phi_minus_d(I, m);
    CHECK(k.pass());
    REQUIRE(!k.gens.empty());
    auto R = I.R->with_precision(m);
    CHECK(k.gens[0] == SeriesElem::from_coeffs(R, I.B + 1, expect));
  };
  check(2, 1, 1, {0, 1});
  check(3, 1, 1, {0, 1});
  check(2, 2, 2, {0, 2, 1});
  check(2, 2, 1, {0, 0, 1});
  check(3, 2, 2, {0, 3, 3, 1});
}

TEST_CASE("kernel bound too small") {
  auto I = CycloInstance::make(2, 1, 1);
  CHECK_THROWS_AS(ker_phi_minus_d(I, 1), BoundTooSmall);
}

TEST_CASE("torsion annihilator meets the bound") {
  for (auto [p, n] : std::vector<std::pair<i64, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}}) {
    CAPTURE(p);
    CAPTURE(n);
    auto I = CycloInstance::make(p, n);
    auto h = h2_torsion_report(I);
    CHECK(h.alpha == I.q);
    CHECK(h.equal);
    CHECK(h.torsion_length == h.length);
    CHECK(h.fixed_dim == 1);
    CHECK(h.pass());
  }
}

TEST_CASE("sharpness rows") {
  auto rows = sharpness_report({{2, 1}, {3, 1}});
  REQUIRE(rows.size() == 2);
  for (auto& r : rows) CHECK(r.pass);
}

TEST_CASE("minimal generators of J") {
  CHECK(ideal_j_mingens(CycloInstance::make(2, 1)).mu == 1);
  CHECK(ideal_j_mingens(CycloInstance::make(3, 1)).mu >= 2);
  CHECK(ideal_j_mingens(CycloInstance::make(2, 2)).mu >= 2);
}
