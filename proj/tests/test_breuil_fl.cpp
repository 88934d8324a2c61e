#include "doctest.h"
#include "fixtures.hpp"
#include "prismalab/breuil.hpp"
#include "prismalab/errors.hpp"
#include "prismalab/fl.hpp"
#include "prismalab/residual.hpp"

using namespace prismalab;

namespace {

EisensteinPoly unramified_E(i64 p) { return EisensteinPoly::explicit_ints(WittRing::prime(p, 2), {-p, 1}); }

EisensteinPoly cyclo_E(i64 p) { return EisensteinPoly::cyclotomic(WittRing::prime(p, 2), 1); }

// rank-1 Kisin module mod p with phi(e) = u^k e
KisinModule rank_one(const EisensteinPoly& E, int h, int k) {
  auto R = WittRing::prime(E.E.ring()->p(), 1);
  auto M = diagonal_module(R, {SeriesElem(R, 32)}, {SeriesElem::monomial(R, 32, k)}, Shape::FreePlusFinite, 0, 0, 32);
  KisinModule K;
  K.M = M;
  K.h = h;
  K.E = E;
  return K;
}

WittVec vec(const WittRingPtr& R, std::vector<i64> c) {
  WittVec v;
  for (i64 x : c) v.push_back(R->scalar(x));
  return v;
}

// rank one over W_1 with Fil^j = M for j <= t, Fil^{t+1} = 0, phi_t = unit, phi_j = 0 for j < t
FLModule twist(i64 p, int h, int t) {
  auto R = WittRing::prime(p, 1);
  std::vector<std::vector<WittVec>> fil(h + 1), phis(h + 1);
  for (int j = 0; j <= t; ++j) {
    fil[j].push_back(vec(R, {1}));
    phis[j].push_back(vec(R, {j == t ? 1 : 0}));
  }
  return FLModule::make(R, {1}, h, fil, phis);
}

EtalePhiModule etale(i64 p, std::vector<std::vector<i64>> A) {
  auto k = WittRing::prime(p, 1);
  std::vector<std::vector<WittElem>> M;
  for (auto& row : A) {
    M.emplace_back();
    for (i64 x : row) M.back().push_back(k->scalar(x));
  }
  return EtalePhiModule::make(k, M);
}

}  // namespace

TEST_CASE("breuil ring needs E to precision 2") {
  auto E1 = EisensteinPoly::explicit_ints(WittRing::prime(3, 1), {-3, 1});
  CHECK_THROWS_AS(breuil_ring(E1), InsufficientPrecision);
  auto S = breuil_ring(unramified_E(3), 2);
  CHECK(S->D() == 27);
  CHECK(S->K() == 1);
}

TEST_CASE("rank one phi(e)=e gives Fil^h = Fil^h S e") {
  for (i64 p : {3, 5}) {
    for (auto E : {unramified_E(p), cyclo_E(p)}) {
      for (int h = 1; h * E.e <= p - 1; ++h) {
        auto B = kisin_to_breuil(rank_one(E, h, 0), 2);
        auto chk = is_breuil_module(B);
        CHECK_MESSAGE(chk.ok, chk.axiom);
        const auto& S = B.S;
        const int eh = E.e * h;
        CHECK_FALSE(B.in_fil(S->u_pow(eh - 1) * dpvec_unit(S, 1, 0)));
        CHECK(B.in_fil(S->u_pow(eh) * dpvec_unit(S, 1, 0)));
        for (int l = eh; l < eh + 3 * E.e; ++l) {
          DpElem s = S->basis(l) + S->basis(l + 1);
          CHECK(B.phi_h(s * dpvec_unit(S, 1, 0)) == DpVec{S->phi_div_modp(s, h)});
        }
      }
    }
  }
}

TEST_CASE("rank one phi(e)=u^{eh} e puts e in the filtration") {
  for (auto E : {unramified_E(3), cyclo_E(3), unramified_E(5)}) {
    const int h = 1;
    auto B = kisin_to_breuil(rank_one(E, h, E.e * h), 2);
    CHECK(B.in_fil(dpvec_unit(B.S, 1, 0)));
    auto chk = is_breuil_module(B);
    CHECK_MESSAGE(chk.ok, chk.axiom);
  }
}

TEST_CASE("scaling phi_h by u breaks generation") {
  auto B = kisin_to_breuil(rank_one(unramified_E(3), 1, 0), 2);
  DpElem u = B.S->u_pow(1);
  std::vector<DpVec> pf, pe;
  for (const auto& v : B.phi_fil) pf.push_back(u * v);
  for (const auto& v : B.phi_eh) pe.push_back(u * v);
  auto B2 = BreuilModule::make(B.S, B.r, B.h, B.fil, pf, pe);
  auto chk = is_breuil_module(B2);
  CHECK_FALSE(chk.ok);
  CHECK(chk.axiom == "generation");
}

TEST_CASE("zero Breuil module") {
  auto S = breuil_ring(unramified_E(3), 1);
  auto B = BreuilModule::make(S, 0, 1, {}, {}, {});
  CHECK(is_breuil_module(B).ok);
  KisinModule K;
  K.M = PhiModule::zero(WittRing::prime(3, 1));
  K.E = unramified_E(3);
  CHECK(kisin_to_breuil(K, 1).r == 0);
}

TEST_CASE("inconsistent phi_h values are rejected") {
  auto B = kisin_to_breuil(rank_one(unramified_E(5), 1, 1), 2);
  REQUIRE(B.fil.size() == 1);
  // u times a generator, with a value other than phi(u) phi_h(generator) = 0
  auto fil = B.fil;
  auto pf = B.phi_fil;
  fil.push_back(B.S->u_pow(1) * fil[0]);
  pf.push_back(dpvec_unit(B.S, 1, 0));
  auto B2 = BreuilModule::make(B.S, B.r, B.h, fil, pf, B.phi_eh);
  auto chk = is_breuil_module(B2);
  CHECK_FALSE(chk.ok);
  CHECK(chk.axiom == "well_defined");
}

TEST_CASE("kisin_to_breuil is additive") {
  auto E = cyclo_E(5);
  auto K1 = rank_one(E, 1, 0), K2 = rank_one(E, 1, 4);
  KisinModule K;
  K.M = direct_sum(K1.M, K2.M);
  K.h = 1;
  K.E = E;
  auto B = kisin_to_breuil(K, 1);
  auto Bs = breuil_direct_sum(kisin_to_breuil(K1, 1), kisin_to_breuil(K2, 1));
  CHECK(is_breuil_module(B).ok);
  CHECK(is_breuil_module(Bs).ok);
  // same filtration and the same phi_h on it
  for (const auto& g : B.fil) {
    REQUIRE(Bs.in_fil(g));
    CHECK(Bs.phi_h(g) == B.phi_h(g));
  }
  for (const auto& g : Bs.fil) {
    REQUIRE(B.in_fil(g));
    CHECK(Bs.phi_h(g) == B.phi_h(g));
  }
}

TEST_CASE("u-torsion Kisin modules are refused") {
  auto R = WittRing::prime(3, 1);
  auto M = diagonal_module(R, {SeriesElem::monomial(R, 16, 2)}, {SeriesElem::monomial(R, 16, 0)}, Shape::Finite, 1, 2, 3);
  KisinModule K;
  K.M = M;
  K.E = unramified_E(3);
  CHECK_THROWS_AS(kisin_to_breuil(K, 1), HasUTorsion);
}

TEST_CASE("p = 2 divided Frobenius is out of range of the truncation") {
  auto S = breuil_ring(EisensteinPoly::explicit_ints(WittRing::prime(2, 2), {-2, 1}), 2);
  CHECK_THROWS_AS(BreuilModule::make(S, 1, 1, {}, {}, {dpvec_unit(S, 1, 0)}), PrecisionTooLow);
}

TEST_CASE("FL axioms on small modules") {
  auto R = WittRing::prime(3, 1);
  CHECK(is_fl_module(twist(3, 1, 0)).ok);
  // Fil^1 = M with phi_1 = 0
  auto bad = FLModule::make(R, {1}, 1, {{vec(R, {1})}, {vec(R, {1})}}, {{vec(R, {0})}, {vec(R, {0})}});
  auto chk = is_fl_module(bad);
  CHECK_FALSE(chk.ok);
  CHECK(chk.axiom == "axiom3");
  CHECK_FALSE(fl_criterion(bad, 1));
  // phi_0 != p phi_1 on Fil^1
  auto bad2 = FLModule::make(R, {1}, 1, {{vec(R, {1})}, {vec(R, {1})}}, {{vec(R, {1})}, {vec(R, {1})}});
  CHECK(is_fl_module(bad2).axiom == "axiom2");
  // Fil^1 = pM inside W_2 is not a direct summand
  auto R2 = WittRing::prime(3, 2);
  auto w2 = FLModule::make(R2, {2}, 1, {{vec(R2, {1})}, {vec(R2, {3})}}, {{vec(R2, {1})}, {vec(R2, {1})}});
  CHECK(is_fl_module(w2).axiom == "summand");
  // phi_1 on pM forced by axiom (2) cannot respect p (pM) = 0 either
  auto w2b = FLModule::make(R2, {2}, 1, {{vec(R2, {1})}, {}}, {{vec(R2, {1})}, {}});
  CHECK(is_fl_module(w2b).ok);
}

TEST_CASE("FL well-definedness over W_2") {
  auto R = WittRing::prime(2, 2);
  // M = W_2 + W_2/2: 2 e_2 = 0 forces 2 phi_0(e_2) = 0
  auto M = FLModule::make(R, {2, 1}, 0, {{vec(R, {1, 0}), vec(R, {0, 1})}}, {{vec(R, {0, 1}), vec(R, {1, 0})}});
  CHECK(is_fl_module(M).axiom == "well_defined");
  auto M2 = FLModule::make(R, {2, 1}, 0, {{vec(R, {1, 0}), vec(R, {0, 1})}}, {{vec(R, {0, 1}), vec(R, {2, 0})}});
  CHECK(is_fl_module(M2).axiom == "axiom3");
  auto M3 = FLModule::make(R, {2, 1}, 0, {{vec(R, {1, 0}), vec(R, {0, 1})}}, {{vec(R, {1, 1}), vec(R, {0, 1})}});
  CHECK(is_fl_module(M3).ok);
}

TEST_CASE("fl_to_breuil on the two basic shapes") {
  for (i64 p : {3, 5}) {
    auto mult = twist(p, 1, 0);
    auto B = fl_to_breuil(mult, 1);
    auto chk = is_breuil_module(B);
    CHECK_MESSAGE(chk.ok, chk.axiom);
    CHECK_FALSE(B.in_fil(dpvec_unit(B.S, 1, 0)));
    for (int h = 1; h <= 2; ++h) {
      auto tate = twist(p, h, h);
      REQUIRE(is_fl_module(tate).ok);
      auto Bt = fl_to_breuil(tate, 1);
      auto c2 = is_breuil_module(Bt);
      CHECK_MESSAGE(c2.ok, c2.axiom);
      CHECK(Bt.in_fil(dpvec_unit(Bt.S, 1, 0)));
      CHECK(Bt.phi_h(dpvec_unit(Bt.S, 1, 0)) == dpvec_unit(Bt.S, 1, 0));
    }
    auto sum = fl_direct_sum(mult, twist(p, 1, 1));
    CHECK(is_fl_module(sum).ok);
    auto Bs = fl_to_breuil(sum, 1);
    CHECK(is_breuil_module(Bs).ok);
    auto Bsum = breuil_direct_sum(fl_to_breuil(mult, 1), fl_to_breuil(twist(p, 1, 1), 1));
    for (int k = 0; k < 2; ++k) {
      DpVec ek = dpvec_unit(Bs.S, 2, k);
      CHECK(Bs.in_fil(ek) == Bsum.in_fil(ek));
    }
    for (const auto& g : Bs.fil) CHECK(Bs.phi_h(g) == Bsum.phi_h(g));
  }
}

TEST_CASE("a wrong connection breaks the Frobenius square") {
  auto B = fl_to_breuil(twist(5, 1, 0), 1);
  std::vector<DpVec> nab{B.S->one() * dpvec_unit(B.S, 1, 0)};
  auto B2 = BreuilModule::make(B.S, B.r, B.h, B.fil, B.phi_fil, B.phi_eh, nab);
  auto chk = is_breuil_module(B2);
  CHECK_FALSE(chk.ok);
  CHECK(chk.axiom == "phi_nabla");
}

TEST_CASE("fl_criterion agrees with the direct FL check") {
  std::mt19937_64 rng(77);
  int agree = 0, positives = 0;
  for (int t = 0; t < 30; ++t) {
    i64 p = t % 2 ? 5 : 3;
    int m = 1 + static_cast<int>(rng() % 2);
    int d = 1 + static_cast<int>(rng() % 3);
    int h = 1 + static_cast<int>(rng() % 2);
    auto M = fixtures::random_fl_candidate(p, m, d, h, rng);
    bool direct = is_fl_module(M).ok;
    positives += direct;
    bool crit = fl_criterion(M, 1);
    agree += direct == crit;
    CHECK(direct == crit);
    if (direct) CHECK(is_breuil_module(fl_to_breuil(M, 1)).ok);
  }
  CHECK(agree == 30);
  CHECK(positives > 0);
  CHECK(positives < 30);
}

TEST_CASE("boundary divided Frobenius") {
  for (i64 p : {2, 3, 5})
    for (int e = 1; e <= p - 1; ++e) {
      if ((p - 1) % e) continue;
      auto r = boundary_divided_frobenius(p, e);
      CHECK_MESSAGE(r.ok, "p=" << p << " e=" << e);
      CHECK(r.closed_form.has_value() == (p >= 3));
      CHECK(r.expected.is_zero() == (e > 1));
    }
  CHECK_THROWS_AS(boundary_divided_frobenius(5, 3), BadRamification);
}

TEST_CASE("residual module for e = 1") {
  for (i64 p : {3, 5}) {
    auto R = residual_module(etale(p, {{1}}), 1, 2);
    REQUIRE(R.breuil);
    auto chk = is_breuil_module(*R.breuil);
    CHECK_MESSAGE(chk.ok, chk.axiom << " " << chk.detail);
    const auto& S = R.S;
    DpElem c = S->c1(), cp = S->one();
    for (int t = 0; t < p - 1; ++t) cp = cp * c;
    CHECK(R.breuil->phi_h(dpvec_unit(S, 1, 0)) == DpVec{cp});
    CHECK(R.breuil->apply_nabla(dpvec_unit(S, 1, 0)) == DpVec{S->u_pow(static_cast<int>(p - 1)) * dp_inverse(c)});
    CHECK(unramified_realization(R).dims.back() == 1);
    CHECK(R.torsion_basis == R.formula_basis);
    CHECK(static_cast<int>(R.torsion_basis.size()) == S->D() - p);

    auto R2 = residual_module(etale(p, {{0, 1}, {1, 0}}), 1, 2);
    CHECK(is_breuil_module(*R2.breuil).ok);
    CHECK(R2.length_over_k() == 2 * static_cast<i64>(R2.torsion_basis.size()));
    auto fp = unramified_realization(R2);
    CHECK(fp.dims.back() == 2);
  }
}

TEST_CASE("residual realization for p = 2") {
  auto R = residual_module(etale(2, {{0, 1}, {1, 1}}), 1, 2);
  CHECK_FALSE(R.breuil.has_value());
  auto fp = unramified_realization(R);
  CHECK(fp.t <= 4);
  CHECK(fp.dims.back() == 2);
  CHECK(enumerate_fixed_dimension(R.residue_frobenius, 2, fp.t) == 2);
}

TEST_CASE("residual module for e > 1") {
  for (auto [p, e] : std::vector<std::pair<i64, int>>{{3, 2}, {5, 2}, {5, 4}}) {
    auto R = residual_module(etale(p, {{1}}), e, 1);
    CHECK(R.phi_vanishes);
    CHECK_FALSE(R.breuil.has_value());
    CHECK(R.torsion_basis == R.formula_basis);
    CHECK(static_cast<int>(R.torsion_basis.size()) < R.S->D() - p);
    CHECK_THROWS_AS(unramified_realization(R), BadRamification);
  }
  CHECK_THROWS_AS(residual_module(etale(5, {{1}}), 3), BadRamification);
}
