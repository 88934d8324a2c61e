#pragma once

#include <random>
#include <vector>

#include "prismalab/etale.hpp"
#include "prismalab/fl.hpp"
#include "prismalab/phi_module.hpp"

// seeded random objects shared by the suites and the tests
namespace prismalab::gen {

using Rng = std::mt19937_64;

WittElem random_elem(const WittRingPtr& R, Rng& rng);

// filtered candidate over W_1(F_{p^m}): Fil^i spanned by the first f_i vectors of a random basis, phi_i zero
// on Fil^{i+1} and drawn from a random low-rank pool elsewhere (so generation fails part of the time)
FLModule random_fl_candidate(i64 p, int m, int d, int h, Rng& rng);

// finite phi-module over S_1: relations u^{b_k} e_k with b_k in [1, 6], sparse Frobenius entries of
// valuation >= b_i - p b_k
PhiModule random_finite_phi_module(i64 p, int m, int g, Rng& rng);

// (+)_k S_n / p^{a_k} (a_k <= n) under a random change of presentation, phi = 0
PhiModule hidden_shape_module(i64 p, int n, const std::vector<int>& hidden, Rng& rng);
// a module whose reduction mod p has u-torsion: S/(p, u^k) (+) hidden summands
PhiModule planted_torsion_module(i64 p, int n, int k, const std::vector<int>& hidden, Rng& rng);

// invertible d x d matrix over F_{p^m}
EtalePhiModule random_etale(i64 p, int m, int d, Rng& rng);

}  // namespace prismalab::gen
