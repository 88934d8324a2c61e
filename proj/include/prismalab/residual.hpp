#pragma once

#include <optional>
#include <vector>

#include "prismalab/breuil.hpp"
#include "prismalab/etale.hpp"

namespace prismalab {

// phi_i(u^{ep-1}) mod p with e i = p - 1, computed two ways
struct BoundaryPhi {
  i64 p = 0;
  int e = 0;
  int i = 0;
  std::optional<DpElem> closed_form;  // phi_div_modp on u^{ep-1}; p >= 3 only
  DpElem generic;                     // phi(E^{p-1} u^{e-1}) / p^i at precision i + 1, reduced mod p
  DpElem expected;                    // c1^{p-1} for e = 1, 0 otherwise
  bool ok = false;
};

// E = u^e - p; BadRamification unless e divides p - 1
BoundaryPhi boundary_divided_frobenius(i64 p, int e, int Dz = 1, int m = 1);

// Frob^* V (x) S_1[u^p] with its residual divided Frobenius and, for e = 1, its connection
struct ResidualModule {
  EtalePhiModule V;
  int e = 0;
  int h = 0;
  DpRingPtr S;
  std::vector<int> torsion_basis;  // l with b_l in S_1[u^p] (l + p < D)
  std::vector<int> formula_basis;  // the same set from the valuation formula
  std::optional<BreuilModule> breuil;  // e = 1, p >= 3
  IMat residue_frobenius;              // e = 1: phi_h on M / I_+ as an F_p-matrix, row convention
  bool phi_vanishes = false;           // e > 1: phi_i(u^{ep-1}) = 0 certified
  i64 length_over_k() const { return static_cast<i64>(V.d) * static_cast<i64>(torsion_basis.size()); }
};

ResidualModule residual_module(const EtalePhiModule& V, int e, int Dz = kDefaultDz);

// (M / I_+ (x) F_{p^t})^{phi_h = 1}; e = 1 only
FixedPoints unramified_realization(const ResidualModule& M, int t_max = 6);

}  // namespace prismalab
