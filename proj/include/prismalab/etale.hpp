#pragma once

#include <vector>

#include "prismalab/linalg.hpp"
#include "prismalab/phi_module.hpp"
#include "prismalab/witt.hpp"

namespace prismalab {

// Finite-dimensional k-space with a bijective sigma-semilinear phi(e_j) = sum_i A[i][j] e_i.
struct EtalePhiModule {
  WittRingPtr k;  // F_{p^m}
  int d = 0;
  std::vector<std::vector<WittElem>> A;

  // IllFormedPhi when A is not invertible
  static EtalePhiModule make(WittRingPtr k, std::vector<std::vector<WittElem>> A);
  // phi as an F_p-linear matrix on the basis x^j e_k (index k*m + j), row convention
  IMat fp_matrix() const;
};

struct FixedPoints {
  int t = 0;                 // smallest extension degree reaching full dimension
  std::vector<int> dims;     // F_p-dimension of the fixed space over F_{p^s}, s = 1..t
  WittRingPtr field;         // F_{p^t}
  IMat basis;                // rows: fixed vectors, coordinates (b*t + s) on w_b (x) y^s
};

// fixed points of B (x) Frob on W (x) F_{p^t} for an invertible F_p-linear B on W = F_p^D
FixedPoints fp_fixed_points(const IMat& B, i64 p, int t_max);
FixedPoints etale_fixed_points(const EtalePhiModule& V, int t_max);
// F_p-dimension of ker(B^t - 1), computed by enumerating W
int enumerate_fixed_dimension(const IMat& B, i64 p, int t);

// the F_p-linear Frobenius on a module killed by (p, u), on a basis of coordinates outside the relation pivots
IMat boundary_frobenius(const PhiModule& M);

}  // namespace prismalab
