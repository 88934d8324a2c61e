#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prismalab/linmod.hpp"
#include "prismalab/series.hpp"

namespace prismalab {

using SeriesMat = std::vector<std::vector<SeriesElem>>;  // [row][col]

enum class Shape { Finite, FreePlusFinite, General };

// Finitely presented phi-module over S_n = W_n[[u]]: g generators, relation columns,
// phi(e_j) = sum_i Phi[i][j] e_i.
class PhiModule {
 public:
  WittRingPtr R;
  int g = 0;
  SeriesMat rel;  // g rows, one column per relation
  SeriesMat Phi;  // g x g
  Shape shape = Shape::General;
  int kill_a = 0;  // Finite: p^a and u^b kill the module
  int kill_b = 0;  // Finite or FreePlusFinite: u^b kills the torsion part
  int N = 8;       // working u-precision

  // validates phi and the kill certificate; throws IllFormedPhi / PrecisionTooLow
  static PhiModule make(WittRingPtr R, int g, SeriesMat rel, SeriesMat Phi, Shape shape, int a, int b, int N);
  static PhiModule zero(WittRingPtr R);

  int num_rel() const { return g == 0 ? 0 : static_cast<int>(rel[0].size()); }
  Ambient ambient(int N2 = -1) const { return Ambient(R, g, N2 > 0 ? N2 : N); }
  // Z/p^n-span of the relations (all u^i x^j multiples) in the ambient of precision N2
  RowSpan relation_span(int N2 = -1) const;
  IMat relation_rows(int N2 = -1) const;
  IMat phi_matrix(int N2 = -1) const;
  SubQuotient as_subquotient(int N2 = -1) const;
  bool is_finite() const { return shape == Shape::Finite; }
  // length over Z_p (log_p of the cardinality); finite modules only
  i64 length() const;
  std::string describe() const;
};

// S e_1 + ... + S e_g with one relation rel[k] e_k per nonzero entry and phi(e_k) = phi[k] e_k
PhiModule diagonal_module(WittRingPtr R, const std::vector<SeriesElem>& rel, const std::vector<SeriesElem>& phi,
                          Shape shape, int a, int b, int N);
PhiModule direct_sum(const PhiModule& A, const PhiModule& B);
// presentation of a finite subquotient killed by (p^a, u^b)
PhiModule present(const SubQuotient& sq, int a, int b);

struct KisinModule {
  PhiModule M;
  int h = 1;
  SeriesMat Psi;
  EisensteinPoly E;
};

PhiModule u_torsion(const PhiModule& M);
// the alpha with Ann(M) + (p) = (u^alpha, p)
int annihilator_alpha(const PhiModule& M);
// beta: least b with p^b M = 0; gamma: Ann(M) + (u) = (u, p^gamma)
struct AnnExponents {
  int beta = 0;
  int gamma = 0;
};
AnnExponents annihilator_exponents(const PhiModule& M);
// alpha with u^alpha M inside pM (the mod p annihilator exponent)
int annihilator_alpha_modp(const PhiModule& M);

struct AnnInclusion {
  bool holds = true;
  int lhs = 0;  // e(i-1) + alpha
  int rhs = 0;  // p alpha
};
AnnInclusion check_ann_inclusion(int alpha, int e, int i, i64 p);

struct BoundaryReport {
  bool killed_by_p_u = false;
  bool phi_bijective = false;
  bool pass() const { return killed_by_p_u && phi_bijective; }
};
BoundaryReport boundary_structure_check(const PhiModule& M);

struct ZpShape {
  bool refuted = false;
  std::vector<int> exponents;  // sorted
  int fail_j = 0;              // refutation: M/p^j has u-torsion
  IVec witness;
  std::vector<i64> lengths;    // length(M/(p^j, u)) for j = 0..n
  bool certified = false;      // full length sequences matched
};
ZpShape zp_shape(const PhiModule& M);

bool height_check(const KisinModule& K);

struct TwistIso {
  i64 len_source = 0;  // length of M[u]
  i64 len_target = 0;  // length of (phi^* M)[u]
  bool lands_in_target = false;
  bool injective = false;
  bool bijective() const { return lands_in_target && injective && len_source == len_target; }
};
TwistIso twist_u_torsion_iso(const PhiModule& M);

// phi^* M = S (x)_{phi,S} M: relations phi(R), linearized Frobenius forgotten
PhiModule frobenius_twist(const PhiModule& M);

// E^k as an exact polynomial
SeriesElem eisenstein_power(const EisensteinPoly& E, int k);

}  // namespace prismalab
