#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "prismalab/phi_module.hpp"

namespace prismalab {

// d = ((u+1)^{p^n} - 1) / ((u+1)^{p^{n-1}} - 1), e = p^{n-1}(p-1)
struct CycloInstance {
  i64 p = 2;
  int n = 1;
  int e = 1;
  i64 q = 1;  // p^{n-1}
  int slack = 0;
  WittRingPtr R;  // W_{n + slack}(F_p)
  EisensteinPoly d;
  SeriesElem q_n;  // (u+1)^{p^n} - 1
  SeriesElem g;    // (u+1)^{p^{n-1}} - 1
  int B = 0;       // degree bound for the kernel computation
  int D = 0;       // divided-power truncation for J

  // B, D < 0 pick the smallest admissible values
  static CycloInstance make(i64 p, int n, int B = -1, int D = -1, int slack = 0);
  bool d_identity() const;  // d g = q_n exactly
  int min_B() const;
  int min_D() const;
};

struct KernelReport {
  int m = 0;
  int B = 0;
  std::vector<SeriesElem> gens;  // Howell generators of the kernel
  i64 length = 0;                // log_p of the kernel order
  bool generated_by_g = false;   // kernel = Z/p^m g
  bool band_empty = false;       // no kernel element has degree in (B - e, B]
  bool closed = false;           // phi(g) - d g = 0 exactly
  bool pass() const { return generated_by_g && band_empty && closed && length == m; }
};

// kernel of f -> phi(f) - d f on polynomials of degree <= B over W_m; BoundaryContamination on a nonempty band
KernelReport ker_phi_minus_d(const CycloInstance& inst, int m);

struct H2Report {
  PhiModule M;       // S/(g, p^n) with phi = id
  i64 length = 0;
  i64 torsion_length = 0;
  int alpha = 0;
  int i = 2;
  int bound_num = 0;  // e (i - 1)
  int bound_den = 0;  // p - 1
  bool equal = false;
  AnnInclusion inclusion;
  std::optional<BoundaryReport> boundary;  // n = 1
  int fixed_dim = 0;                       // F_p-dimension of phi-fixed points mod p
  bool pass() const;
};

H2Report h2_torsion_report(const CycloInstance& inst);

struct JReport {
  int mu = 0;
  int mu_check = 0;  // at D + e
  int D = 0;
  int K = 0;  // internal p-precision
};

// minimal number of generators of J = {x in S : p^n | x q_n}; Unstable if D -> D + e changes it
JReport ideal_j_mingens(const CycloInstance& inst);

struct SharpnessRow {
  i64 p = 0;
  int n = 0;
  int e = 0;
  int i = 2;
  int alpha = 0;
  int bound_num = 0;
  int bound_den = 0;
  bool equal = false;
  bool pass = false;
  double millis = 0;
};

std::vector<SharpnessRow> sharpness_report(const std::vector<std::pair<i64, int>>& range);

}  // namespace prismalab
