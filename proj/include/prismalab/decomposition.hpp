#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "prismalab/breuil.hpp"
#include "prismalab/fl.hpp"
#include "prismalab/phi_module.hpp"

namespace prismalab {

// Section [.] : (M/uM)^m -> M for a finite phi-module over S_1.
struct Section {
  IMat basis;   // rows: basis of (M/uM)^m, reduced modulo uF + relations
  IMat values;  // rows: [x] for each basis row, reduced modulo the relations
  int T = 0;    // Frobenius iterations used: dim(M/uM) + ceil(log_p b)
};

// seed != 0 perturbs the lifts by random elements that must not change the output
Section mult_section(const PhiModule& M, std::uint64_t seed = 0);

struct PhiSplit {
  Section section;
  SubQuotient mult_sq;
  SubQuotient nilp_sq;
  PhiModule mult;
  PhiModule nilp;
  i64 len = 0, len_mult = 0, len_nilp = 0;
  bool phi_stable = false;     // phi preserves the multiplicative submodule
  bool mult_surjective = false;  // S phi(M_mult) = M_mult
  bool nilp_nilpotent = false;   // phi^L = 0 on M_nilp / u
  bool ok() const { return phi_stable && mult_surjective && nilp_nilpotent && len == len_mult + len_nilp; }
};

PhiSplit split_phi_module(const PhiModule& M, std::uint64_t seed = 0);

// f: M -> M2 given on ambients (row convention); true when f is a phi-map and f(M_mult) lies in M2_mult
bool split_functorial(const PhiModule& M, const PhiModule& M2, const IMat& f);

struct BreuilSplit {
  std::vector<DpVec> section;  // S-basis of the multiplicative submodule
  int T = 0;
  std::optional<BreuilModule> mult;
  std::optional<BreuilModule> nilp;
  bool phi_stable = false;
  bool mult_bijective = false;   // phi bijective on M_mult / I_+
  bool nilp_nilpotent = false;   // phi nilpotent on M_nilp / I_+
  bool fil_trivial = false;      // Fil^h M meets M_mult in Fil^h S M_mult
  bool ok() const { return phi_stable && mult_bijective && nilp_nilpotent && fil_trivial; }
};

BreuilSplit split_breuil(const BreuilModule& B, std::uint64_t seed = 0);
// the S-span of gens equals the multiplicative part of the split
bool same_submodule(const BreuilModule& B, const std::vector<DpVec>& section, const std::vector<DpVec>& gens);
// canonicity: an alternative phi-stable submodule with bijective Frobenius mod I_+ and nilpotent quotient
// coincides with the split
bool split_breuil_canonical(const BreuilModule& B, const std::vector<DpVec>& alt);

struct FLSplit {
  IMat mult_basis;  // F_p-rows of M^m in the coordinates of M
  FLModule mult;
  FLModule nilp;
  bool fil_trivial = false;    // Fil^1 M^m = 0
  bool phi0_bijective = false;
  bool phi0_nilpotent = false;
  bool ok() const { return fil_trivial && phi0_bijective && phi0_nilpotent; }
};

// NotFL unless is_fl_module holds; mod p only
FLSplit split_fl(const FLModule& M);

// S (x) M^m equals the multiplicative part of fl_to_breuil(M)
bool check_split_compat(const FLModule& M, int Dz = 1);

}  // namespace prismalab
