#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prismalab/breuil.hpp"

namespace prismalab {

using WittVec = std::vector<WittElem>;

// Filtered module M = (+)_k W_n / p^{a_k} with divided Frobenii phi_i : Fil^i M -> M, i = 0..h.
// Fil^i is given by generators; phis[i][g] = phi_i(fil[i][g]).
class FLModule {
 public:
  WittRingPtr R;
  int d = 0;
  std::vector<int> a;
  int h = 0;
  std::vector<std::vector<WittVec>> fil;
  std::vector<std::vector<WittVec>> phis;

  static FLModule make(WittRingPtr R, std::vector<int> a, int h, std::vector<std::vector<WittVec>> fil,
                       std::vector<std::vector<WittVec>> phis);

  int coord_dim() const { return d * R->m(); }
  IVec coords(const WittVec& x) const;
  WittVec from_coords(const IVec& v) const;
  IMat relation_rows() const;
  // W-span of fil[i] together with the relations
  RowSpan fil_span(int i) const;
  // phi_i(x), or nullopt when x is not in Fil^i
  std::optional<WittVec> eval_phi(int i, const WittVec& x) const;
  i64 length() const;
  std::string describe() const;
};

struct FLCheck {
  bool ok = true;
  std::string axiom;  // fil0, decreasing, summand, well_defined, axiom2, axiom3
  std::string detail;
};

FLCheck is_fl_module(const FLModule& M);
FLModule fl_direct_sum(const FLModule& A, const FLModule& B);

// S (x) M over S_1 with E = u - p, Fil^h = sum_i Fil^i S (x) Fil^{h-i} M, connection d/du (x) id
BreuilModule fl_to_breuil(const FLModule& M, int Dz = kDefaultDz);
// generation of fl_to_breuil(M) by its phi_h-image
bool fl_criterion(const FLModule& M, int Dz = kDefaultDz);

}  // namespace prismalab
