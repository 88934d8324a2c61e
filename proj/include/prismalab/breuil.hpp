#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prismalab/dp.hpp"
#include "prismalab/phi_module.hpp"

namespace prismalab {

using DpVec = std::vector<DpElem>;

DpVec dpvec_zero(const DpRingPtr& S, int r);
DpVec dpvec_unit(const DpRingPtr& S, int r, int k);
DpVec operator+(const DpVec& a, const DpVec& b);
DpVec operator-(const DpVec& a, const DpVec& b);
DpVec operator*(const DpElem& s, const DpVec& v);
bool dpvec_is_zero(const DpVec& v);

constexpr int kDefaultDz = 3;

// S_1 truncated after the divided-power variables gamma_{p^i}(E), i <= Dz: D = e p^{Dz+1}.
// E must be known to p-adic precision >= 2 (for c1).
DpRingPtr breuil_ring(const EisensteinPoly& E, int Dz = kDefaultDz);

// Breuil module over the truncated S_1, free on e_1..e_r.
// Fil^h M = Fil^h S . M + S{fil}; phi_h is fixed by its values on fil and on E^h e_k.
class BreuilModule {
 public:
  DpRingPtr S;
  int r = 0;
  int h = 0;
  std::vector<DpVec> fil;
  std::vector<DpVec> phi_fil;
  std::vector<DpVec> phi_eh;  // phi_h(E^h e_k)
  std::optional<std::vector<DpVec>> nabla;  // nabla(e_k)

  static BreuilModule make(DpRingPtr S, int r, int h, std::vector<DpVec> fil, std::vector<DpVec> phi_fil,
                           std::vector<DpVec> phi_eh, std::optional<std::vector<DpVec>> nabla = std::nullopt);

  bool in_fil(const DpVec& x) const;
  // NotInFiltration outside Fil^h M
  DpVec phi_h(const DpVec& x) const;
  // phi(x) = c1^{-h} phi_h(E^h x)
  DpVec frobenius(const DpVec& x) const;
  DpVec apply_nabla(const DpVec& x) const;
  int quotient_dim() const;  // F_p-dimension of M / Fil^h S M
  // coordinates in M / Fil^h S M and the image of Fil^h M there
  IVec qcoords(const DpVec& x) const;
  const RowSpan& fil_quotient() const { return qspan_; }
  std::string describe() const;

 private:
  void prepare();

  std::vector<DpVec> rows_;       // b_l x^j fil_t, l < eh
  std::vector<DpVec> row_images_; // phi(b_l x^j) phi_fil_t
  RowSpan qspan_;
  DpElem cinv_h_;
};

struct BreuilCheck {
  bool ok = true;
  std::string axiom;  // first failing axiom
  std::string detail;
};

// well_defined, fil_contains_FilS_M (structural), functional_equation, generation, and when a
// connection is present: leibniz, griffiths (E nabla Fil in Fil), phi_nabla
BreuilCheck is_breuil_module(const BreuilModule& B);
bool phi_h_well_defined(const BreuilModule& B, std::string* detail = nullptr);
bool phi_h_generates(const BreuilModule& B);

BreuilModule breuil_direct_sum(const BreuilModule& A, const BreuilModule& B);

// M = S (x)_{phi} K for a u-torsion-free Kisin module mod p; HasUTorsion otherwise
BreuilModule kisin_to_breuil(const KisinModule& K, int Dz = kDefaultDz);

}  // namespace prismalab
