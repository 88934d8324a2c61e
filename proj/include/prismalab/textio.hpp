#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "prismalab/etale.hpp"
#include "prismalab/fl.hpp"
#include "prismalab/phi_module.hpp"

namespace prismalab {

// One fl generator of Fil^level with its phi_level image.
struct FilEntry {
  int level = 0;
  std::vector<WittElem> gen;
  std::vector<WittElem> image;
  bool operator==(const FilEntry&) const = default;
};

// Line-oriented input document:
//
//   [ring]    p, n, f, modulus, N, E        (E: "cyclo" or a series literal)
//   [module]  kind, rank, shape, a, b, h, exps; rows: relation columns
//   [phi]     rows: Frobenius matrix (rank x rank)
//   [psi]     rows: companion matrix of a Kisin module
//   [fil]     level = i; rows: generator then image (2 rank constants)
//   [check]   name = a, b, ...
//
// Series literals are sums of terms c*u^k with c an integer or [c0, ..., c_{f-1}] over W_n(F_{p^f}).
// '#' starts a comment.
struct Document {
  i64 p = 0;
  int n = 1;
  int f = 1;
  std::vector<i64> modulus;  // monic, low degree first; empty for the default
  int N = 8;
  std::string E;
  std::string kind = "phi";  // phi, kisin, fl, etale, cyclo
  int rank = 0;
  std::string shape = "finite";  // finite, free_plus_finite, general
  int a = 1;
  int b = 0;
  int h = 1;
  std::vector<int> exps;  // fl: M = (+) W / p^{exps[k]}
  SeriesMat rel;
  SeriesMat phi;
  SeriesMat psi;
  std::vector<FilEntry> fil;
  std::vector<std::string> checks;

  WittRingPtr ring() const;
  bool operator==(const Document&) const = default;
};

// ParseError "line L, column C: ..." on malformed input or unresolved references
// N_override > 0 replaces the declared u-precision before rows are read
Document parse_document(std::string_view text, int N_override = -1);
std::string serialize(const Document& doc);

SeriesElem parse_series(const WittRingPtr& R, int N, std::string_view lit);
std::string series_literal(const SeriesElem& s);

PhiModule to_phi_module(const Document& doc);
KisinModule to_kisin_module(const Document& doc);
FLModule to_fl_module(const Document& doc);
EtalePhiModule to_etale_module(const Document& doc);

}  // namespace prismalab
