#include "prismalab/generators.hpp"

#include <algorithm>

#include "prismalab/errors.hpp"

namespace prismalab::gen {

namespace {

WittRingPtr field_or_prime(i64 p, int m) { return m == 1 ? WittRing::prime(p, 1) : WittRing::residue_field(p, m); }

SeriesElem random_poly(const WittRingPtr& R, int N, int deg, Rng& rng) {
  SeriesElem s(R, N);
  for (int l = 0; l <= deg; ++l) s.set_coeff(l, random_elem(R, rng));
  return s;
}

SeriesMat mat_product(const SeriesMat& A, const SeriesMat& B, const WittRingPtr& R, int N) {
  const size_t r = A.size(), k = B.size(), c = B.empty() ? 0 : B[0].size();
  SeriesMat C(r, std::vector<SeriesElem>(c, SeriesElem(R, N)));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j)
      for (size_t t = 0; t < k; ++t) C[i][j] = C[i][j] + A[i][t] * B[t][j];
  return C;
}

// unipotent triangular matrix with random low-degree entries, rows rotated so it is not triangular
SeriesMat random_unimodular(const WittRingPtr& R, int g, int N, bool lower, Rng& rng) {
  SeriesMat U(g, std::vector<SeriesElem>(g, SeriesElem(R, N)));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      if (i == j) U[i][j] = SeriesElem::monomial(R, N, 0);
      else if (lower ? i > j : i < j) U[i][j] = random_poly(R, N, 2, rng);
    }
  if (g > 1) std::rotate(U.begin(), U.begin() + static_cast<long>(rng() % static_cast<unsigned>(g)), U.end());
  return U;
}

// relations P diag(D) Q for a diagonal-ish presentation D (g x r)
PhiModule presented(const WittRingPtr& R, int n, SeriesMat D, int N, Rng& rng) {
  const int g = static_cast<int>(D.size());
  const int r = g == 0 ? 0 : static_cast<int>(D[0].size());
  SeriesMat rel = mat_product(mat_product(random_unimodular(R, g, N, true, rng), D, R, N),
                              random_unimodular(R, r, N, false, rng), R, N);
  SeriesMat Phi(g, std::vector<SeriesElem>(g, SeriesElem(R, N)));
  return PhiModule::make(R, g, rel, Phi, Shape::General, n, 0, N);
}

}  // namespace

WittElem random_elem(const WittRingPtr& R, Rng& rng) {
  std::vector<i64> c(R->m());
  for (auto& x : c) x = static_cast<i64>(rng() % static_cast<unsigned long long>(R->z().q));
  return R->elem(c);
}

FLModule random_fl_candidate(i64 p, int m, int d, int h, Rng& rng) {
  auto R = field_or_prime(p, m);
  std::vector<WittVec> P;
  while (true) {
    P.assign(d, WittVec(d, R->zero()));
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) P[r][c] = random_elem(R, rng);
    FLModule probe = FLModule::make(R, std::vector<int>(d, 1), 0, {P}, {P});
    if (probe.fil_span(0).length() == static_cast<i64>(d) * m) break;
  }
  std::vector<int> f(h + 2, 0);
  f[0] = d;
  for (int i = 1; i <= h; ++i) f[i] = static_cast<int>(rng() % static_cast<unsigned>(f[i - 1] + 1));
  const int pool = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
  std::vector<WittVec> imgs(pool, WittVec(d, R->zero()));
  for (auto& v : imgs)
    for (auto& x : v) x = random_elem(R, rng);
  std::vector<std::vector<WittVec>> fil(h + 1), phis(h + 1);
  for (int i = 0; i <= h; ++i)
    for (int j = 0; j < f[i]; ++j) {
      fil[i].push_back(P[j]);
      if (j < f[i + 1]) {
        phis[i].push_back(WittVec(d, R->zero()));
      } else {
        WittVec v(d, R->zero());
        for (const auto& w : imgs) {
          WittElem c = random_elem(R, rng);
          for (int k = 0; k < d; ++k) v[k] = v[k] + c * w[k];
        }
        phis[i].push_back(v);
      }
    }
  return FLModule::make(R, std::vector<int>(d, 1), h, fil, phis);
}

PhiModule random_finite_phi_module(i64 p, int m, int g, Rng& rng) {
  auto R = field_or_prime(p, m);
  std::vector<int> b(g);
  int bmax = 0;
  for (auto& x : b) {
    x = 1 + static_cast<int>(rng() % 6);
    bmax = std::max(bmax, x);
  }
  const int N = bmax + 1;
  SeriesMat relm(g), Phi(g, std::vector<SeriesElem>(g));
  for (int i = 0; i < g; ++i)
    for (int k = 0; k < g; ++k) relm[i].push_back(i == k ? SeriesElem::monomial(R, N, b[k]) : SeriesElem(R, N));
  for (int i = 0; i < g; ++i)
    for (int k = 0; k < g; ++k) {
      SeriesElem s(R, N);
      int lo = std::max(0, b[i] - static_cast<int>(p) * b[k]);
      // sparse entries keep both multiplicative and nilpotent behaviour common
      for (int l = lo; l < b[i]; ++l)
        if (rng() % 3 == 0) s.set_coeff(l, random_elem(R, rng));
      Phi[i][k] = s;
    }
  return PhiModule::make(R, g, relm, Phi, Shape::Finite, 1, bmax, N);
}

PhiModule hidden_shape_module(i64 p, int n, const std::vector<int>& hidden, Rng& rng) {
  auto R = WittRing::prime(p, n);
  const int g = static_cast<int>(hidden.size()), N = 5;
  SeriesMat D(g, std::vector<SeriesElem>(g, SeriesElem(R, N)));
  for (int k = 0; k < g; ++k) {
    if (hidden[k] < 1 || hidden[k] > n) throw InvalidRing("hidden exponent out of range");
    D[k][k] = SeriesElem::monomial(R, N, 0, R->z().ppow(hidden[k]));
  }
  return presented(R, n, D, N, rng);
}

PhiModule planted_torsion_module(i64 p, int n, int k, const std::vector<int>& hidden, Rng& rng) {
  auto R = WittRing::prime(p, n);
  const int g = static_cast<int>(hidden.size()) + 1, N = k + 6;
  SeriesMat D(g, std::vector<SeriesElem>(g + 1, SeriesElem(R, N)));
  D[0][0] = SeriesElem::monomial(R, N, 0, p % R->z().q);
  D[0][g] = SeriesElem::monomial(R, N, k);
  for (int j = 1; j < g; ++j) D[j][j] = SeriesElem::monomial(R, N, 0, R->z().ppow(hidden[j - 1]));
  return presented(R, n, D, N, rng);
}

EtalePhiModule random_etale(i64 p, int m, int d, Rng& rng) {
  auto k = field_or_prime(p, m);
  while (true) {
    std::vector<std::vector<WittElem>> A(d, std::vector<WittElem>(d));
    for (auto& row : A)
      for (auto& a : row) a = random_elem(k, rng);
    try {
      return EtalePhiModule::make(k, A);
    } catch (const IllFormedPhi&) {
    }
  }
}

}  // namespace prismalab::gen
