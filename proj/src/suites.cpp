#include "prismalab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <sstream>
#include <thread>

#include "prismalab/cyclo.hpp"
#include "prismalab/decomposition.hpp"
#include "prismalab/errors.hpp"
#include "prismalab/generators.hpp"
#include "prismalab/residual.hpp"

namespace prismalab {

namespace {

struct Job {
  std::string name;
  std::function<std::pair<bool, std::string>()> run;
};

using Jobs = std::vector<Job>;

template <class... T>
std::string cat(const T&... xs) {
  std::ostringstream os;
  (os << ... << xs);
  return os.str();
}

const std::vector<std::pair<i64, int>> kCycloRange{{2, 1}, {3, 1}, {5, 1}, {2, 2}};

Jobs cyclo_jobs(const SuiteOptions& opt) {
  Jobs jobs;
  for (auto [p, n] : kCycloRange)
    jobs.push_back({cat("sharpness p=", p, " n=", n), [p, n, s = opt.slack] {
                      auto I = CycloInstance::make(p, n, -1, -1, s);
                      auto h = h2_torsion_report(I);
                      bool ok = h.pass() && h.alpha == I.q;
                      return std::pair{ok, cat("e=", I.e, " alpha=", h.alpha, " bound=", h.bound_num, "/",
                                               h.bound_den, " equal=", h.equal ? "yes" : "no")};
                    }});
  return jobs;
}

Jobs kernel_jobs(const SuiteOptions& opt) {
  Jobs jobs;
  for (auto [p, n] : kCycloRange)
    for (int m = 1; m <= n; ++m)
      jobs.push_back({cat("kernel p=", p, " n=", n, " m=", m), [p, n, m, s = opt.slack] {
                        auto I = CycloInstance::make(p, n, -1, -1, s);
                        auto k = ker_phi_minus_d(I, m);
                        return std::pair{k.pass(), cat("B=", k.B, " length=", k.length,
                                                       " cyclic=", k.generated_by_g ? "yes" : "no")};
                      }});
  return jobs;
}

Jobs ideal_jobs(const SuiteOptions& opt) {
  Jobs jobs;
  for (auto [p, n] : std::vector<std::pair<i64, int>>{{2, 1}, {3, 1}, {2, 2}})
    jobs.push_back({cat("mingens p=", p, " n=", n), [p, n, s = opt.slack] {
                      auto r = ideal_j_mingens(CycloInstance::make(p, n, -1, -1, s));
                      bool free = p == 2 && n == 1;
                      bool ok = free ? r.mu == 1 : r.mu >= 2;
                      return std::pair{ok, cat("mu=", r.mu, " D=", r.D, " stable")};
                    }});
  return jobs;
}

Jobs split_jobs(const SuiteOptions& opt) {
  Jobs jobs;
  for (int t = 0; t < 50; ++t)
    jobs.push_back({cat("split #", t), [t, seed = opt.seed] {
                      gen::Rng rng(seed + static_cast<std::uint64_t>(t) * 7919);
                      const i64 p = std::vector<i64>{2, 3, 5}[t % 3];
                      const int m = t % 4 == 3 ? 2 : 1;
                      const int g = 1 + static_cast<int>(rng() % 3);
                      auto M = gen::random_finite_phi_module(p, m, g, rng);
                      // length oracle: sum of the relation degrees times m
                      i64 len = 0;
                      for (int k = 0; k < g; ++k) len += static_cast<i64>(M.rel[k][k].u_valuation()) * m;
                      auto sp = split_phi_module(M);
                      bool ok = sp.ok() && sp.len == len && sp.mult.length() == sp.len_mult &&
                                sp.nilp.length() == sp.len_nilp;
                      ok = ok && mult_section(M, rng() | 1).values == sp.section.values;
                      auto a = split_phi_module(sp.mult);
                      auto b = split_phi_module(sp.nilp);
                      ok = ok && a.len_nilp == 0 && a.len_mult == sp.len_mult && b.len_mult == 0;
                      return std::pair{ok, cat("p=", p, " m=", m, " rank=", g, " len=", sp.len,
                                               " mult=", sp.len_mult, " nilp=", sp.len_nilp)};
                    }});
  return jobs;
}

// length(M / (p^j, u)) for (+) W/p^{a_k}
std::vector<i64> shape_lengths(const std::vector<int>& a, int n) {
  std::vector<i64> out;
  for (int j = 0; j <= n; ++j) {
    i64 s = 0;
    for (int x : a) s += std::min(x, j);
    out.push_back(s);
  }
  return out;
}

Jobs zp_shape_jobs(const SuiteOptions& opt) {
  Jobs jobs;
  for (int t = 0; t < 40; ++t)
    jobs.push_back({cat(t < 30 ? "hidden #" : "planted #", t < 30 ? t : t - 30), [t, seed = opt.seed] {
                      gen::Rng rng(seed + 104729 + static_cast<std::uint64_t>(t));
                      const i64 p = t % 2 ? 3 : 2;
                      const int n = 1 + static_cast<int>(rng() % 3);
                      const int g = (t < 30 ? 1 : 0) + static_cast<int>(rng() % 3);
                      std::vector<int> hidden(g);
                      for (auto& a : hidden) a = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
                      if (t < 30) {
                        auto s = zp_shape(gen::hidden_shape_module(p, n, hidden, rng));
                        std::sort(hidden.begin(), hidden.end());
                        bool ok = !s.refuted && s.certified && s.exponents == hidden &&
                                  s.lengths == shape_lengths(hidden, n);
                        return std::pair{ok, cat("p=", p, " n=", n, " rank=", g)};
                      }
                      const int k = 1 + static_cast<int>(rng() % 3);
                      auto s = zp_shape(gen::planted_torsion_module(p, n, k, hidden, rng));
                      return std::pair{s.refuted && s.fail_j == 1, cat("p=", p, " n=", n, " u^", k, " fail_j=", s.fail_j)};
                    }});
  return jobs;
}

Jobs fl_jobs(const SuiteOptions& opt) {
  Jobs jobs;
  for (int t = 0; t < 20; ++t)
    jobs.push_back({cat("fl #", t), [t, seed = opt.seed] {
                      gen::Rng rng(seed + 1299709 + static_cast<std::uint64_t>(t));
                      const i64 p = t % 2 ? 5 : 3;
                      const int d = 1 + static_cast<int>(rng() % 3);
                      const int h = static_cast<int>(rng() % static_cast<unsigned>(p));
                      auto M = gen::random_fl_candidate(p, 1, d, h, rng);
                      bool direct = is_fl_module(M).ok;
                      bool crit = fl_criterion(M);
                      return std::pair{direct == crit, cat("p=", p, " d=", d, " h=", h, " fl=", direct ? "yes" : "no")};
                    }});
  return jobs;
}

Jobs residual_jobs(const SuiteOptions& opt) {
  Jobs jobs;
  for (i64 p : {3, 5})
    for (int d = 1; d <= 2; ++d)
      jobs.push_back({cat("residual e=1 p=", p, " dim=", d), [p, d, seed = opt.seed] {
                        gen::Rng rng(seed + static_cast<std::uint64_t>(p * 10 + d));
                        auto V = gen::random_etale(p, 1, d, rng);
                        auto R = residual_module(V, 1);
                        auto chk = is_breuil_module(*R.breuil);
                        auto fp = unramified_realization(R, 24);
                        const int dim = static_cast<int>(fp.basis.rows());
                        bool ok = chk.ok && R.torsion_basis == R.formula_basis && dim == V.k->m() * V.d;
                        return std::pair{ok, cat("axioms=", chk.ok ? "ok" : chk.axiom, " realization=", dim)};
                      }});
  for (auto [p, e] : std::vector<std::pair<i64, int>>{{3, 2}, {5, 2}, {5, 4}})
    jobs.push_back({cat("residual e=", e, " p=", p), [p, e, seed = opt.seed] {
                      gen::Rng rng(seed + static_cast<std::uint64_t>(p * 100 + e));
                      auto R = residual_module(gen::random_etale(p, 1, 1, rng), e);
                      return std::pair{R.phi_vanishes && !R.breuil, cat("phi_h vanishes=", R.phi_vanishes ? "yes" : "no")};
                    }});
  return jobs;
}

Jobs boundary_jobs(const SuiteOptions&) {
  Jobs jobs;
  for (i64 p : {2, 3, 5})
    for (int e = 1; e <= p - 1; ++e) {
      if ((p - 1) % e) continue;
      jobs.push_back({cat("boundary p=", p, " e=", e), [p, e] {
                        auto b = boundary_divided_frobenius(p, e);
                        return std::pair{b.ok, cat("i=", b.i, b.closed_form ? " closed form agrees" : "")};
                      }});
    }
  return jobs;
}

std::string witt_exhaustive(const WittRingPtr& R) {
  const int m = R->m();
  const Zpk& z = R->z();
  for (const auto& x : R->enumerate()) {
    if (R->sigma_pow(x, m) != x) return "sigma^m != id at " + x.str();
    WittElem d = R->sigma(x) - R->pow(x, R->p());
    for (i64 c : d.c)
      if (c % z.p) return "sigma(x) != x^p mod p at " + x.str();
  }
  return "";
}

Jobs witt_jobs(const SuiteOptions& opt) {
  Jobs jobs;
  std::vector<std::pair<i64, std::vector<std::pair<int, int>>>> rings;
  for (i64 p = 2; p <= 4096; ++p) {
    if (!is_prime(p)) continue;
    std::vector<std::pair<int, int>> nm;
    for (int n = 1; ipow(p, n) <= 4096; ++n)
      for (int m = 1; ipow(p, n * m) <= 4096; ++m) nm.push_back({n, m});
    rings.push_back({p, nm});
  }
  // small primes one job each, the long tail of W_1(F_p) in one job
  for (const auto& [p, nm] : rings) {
    if (p > 64) continue;
    jobs.push_back({cat("witt exhaustive p=", p), [p, nm] {
                      for (auto [n, m] : nm) {
                        auto R = WittRing::residue_field(p, m)->with_precision(n);
                        auto err = witt_exhaustive(R);
                        if (!err.empty()) return std::pair{false, cat("W_", n, "(F_", p, "^", m, "): ", err)};
                      }
                      return std::pair{true, cat(nm.size(), " rings")};
                    }});
  }
  jobs.push_back({"witt exhaustive p>64", [rings] {
                    int count = 0;
                    for (const auto& [p, nm] : rings) {
                      if (p <= 64) continue;
                      for (auto [n, m] : nm) {
                        auto err = witt_exhaustive(WittRing::residue_field(p, m)->with_precision(n));
                        if (!err.empty()) return std::pair{false, cat("p=", p, ": ", err)};
                        ++count;
                      }
                    }
                    return std::pair{true, cat(count, " rings")};
                  }});
  jobs.push_back({"witt ring axioms", [seed = opt.seed] {
                    gen::Rng rng(seed + 15485863);
                    const std::vector<std::tuple<i64, int, int>> pool{{2, 3, 3}, {3, 2, 2}, {5, 3, 1}, {2, 1, 5}, {7, 2, 2}};
                    for (int t = 0; t < 1000; ++t) {
                      auto [p, n, m] = pool[t % pool.size()];
                      auto R = WittRing::residue_field(p, m)->with_precision(n);
                      auto a = gen::random_elem(R, rng), b = gen::random_elem(R, rng), c = gen::random_elem(R, rng);
                      bool ok = (a + b) + c == a + (b + c) && a + b == b + a && (a * b) * c == a * (b * c) &&
                                a * b == b * a && a * (b + c) == a * b + a * c && a * R->one() == a &&
                                a + R->zero() == a && a - a == R->zero() && R->sigma(a * b) == R->sigma(a) * R->sigma(b) &&
                                R->sigma(a + b) == R->sigma(a) + R->sigma(b);
                      if (!ok) return std::pair{false, cat("triple ", t, " in W_", n, "(F_", p, "^", m, ")")};
                    }
                    return std::pair{true, std::string("1000 triples")};
                  }});
  return jobs;
}

Jobs etale_jobs(const SuiteOptions& opt) {
  Jobs jobs;
  for (int t = 0; t < 20; ++t)
    jobs.push_back({cat("etale #", t), [t, seed = opt.seed] {
                      gen::Rng rng(seed + 32452843 + static_cast<std::uint64_t>(t));
                      const std::vector<std::pair<i64, int>> fields{{2, 1}, {3, 1}, {2, 2}};
                      auto [p, m] = fields[t % 3];
                      const int d = 1 + static_cast<int>(rng() % 3);
                      // modules whose fixed space needs t > 6 are redrawn
                      int redraws = 0;
                      while (true) {
                        auto V = gen::random_etale(p, m, d, rng);
                        FixedPoints fp;
                        try {
                          fp = etale_fixed_points(V, 6);
                        } catch (const BoundTooSmall&) {
                          ++redraws;
                          continue;
                        }
                        IMat B = V.fp_matrix();
                        bool ok = fp.basis.rows() == m * d && fp.dims.back() == m * d;
                        for (int s = 1; s <= fp.t; ++s) ok = ok && enumerate_fixed_dimension(B, p, s) == fp.dims[s - 1];
                        return std::pair{ok, cat("q=", ipow(p, m), " d=", d, " t=", fp.t, " redraws=", redraws)};
                      }
                    }});
  return jobs;
}

using Builder = Jobs (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> r{
      {"cyclo", cyclo_jobs}, {"kernel", kernel_jobs},     {"ideal", ideal_jobs}, {"split", split_jobs},
      {"zp_shape", zp_shape_jobs}, {"fl", fl_jobs},       {"residual", residual_jobs},
      {"boundary", boundary_jobs}, {"witt", witt_jobs},   {"etale", etale_jobs}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, b] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

std::vector<CheckResult> run_suite(const std::string& filter, const SuiteOptions& opt) {
  std::vector<CheckResult> results;
  std::vector<Job> jobs;
  bool found = false;
  for (const auto& [name, build] : registry()) {
    if (filter != "all" && filter != name) continue;
    found = true;
    for (auto& j : build(opt)) {
      results.push_back({name, j.name, false, "", 0});
      jobs.push_back(std::move(j));
    }
  }
  if (!found) throw UnknownCheck("no suite named " + filter);
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < jobs.size();) {
      auto t0 = std::chrono::steady_clock::now();
      try {
        auto [ok, detail] = jobs[i].run();
        results[i].pass = ok;
        results[i].detail = detail;
      } catch (const std::exception& e) {
        results[i].pass = false;
        results[i].detail = e.what();
      }
      results[i].millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace prismalab
