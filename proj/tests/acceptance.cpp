#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "prismalab/suites.hpp"

using namespace prismalab;

namespace {

constexpr double kSharpnessMs = 1000;  // per instance
constexpr double kKernelMs = 5000;     // per instance
constexpr double kIdealMs = 30000;     // per instance
constexpr double kSplitTotalMs = 10000;

using IntPoly = std::vector<long long>;

long long ipw(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

IntPoly shifted_minus_one(long long k) {
  // (u + 1)^k - 1 over Z, k small
  IntPoly c(k + 1, 0);
  c[0] = 1;
  for (long long t = 0; t < k; ++t)
    for (long long i = t + 1; i >= 1; --i) c[i] += c[i - 1];
  c[0] -= 1;
  return c;
}

IntPoly divide(IntPoly a, const IntPoly& b) {
  IntPoly q(a.size() - b.size() + 1, 0);
  for (size_t i = q.size(); i-- > 0;) {
    q[i] = a[i + b.size() - 1];
    for (size_t j = 0; j < b.size(); ++j) a[i + j] -= q[i] * b[j];
  }
  return q;
}

// all f of degree <= B over Z/p^m with f(u^p) = d f; returns the solutions
std::vector<IntPoly> brute_kernel(long long p, int n, int m, int B) {
  const long long mod = ipw(p, m);
  IntPoly d = divide(shifted_minus_one(ipw(p, n)), shifted_minus_one(ipw(p, n - 1)));
  std::vector<IntPoly> sols;
  const long long total = ipw(mod, B + 1);
  const size_t out = static_cast<size_t>(std::max<long long>(p * B, B + static_cast<long long>(d.size()))) + 1;
  IntPoly f(B + 1);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i <= B; ++i) {
      f[i] = c % mod;
      c /= mod;
    }
    IntPoly diff(out, 0);
    for (int i = 0; i <= B; ++i) diff[static_cast<size_t>(p * i)] += f[i];
    for (int i = 0; i <= B; ++i)
      for (size_t j = 0; j < d.size(); ++j) diff[i + j] -= f[i] * d[j];
    if (std::all_of(diff.begin(), diff.end(), [&](long long x) { return x % mod == 0; })) sols.push_back(f);
  }
  return sols;
}

// kernel = {c g : c in Z/p^m}
bool brute_kernel_cyclic(long long p, int n, int m, int B) {
  const long long mod = ipw(p, m);
  auto sols = brute_kernel(p, n, m, B);
  IntPoly g = shifted_minus_one(ipw(p, n - 1));
  if (static_cast<long long>(sols.size()) != mod) return false;
  for (long long c = 0; c < mod; ++c) {
    IntPoly want(B + 1, 0);
    for (size_t i = 0; i < g.size(); ++i) want[i] = ((c * g[i]) % mod + mod) % mod;
    if (std::find(sols.begin(), sols.end(), want) == sols.end()) return false;
  }
  return true;
}

// g mod p = u^{p^{n-1}}, so Ann(S/(g, p^n)) + (p) = (u^{p^{n-1}}, p)
bool g_is_power_mod_p(long long p, int n) {
  IntPoly g = shifted_minus_one(ipw(p, n - 1));
  for (size_t i = 0; i + 1 < g.size(); ++i)
    if (g[i] % p) return false;
  return g.back() % p == 1;
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::vector<CheckResult> suite(const std::string& name) {
  SuiteOptions opt;
  opt.threads = 1;  // honest per-instance timings
  return run_suite(name, opt);
}

std::string first_failure(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return r.name + ": " + r.detail;
  return "";
}

Outcome all_pass(const std::vector<CheckResult>& rs, double per_ms, const std::string& what) {
  double worst = 0;
  int ok = 0;
  for (const auto& r : rs) {
    worst = std::max(worst, r.millis);
    ok += r.pass;
  }
  bool fast = per_ms <= 0 || worst < per_ms;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d/%zu %s, slowest %.1f ms", ok, rs.size(), what.c_str(), worst);
  std::string d = buf;
  if (per_ms > 0) d += " (limit " + std::to_string(static_cast<int>(per_ms)) + " ms)";
  if (ok != static_cast<int>(rs.size())) d += "; first failure " + first_failure(rs);
  return {ok == static_cast<int>(rs.size()) && fast && !rs.empty(), d};
}

Outcome criterion1() {
  auto rs = suite("cyclo");
  auto o = all_pass(rs, kSharpnessMs, "instances");
  for (auto [p, n] : std::vector<std::pair<long long, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}})
    if (!g_is_power_mod_p(p, n)) return {false, "g mod p oracle disagrees"};
  return o;
}

Outcome criterion2() {
  auto rs = suite("kernel");
  auto o = all_pass(rs, kKernelMs, "kernels");
  // exhaustive oracle on the degree-bounded polynomials
  struct Case {
    long long p;
    int n, m, B;
  };
  for (auto c : std::vector<Case>{{2, 1, 1, 4}, {3, 1, 1, 4}, {5, 1, 1, 5}, {2, 2, 1, 8}, {2, 2, 2, 8}})
    if (!brute_kernel_cyclic(c.p, c.n, c.m, c.B)) return {false, "enumeration oracle disagrees"};
  o.detail += ", enumeration oracle agrees";
  return o;
}

Outcome criterion3() { return all_pass(suite("ideal"), kIdealMs, "ideals"); }

Outcome criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  auto rs = suite("split");
  double total = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  auto o = all_pass(rs, 0, "modules");
  o.detail += ", total " + std::to_string(static_cast<int>(total)) + " ms (limit " +
              std::to_string(static_cast<int>(kSplitTotalMs)) + " ms)";
  o.pass = o.pass && rs.size() == 50 && total < kSplitTotalMs;
  return o;
}

Outcome criterion5() {
  auto rs = suite("zp_shape");
  auto o = all_pass(rs, 0, "shapes");
  long hidden = std::count_if(rs.begin(), rs.end(), [](const CheckResult& r) { return r.name.rfind("hidden", 0) == 0; });
  o.pass = o.pass && hidden == 30 && rs.size() == 40;
  return o;
}

Outcome criterion6() {
  auto rs = suite("fl");
  auto o = all_pass(rs, 0, "candidates agree");
  long fl = std::count_if(rs.begin(), rs.end(), [](const CheckResult& r) { return r.detail.find("fl=yes") != std::string::npos; });
  o.detail += ", " + std::to_string(fl) + " of them FL";
  o.pass = o.pass && rs.size() == 20;
  return o;
}

Outcome criterion7() { return all_pass(suite("residual"), 0, "residual modules"); }
Outcome criterion8() { return all_pass(suite("boundary"), 0, "(p, e) pairs"); }
Outcome criterion9() { return all_pass(suite("witt"), 0, "witt jobs"); }

Outcome criterion10() {
  auto rs = suite("etale");
  auto o = all_pass(rs, 0, "modules");
  o.pass = o.pass && rs.size() == 20;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"sharpness table", criterion1},    {"cyclotomic kernel", criterion2},
      {"ideal J generators", criterion3}, {"decomposition suite", criterion4},
      {"Z_p-shape oracle", criterion5},   {"FL to Breuil criterion", criterion6},
      {"residual module", criterion7},    {"boundary divided Frobenius", criterion8},
      {"Witt layer", criterion9},         {"fixed points", criterion10}};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %-28s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
