#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace prismalab {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
  double millis = 0;
};

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;  // 0: hardware concurrency
  int slack = 0;         // extra p-adic digits for the cyclotomic suites
};

// cyclo, kernel, ideal, split, zp_shape, fl, residual, boundary, witt, etale
const std::vector<std::string>& suite_names();
// "all" or one suite name; UnknownCheck otherwise. Results are ordered independently of scheduling.
std::vector<CheckResult> run_suite(const std::string& filter, const SuiteOptions& opt = {});

}  // namespace prismalab
