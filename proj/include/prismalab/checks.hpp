#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "prismalab/textio.hpp"

namespace prismalab {

using Value = std::variant<bool, i64, double, std::string, std::vector<i64>>;

struct Report {
  std::string check;
  bool pass = false;
  std::string note;
  std::vector<std::pair<std::string, Value>> fields;

  void add(std::string key, Value v) { fields.emplace_back(std::move(key), std::move(v)); }
};

struct CheckOptions {
  int slack = 0;   // extra p-adic digits
  int bound = -1;  // cyclotomic degree bound B
  int D = -1;      // divided-power truncation
  int m = 0;       // kernel precision; 0 for all m <= n
  int t_max = 6;   // fixed points
  i64 a = 0;       // Frobenius constant of the rank-2 H^1 shape
};

// stable identifiers accepted for a module kind
const std::vector<std::string>& check_names(const std::string& kind);
// UnknownCheck for a name outside check_names(doc.kind); library errors propagate
Report run_check(const Document& doc, const std::string& name, const CheckOptions& opt = {});

}  // namespace prismalab
