#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "prismalab/checks.hpp"
#include "prismalab/errors.hpp"
#include "prismalab/generators.hpp"
#include "prismalab/suites.hpp"

using namespace prismalab;
using json = nlohmann::ordered_json;

namespace {

json to_json(const Value& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

std::string to_text(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) return x ? "yes" : "no";
        else if constexpr (std::is_same_v<T, std::string>) return x;
        else if constexpr (std::is_same_v<T, std::vector<i64>>) {
          std::string s = "[";
          for (size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + std::to_string(x[i]);
          return s + "]";
        } else {
          std::ostringstream os;
          os << x;
          return os.str();
        }
      },
      v);
}

json report_json(const Report& r) {
  json j{{"check", r.check}, {"pass", r.pass}};
  if (!r.note.empty()) j["note"] = r.note;
  json f = json::object();
  for (const auto& [k, v] : r.fields) f[k] = to_json(v);
  j["fields"] = f;
  return j;
}

void print_report(const Report& r) {
  std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << "\n";
  if (!r.note.empty()) std::cout << "  note: " << r.note << "\n";
  for (const auto& [k, v] : r.fields) std::cout << "  " << k << " = " << to_text(v) << "\n";
}

int emit_reports(const std::vector<Report>& reports, bool as_json, const json& header) {
  bool all = std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.pass; });
  if (as_json) {
    json j = header;
    j["checks"] = json::array();
    for (const auto& r : reports) j["checks"].push_back(report_json(r));
    j["pass"] = all;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : reports) print_report(r);
  }
  return all ? 0 : 1;
}

int slack_from_env() {
  const char* s = std::getenv("PRISMALAB_PRECISION_SLACK");
  if (!s || !*s) return 0;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (*end || v < 0 || v > 32) throw InvalidRing("PRISMALAB_PRECISION_SLACK must be an integer in [0, 32]");
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prismalab: exact computations with torsion phi-modules and their filtered relatives"};
  app.require_subcommand(1);
  bool as_json = false, timings = false;
  int p = 2, n = 1, m = 0, f = 1, N = -1, D = -1, bound = -1;
  i64 a = 0;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  app.add_flag("--json", as_json, "machine-readable report");

  auto* check = app.add_subcommand("check", "run checks on an input document");
  std::string path;
  std::vector<std::string> names;
  check->add_option("file", path, "input document")->required();
  check->add_option("checks", names, "check names (default: the document's [check] block)");
  check->add_option("--N", N, "override the u-precision");
  check->add_option("--m", m, "kernel precision for the cyclotomic kernel check");
  check->add_option("--D", D, "divided-power truncation");
  check->add_option("--bound", bound, "degree bound for the kernel check");
  check->add_option("--a", a, "Frobenius constant recorded by the h1 check");
  check->add_flag("--json", as_json);

  auto* suite = app.add_subcommand("suite", "run built-in suites");
  std::string filter = "all";
  suite->add_option("filter", filter, "all or one of the suite names");
  suite->add_option("--seed", seed, "seed for randomized suites");
  suite->add_option("--threads", threads, "worker threads (0: all cores)");
  suite->add_flag("--timings", timings, "include runtimes (breaks byte-identical output)");
  suite->add_flag("--json", as_json);

  auto* example = app.add_subcommand("example", "built-in example families");
  std::string family;
  example->add_option("family", family, "cyclo or etale")->required()->check(CLI::IsMember({"cyclo", "etale"}));
  example->add_option("--p", p, "prime");
  example->add_option("--n", n, "p-adic level");
  example->add_option("--m", m, "kernel precision (0: all m <= n)");
  example->add_option("--f", f, "residue degree for the etale example");
  example->add_option("--D", D, "divided-power truncation");
  example->add_option("--bound", bound, "degree bound B");
  example->add_option("--seed", seed, "seed for the etale example");
  example->add_option("--a", a, "Frobenius constant recorded in the H^1 shape");
  example->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CheckOptions opt;
    opt.slack = slack_from_env();
    opt.bound = bound;
    opt.D = D;
    opt.m = m;
    opt.a = a;
    if (*check) {
      std::ifstream in(path);
      if (!in) throw ParseError("cannot read " + path);
      std::stringstream ss;
      ss << in.rdbuf();
      Document doc = parse_document(ss.str(), N);
      if (names.empty()) names = doc.checks;
      if (names.empty()) throw UnknownCheck("no check requested");
      std::vector<Report> reports;
      for (const auto& nm : names) reports.push_back(run_check(doc, nm, opt));
      return emit_reports(reports, as_json, json{{"file", path}, {"kind", doc.kind}});
    }
    if (*suite) {
      SuiteOptions so;
      so.seed = seed;
      so.threads = threads;
      so.slack = opt.slack;
      auto results = run_suite(filter, so);
      bool all = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
      if (as_json) {
        json j{{"suite", filter}, {"seed", seed}, {"checks", json::array()}};
        for (const auto& r : results) {
          json c{{"suite", r.suite}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}};
          if (timings) c["ms"] = r.millis;
          j["checks"].push_back(c);
        }
        j["passed"] = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
        j["total"] = results.size();
        j["pass"] = all;
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& r : results) {
          std::cout << (r.pass ? "PASS " : "FAIL ") << r.suite << ": " << r.name << "  " << r.detail;
          if (timings) std::cout << "  (" << r.millis << " ms)";
          std::cout << "\n";
        }
        std::cout << (all ? "all passed" : "FAILURES") << "\n";
      }
      return all ? 0 : 1;
    }
    Document doc;
    doc.p = p;
    doc.n = n;
    if (family == "cyclo") {
      doc.kind = "cyclo";
      std::vector<Report> reports;
      for (const char* nm : {"identity", "sharpness", "kernel", "mingens", "h1"}) reports.push_back(run_check(doc, nm, opt));
      return emit_reports(reports, as_json, json{{"example", "cyclo"}, {"p", p}, {"n", n}});
    }
    // a random invertible Frobenius over F_{p^f}
    gen::Rng rng(seed);
    auto V = gen::random_etale(p, f, 1 + static_cast<int>(rng() % 3), rng);
    doc.kind = "etale";
    doc.n = 1;
    doc.f = f;
    doc.rank = V.d;
    doc.N = 1;
    doc.modulus = V.k->f();
    for (const auto& row : V.A) {
      doc.phi.emplace_back();
      for (const auto& a : row) doc.phi.back().push_back(SeriesElem::constant(a, 1));
    }
    opt.t_max = 24;
    auto r = run_check(doc, "fixed_points", opt);
    if (!as_json) std::cout << serialize(doc) << "\n";
    return emit_reports({r}, as_json, json{{"example", "etale"}, {"p", p}, {"f", f}, {"seed", seed}});
  } catch (const Error& e) {
    if (as_json) std::cout << json{{"error", e.kind()}, {"message", e.what()}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return e.input_error() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
