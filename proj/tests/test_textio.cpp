#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "prismalab/checks.hpp"
#include "prismalab/errors.hpp"
#include "prismalab/textio.hpp"

using namespace prismalab;

namespace {

const char* kSplit = R"(# comment
[ring]
p = 2
n = 1
N = 5

[module]
kind = phi
rank = 2
shape = finite
b = 4
u^4, 0
0, u^4

[phi]
1, 0
0, u   # trailing comment

[check]
name = split
)";

Value field(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.fields)
    if (k == key) return v;
  FAIL("missing field " << key);
  return false;
}

std::string error_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("series literals") {
  auto R = WittRing::prime(3, 2);
  auto s = parse_series(R, 8, "2 - u + 4*u^3 + u^3");
  CHECK(s == SeriesElem::from_coeffs(R, 8, {2, 8, 0, 5}));
  CHECK(series_literal(s) == "2 + 8*u + 5*u^3");
  CHECK(series_literal(SeriesElem(R, 8)) == "0");
  CHECK(parse_series(R, 8, "u^2") == SeriesElem::monomial(R, 8, 2));
  auto F = WittRing::residue_field(2, 2);
  auto t = parse_series(F, 4, "[1, 1]*u + [0, 1]");
  CHECK(t.coeff(1) == F->elem({1, 1}));
  CHECK(t.coeff(0) == F->gen());
  CHECK(series_literal(t) == "[0, 1] + [1, 1]*u");
  CHECK_THROWS_AS(parse_series(R, 4, "u^4"), ParseError);
  CHECK(parse_series(R, 4, "2u") == parse_series(R, 4, "2*u"));
  CHECK_THROWS_AS(parse_series(R, 4, "u^"), ParseError);
  CHECK_THROWS_AS(parse_series(R, 4, "3 4"), ParseError);
  CHECK_THROWS_AS(parse_series(R, 4, ""), ParseError);
  CHECK_THROWS_AS(parse_series(F, 4, "[1]"), ParseError);
}

TEST_CASE("document parses into a phi-module") {
  auto doc = parse_document(kSplit);
  CHECK(doc.p == 2);
  CHECK(doc.rank == 2);
  CHECK(doc.checks == std::vector<std::string>{"split"});
  auto M = to_phi_module(doc);
  CHECK(M.length() == 8);
  auto r = run_check(doc, "split");
  CHECK(r.pass);
}

TEST_CASE("canonical serialization is a fixed point") {
  auto doc = parse_document(kSplit);
  std::string canon = serialize(doc);
  CHECK(serialize(parse_document(canon)) == canon);
  CHECK(parse_document(canon) == doc);
}

TEST_CASE("parse errors carry positions") {
  CHECK(error_of("[ring]\np = 4\n").find("line 2, column 5") != std::string::npos);
  CHECK(error_of("[module]\n").find("line 1, column 1") != std::string::npos);
  CHECK(error_of("[ring]\np = 3\nq = 1\n").find("unknown key 'q'") != std::string::npos);
  CHECK(error_of("[ring]\np = 3\n[module]\nrank = 1\nu^2 +\n[phi]\n1\n").find("line 5") != std::string::npos);
  std::string arity = "[ring]\np = 3\n[module]\nrank = 2\nb = 1\nu, 0\n0, u\n[phi]\n1, 0, 0\n0, 1\n";
  CHECK(error_of(arity).find("line 9, column 1: row has 3 entries") != std::string::npos);
  CHECK(error_of("[ring]\np = 3\n[ring]\n").find("duplicate block") != std::string::npos);
  CHECK(error_of("[ring]\np = 3\n[module]\nkind = blob\n").find("unknown value") != std::string::npos);
  CHECK(error_of("[ring]\np = 3\n[fil]\n1, 0\n").find("before 'level ='") != std::string::npos);
  CHECK(error_of("[ring]\np = 3\n[module]\nrank = 1\nu\n[phi]\n1\n[fil]\nlevel = 0\n1, 1\n").find("kind = fl") !=
        std::string::npos);
}

TEST_CASE("ill-formed phi is reported with the relation index") {
  std::string text = "[ring]\np = 2\n[module]\nrank = 2\nshape = general\nu\n0\n[phi]\n0, 0\n1, 1\n";
  auto doc = parse_document(text);
  try {
    to_phi_module(doc);
    FAIL("expected IllFormedPhi");
  } catch (const IllFormedPhi& e) {
    CHECK(std::string(e.what()).find("relation 0") != std::string::npos);
  }
}

TEST_CASE("empty module passes vacuously") {
  auto doc = parse_document("[ring]\np = 3\n[module]\nrank = 0\n");
  for (const auto& name : check_names("phi")) {
    auto r = run_check(doc, name);
    CHECK(r.pass);
    CHECK(!r.note.empty());
  }
  CHECK_THROWS_AS(run_check(doc, "nope"), UnknownCheck);
}

TEST_CASE("cyclotomic document") {
  auto doc = parse_document("[ring]\np = 2\nn = 1\n[module]\nkind = cyclo\n");
  auto r = run_check(doc, "sharpness");
  CHECK(r.pass);
  CHECK(std::get<i64>(field(r, "alpha")) == 1);
  CHECK(std::get<bool>(field(r, "equal")));
}

TEST_CASE("fl document round trip and checks") {
  std::string text = R"([ring]
p = 3
n = 1
[module]
kind = fl
rank = 2
h = 1
[fil]
level = 0
1, 0, 1, 0
0, 1, 0, 1
level = 1
1, 1, 1, 2
)";
  auto doc = parse_document(text);
  CHECK(doc.fil.size() == 3);
  CHECK(parse_document(serialize(doc)) == doc);
  auto M = to_fl_module(doc);
  CHECK(M.d == 2);
  auto r = run_check(doc, "fl_axioms");
  auto c = run_check(doc, "fl_criterion");
  CHECK(r.pass == std::get<bool>(field(c, "direct")));
}

TEST_CASE("etale document") {
  auto doc = parse_document("[ring]\np = 2\nf = 2\n[module]\nkind = etale\nrank = 2\n[phi]\n0, 1\n1, [1, 1]\n");
  auto V = to_etale_module(doc);
  CHECK(V.d == 2);
  CHECK(run_check(doc, "fixed_points", {0, -1, -1, 0, 24}).pass);
  CHECK(parse_document(serialize(doc)) == doc);
}

TEST_CASE("parse of serialize is the identity on random modules") {
  std::mt19937_64 rng(515);
  for (int t = 0; t < 20; ++t) {
    const i64 p = t % 2 ? 3 : 2;
    const int m = t % 3 == 2 ? 2 : 1;
    auto M = fixtures::random_finite_phi_module(p, m, 1 + static_cast<int>(rng() % 3), rng);
    Document doc;
    doc.p = p;
    doc.f = m;
    doc.modulus = m > 1 ? M.R->f() : std::vector<i64>{};
    doc.N = M.N;
    doc.rank = M.g;
    doc.b = M.kill_b;
    doc.rel = M.rel;
    doc.phi = M.Phi;
    auto back = parse_document(serialize(doc));
    CHECK(back == doc);
    auto M2 = to_phi_module(back);
    CHECK(M2.length() == M.length());
    CHECK(M2.phi_matrix() == M.phi_matrix());
  }
}
