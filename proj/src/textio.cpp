#include "prismalab/textio.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "prismalab/errors.hpp"

namespace prismalab {

namespace {

[[noreturn]] void fail(int line, int col, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// [b, e) with surrounding blanks removed
std::pair<size_t, size_t> trim(std::string_view s, size_t b, size_t e) {
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return {b, e};
}

struct Cursor {
  std::string_view s;
  size_t i = 0;
  int line = 0;
  int col0 = 1;  // column of s[0]

  [[noreturn]] void error(const std::string& msg) const { fail(line, col0 + static_cast<int>(i), msg); }
  void skip() {
    while (i < s.size() && is_space(s[i])) ++i;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  i64 integer() {
    skip();
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    i64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
    if (ec != std::errc()) error("expected an integer");
    i = static_cast<size_t>(ptr - s.data());
    return neg ? -v : v;
  }
};

// coefficient: integer or [c0, ..., c_{f-1}]
std::vector<i64> coefficient(Cursor& c, int m) {
  std::vector<i64> v(m, 0);
  if (c.accept('[')) {
    for (int j = 0; j < m; ++j) {
      if (j) c.expect(',');
      v[j] = c.integer();
    }
    c.expect(']');
  } else {
    v[0] = c.integer();
  }
  return v;
}

SeriesElem parse_series_at(const WittRingPtr& R, int N, std::string_view lit, int line, int col0) {
  Cursor c{lit, 0, line, col0};
  const int m = R->m();
  const Zpk& z = R->z();
  std::vector<i64> acc(static_cast<size_t>(N) * m, 0);
  if (c.done()) c.error("empty series literal");
  bool first = true;
  while (!c.done()) {
    i64 sign = 1;
    if (c.accept('+')) {
      if (first) c.error("unexpected '+'");
    } else if (c.accept('-')) {
      sign = -1;
    } else if (!first) {
      c.error("expected '+' or '-'");
    }
    first = false;
    std::vector<i64> coef(m, 0);
    coef[0] = 1;
    char ch = c.peek();
    bool has_coef = ch == '[' || (ch >= '0' && ch <= '9');
    if (has_coef) coef = coefficient(c, m);
    int deg = 0;
    bool star = has_coef && c.accept('*');
    if (c.peek() == 'u') {
      ++c.i;
      deg = 1;
      if (c.accept('^')) {
        i64 d = c.integer();
        if (d < 0) c.error("negative exponent");
        if (d >= N) c.error("degree " + std::to_string(d) + " not below N = " + std::to_string(N));
        deg = static_cast<int>(d);
      }
    } else if (star || !has_coef) {
      c.error("expected 'u'");
    }
    if (deg >= N) c.error("degree not below N = " + std::to_string(N));
    for (int j = 0; j < m; ++j) {
      i64& slot = acc[static_cast<size_t>(deg) * m + j];
      slot = z.red(slot + sign * z.red(coef[j]));
    }
  }
  SeriesElem s(R, N);
  for (int d = 0; d < N; ++d) {
    std::vector<i64> v(acc.begin() + d * m, acc.begin() + (d + 1) * m);
    s.set_coeff(d, R->elem(v));
  }
  return s;
}

struct Raw {
  std::string_view text;
  int line = 0;
  int col = 1;
};

// split a row on top-level commas
std::vector<Raw> split_row(const Raw& row) {
  std::vector<Raw> out;
  int depth = 0;
  size_t start = 0;
  auto push = [&](size_t b, size_t e) {
    auto [tb, te] = trim(row.text, b, e);
    if (tb == te) fail(row.line, row.col + static_cast<int>(b), "empty entry");
    out.push_back({row.text.substr(tb, te - tb), row.line, row.col + static_cast<int>(tb)});
  };
  for (size_t i = 0; i < row.text.size(); ++i) {
    char ch = row.text[i];
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      push(start, i);
      start = i + 1;
    }
  }
  push(start, row.text.size());
  return out;
}

std::vector<i64> int_list(const Raw& v) {
  std::vector<i64> out;
  for (const auto& e : split_row(v)) {
    Cursor c{e.text, 0, e.line, e.col};
    out.push_back(c.integer());
    if (!c.done()) c.error("trailing characters");
  }
  return out;
}

i64 single_int(const Raw& v) {
  Cursor c{v.text, 0, v.line, v.col};
  i64 x = c.integer();
  if (!c.done()) c.error("trailing characters");
  return x;
}

const std::vector<std::string> kBlocks{"ring", "module", "phi", "psi", "fil", "check"};
const std::map<std::string, std::vector<std::string>> kKeys{
    {"ring", {"p", "n", "f", "modulus", "N", "E"}},
    {"module", {"kind", "rank", "shape", "a", "b", "h", "exps"}},
    {"phi", {}},
    {"psi", {}},
    {"fil", {"level"}},
    {"check", {"name"}}};
const std::vector<std::string> kKinds{"phi", "kisin", "fl", "etale", "cyclo"};
const std::vector<std::string> kShapes{"finite", "free_plus_finite", "general"};

struct Row {
  std::string block;
  int level = 0;
  Raw raw;
};

SeriesMat matrix(const std::vector<Row>& rows, const std::string& block, const WittRingPtr& R, int N, int nrows,
                 int ncols, int fallback_line) {
  SeriesMat M;
  for (const auto& r : rows) {
    if (r.block != block) continue;
    auto entries = split_row(r.raw);
    if (ncols >= 0 && static_cast<int>(entries.size()) != ncols)
      fail(r.raw.line, r.raw.col, "row has " + std::to_string(entries.size()) + " entries, expected " +
                                      std::to_string(ncols));
    if (!M.empty() && entries.size() != M[0].size()) fail(r.raw.line, r.raw.col, "rows of unequal arity");
    M.emplace_back();
    for (const auto& e : entries) M.back().push_back(parse_series_at(R, N, e.text, e.line, e.col));
  }
  if (nrows >= 0 && static_cast<int>(M.size()) != nrows)
    fail(fallback_line, 1, "[" + block + "] has " + std::to_string(M.size()) + " rows, expected " +
                               std::to_string(nrows));
  return M;
}

std::string join_ints(const std::vector<i64>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

std::string coef_literal(const i64* c, int m) {
  if (m == 1) return std::to_string(c[0]);
  std::string s = "[";
  for (int j = 0; j < m; ++j) s += (j ? ", " : "") + std::to_string(c[j]);
  return s + "]";
}

}  // namespace

WittRingPtr Document::ring() const {
  if (p < 2 || !is_prime(p)) throw InvalidRing("p must be a prime");
  if (n < 1 || f < 1) throw InvalidRing("n and f must be positive");
  if (!modulus.empty()) return WittRing::make(p, n, f, modulus);
  if (f == 1) return WittRing::prime(p, n);
  return WittRing::residue_field(p, f)->with_precision(n);
}

SeriesElem parse_series(const WittRingPtr& R, int N, std::string_view lit) { return parse_series_at(R, N, lit, 1, 1); }

std::string series_literal(const SeriesElem& s) {
  const int m = s.m();
  std::string out;
  for (int d = 0; d <= s.degree(); ++d) {
    const i64* c = s.raw(d);
    if (std::all_of(c, c + m, [](i64 x) { return x == 0; })) continue;
    if (!out.empty()) out += " + ";
    bool unit = c[0] == 1 && std::all_of(c + 1, c + m, [](i64 x) { return x == 0; });
    if (d == 0) {
      out += coef_literal(c, m);
    } else {
      if (!unit) out += coef_literal(c, m) + "*";
      out += d == 1 ? "u" : "u^" + std::to_string(d);
    }
  }
  return out.empty() ? "0" : out;
}

Document parse_document(std::string_view text, int N_override) {
  Document doc;
  std::map<std::string, std::pair<Raw, std::string>> headers;  // "block.key" -> value
  std::vector<Row> rows;
  std::vector<std::string> seen;
  std::string block;
  int level = 0;
  bool level_set = false;
  int line_no = 0, last_line = 1;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    size_t hash = line.find('#');
    auto [b, e] = trim(line, 0, hash == std::string_view::npos ? line.size() : hash);
    if (b == e) {
      if (eol == text.size()) break;
      continue;
    }
    last_line = line_no;
    const int col = static_cast<int>(b) + 1;
    std::string_view body = line.substr(b, e - b);
    if (body.front() == '[' && body.back() == ']' && body.find('=') == std::string_view::npos &&
        std::none_of(body.begin(), body.end(), [](char c) { return c == ','; })) {
      std::string name(body.substr(1, body.size() - 2));
      if (std::find(kBlocks.begin(), kBlocks.end(), name) == kBlocks.end()) fail(line_no, col, "unknown block [" + name + "]");
      if (std::find(seen.begin(), seen.end(), name) != seen.end()) fail(line_no, col, "duplicate block [" + name + "]");
      if (seen.empty() && name != "ring") fail(line_no, col, "the first block must be [ring]");
      seen.push_back(name);
      block = name;
      level_set = false;
      continue;
    }
    if (block.empty()) fail(line_no, col, "content before the first block");
    size_t eq = body.find('=');
    if (eq != std::string_view::npos) {
      auto [kb, ke] = trim(body, 0, eq);
      auto [vb, ve] = trim(body, eq + 1, body.size());
      std::string key(body.substr(kb, ke - kb));
      const auto& keys = kKeys.at(block);
      if (std::find(keys.begin(), keys.end(), key) == keys.end())
        fail(line_no, col + static_cast<int>(kb), "unknown key '" + key + "' in [" + block + "]");
      if (vb == ve) fail(line_no, col + static_cast<int>(eq) + 1, "missing value");
      Raw val{body.substr(vb, ve - vb), line_no, col + static_cast<int>(vb)};
      if (block == "fil") {
        i64 lv = single_int(val);
        if (lv < 0) fail(val.line, val.col, "negative level");
        level = static_cast<int>(lv);
        level_set = true;
        continue;
      }
      if (block == "check") {
        for (const auto& nm : split_row(val)) doc.checks.emplace_back(nm.text);
        continue;
      }
      std::string full = block + "." + key;
      if (headers.count(full)) fail(line_no, col + static_cast<int>(kb), "duplicate key '" + key + "'");
      headers[full] = {val, std::string(val.text)};
      continue;
    }
    if (block == "ring" || block == "check") fail(line_no, col, "[" + block + "] takes key = value lines only");
    if (block == "fil" && !level_set) fail(line_no, col, "[fil] row before 'level ='");
    rows.push_back({block, level, {body, line_no, col}});
  }

  auto get = [&](const std::string& k) -> const Raw* {
    auto it = headers.find(k);
    return it == headers.end() ? nullptr : &it->second.first;
  };
  auto get_int = [&](const std::string& k, int lo, int def) {
    const Raw* r = get(k);
    if (!r) return def;
    i64 v = single_int(*r);
    if (v < lo || v > 1000000) fail(r->line, r->col, k + " out of range");
    return static_cast<int>(v);
  };
  auto get_word = [&](const std::string& k, const std::vector<std::string>& allowed, const std::string& def) {
    const Raw* r = get(k);
    if (!r) return def;
    std::string w(r->text);
    if (std::find(allowed.begin(), allowed.end(), w) == allowed.end()) fail(r->line, r->col, "unknown value '" + w + "'");
    return w;
  };

  if (seen.empty()) fail(1, 1, "missing [ring] block");
  const Raw* pr = get("ring.p");
  if (!pr) fail(1, 1, "[ring] needs p");
  doc.p = single_int(*pr);
  if (doc.p < 2 || !is_prime(doc.p)) fail(pr->line, pr->col, "p must be a prime");
  doc.n = get_int("ring.n", 1, 1);
  doc.f = get_int("ring.f", 1, 1);
  doc.N = N_override > 0 ? N_override : get_int("ring.N", 1, 8);
  if (const Raw* r = get("ring.modulus")) {
    doc.modulus = int_list(*r);
    if (static_cast<int>(doc.modulus.size()) != doc.f + 1) fail(r->line, r->col, "modulus needs f + 1 coefficients");
  }
  doc.kind = get_word("module.kind", kKinds, "phi");
  doc.rank = get_int("module.rank", 0, 0);
  doc.shape = get_word("module.shape", kShapes, "finite");
  doc.a = get_int("module.a", 0, 1);
  doc.b = get_int("module.b", 0, 0);
  doc.h = get_int("module.h", 0, 1);
  if (const Raw* r = get("module.exps")) {
    for (i64 x : int_list(*r)) doc.exps.push_back(static_cast<int>(x));
    if (static_cast<int>(doc.exps.size()) != doc.rank) fail(r->line, r->col, "exps needs rank entries");
  }

  WittRingPtr R;
  try {
    R = doc.ring();
  } catch (const Error& e) {
    fail(pr->line, pr->col, e.what());
  }
  if (const Raw* r = get("ring.E")) {
    std::string v(r->text);
    if (v == "cyclo" || v.rfind("cyclo:", 0) == 0) {
      if (v.size() > 6) single_int({r->text.substr(6), r->line, r->col + 6});
      doc.E = v;
    } else {
      auto s = parse_series_at(R, std::max(doc.N, 64), r->text, r->line, r->col);
      doc.E = series_literal(s);
    }
  }
  const int g = doc.rank;
  const bool constants = doc.kind == "etale" || doc.kind == "fl";
  if (doc.kind != "fl") {
    doc.rel = matrix(rows, "module", R, doc.N, g > 0 && doc.kind != "etale" ? g : 0, -1, last_line);
    doc.phi = matrix(rows, "phi", R, doc.N, g, g, last_line);
    bool has_psi = std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.block == "psi"; });
    if (has_psi || doc.kind == "kisin") doc.psi = matrix(rows, "psi", R, doc.N, g, g, last_line);
  } else {
    matrix(rows, "module", R, doc.N, 0, -1, last_line);
    matrix(rows, "phi", R, doc.N, 0, -1, last_line);
  }
  for (const auto& r : rows) {
    if (r.block != "fil") continue;
    if (doc.kind != "fl") fail(r.raw.line, r.raw.col, "[fil] rows need kind = fl");
    auto entries = split_row(r.raw);
    if (static_cast<int>(entries.size()) != 2 * g)
      fail(r.raw.line, r.raw.col, "fil row needs " + std::to_string(2 * g) + " entries");
    FilEntry fe;
    fe.level = r.level;
    for (int k = 0; k < 2 * g; ++k) {
      auto s = parse_series_at(R, doc.N, entries[k].text, entries[k].line, entries[k].col);
      if (s.degree() > 0) fail(entries[k].line, entries[k].col, "fil entries are constants");
      (k < g ? fe.gen : fe.image).push_back(s.coeff(0));
    }
    doc.fil.push_back(std::move(fe));
  }
  if (constants && doc.kind == "etale")
    for (const auto& row : doc.phi)
      for (const auto& x : row)
        if (x.degree() > 0) fail(last_line, 1, "etale Frobenius entries are constants");
  return doc;
}

std::string serialize(const Document& doc) {
  std::ostringstream os;
  os << "[ring]\np = " << doc.p << "\nn = " << doc.n << "\nf = " << doc.f << "\n";
  if (!doc.modulus.empty()) os << "modulus = " << join_ints(doc.modulus) << "\n";
  os << "N = " << doc.N << "\n";
  if (!doc.E.empty()) os << "E = " << doc.E << "\n";
  os << "\n[module]\nkind = " << doc.kind << "\nrank = " << doc.rank << "\nshape = " << doc.shape << "\na = " << doc.a
     << "\nb = " << doc.b << "\nh = " << doc.h << "\n";
  if (!doc.exps.empty()) os << "exps = " << join_ints(std::vector<i64>(doc.exps.begin(), doc.exps.end())) << "\n";
  auto rows = [&](const SeriesMat& M) {
    for (const auto& r : M) {
      for (size_t j = 0; j < r.size(); ++j) os << (j ? ", " : "") << series_literal(r[j]);
      os << "\n";
    }
  };
  rows(doc.rel);
  if (!doc.phi.empty()) {
    os << "\n[phi]\n";
    rows(doc.phi);
  }
  if (!doc.psi.empty()) {
    os << "\n[psi]\n";
    rows(doc.psi);
  }
  if (!doc.fil.empty()) {
    os << "\n[fil]\n";
    std::optional<int> cur;
    for (const auto& fe : doc.fil) {
      if (cur != fe.level) os << "level = " << fe.level << "\n";
      cur = fe.level;
      const int m = fe.gen.empty() ? 1 : static_cast<int>(fe.gen[0].c.size());
      bool first = true;
      for (const auto* v : {&fe.gen, &fe.image})
        for (const auto& x : *v) {
          os << (first ? "" : ", ") << coef_literal(x.c.data(), m);
          first = false;
        }
      os << "\n";
    }
  }
  if (!doc.checks.empty()) {
    os << "\n[check]\nname = ";
    for (size_t i = 0; i < doc.checks.size(); ++i) os << (i ? ", " : "") << doc.checks[i];
    os << "\n";
  }
  return os.str();
}

namespace {

Shape shape_of(const std::string& s) {
  if (s == "finite") return Shape::Finite;
  if (s == "free_plus_finite") return Shape::FreePlusFinite;
  return Shape::General;
}

}  // namespace

PhiModule to_phi_module(const Document& doc) {
  auto R = doc.ring();
  if (doc.rank == 0) return PhiModule::zero(R);
  return PhiModule::make(R, doc.rank, doc.rel, doc.phi, shape_of(doc.shape), doc.a, doc.b, doc.N);
}

KisinModule to_kisin_module(const Document& doc) {
  KisinModule K{to_phi_module(doc), doc.h, doc.psi, {}};
  auto R = doc.ring();
  if (doc.E.empty() || doc.E == "cyclo") {
    K.E = EisensteinPoly::cyclotomic(R, 1);
  } else if (doc.E.rfind("cyclo:", 0) == 0) {
    K.E = EisensteinPoly::cyclotomic(R, std::stoi(doc.E.substr(6)));
  } else {
    auto s = parse_series(R, 64, doc.E);
    std::vector<WittElem> c;
    for (int d = 0; d <= s.degree(); ++d) c.push_back(s.coeff(d));
    K.E = EisensteinPoly::explicit_coeffs(R, c);
  }
  return K;
}

FLModule to_fl_module(const Document& doc) {
  auto R = doc.ring();
  std::vector<int> a = doc.exps.empty() ? std::vector<int>(doc.rank, doc.n) : doc.exps;
  std::vector<std::vector<WittVec>> fil(doc.h + 1), phis(doc.h + 1);
  for (const auto& fe : doc.fil) {
    if (fe.level > doc.h) throw ParseError("fil level " + std::to_string(fe.level) + " exceeds h");
    fil[fe.level].push_back(fe.gen);
    phis[fe.level].push_back(fe.image);
  }
  return FLModule::make(R, a, doc.h, fil, phis);
}

EtalePhiModule to_etale_module(const Document& doc) {
  auto k = doc.ring();
  std::vector<std::vector<WittElem>> A;
  for (const auto& row : doc.phi) {
    A.emplace_back();
    for (const auto& x : row) A.back().push_back(x.coeff(0));
  }
  return EtalePhiModule::make(k, A);
}

}  // namespace prismalab
