#include "prismalab/checks.hpp"

#include <algorithm>
#include <map>

#include "prismalab/breuil.hpp"
#include "prismalab/cyclo.hpp"
#include "prismalab/decomposition.hpp"
#include "prismalab/errors.hpp"

namespace prismalab {

namespace {

std::vector<i64> as_i64(const std::vector<int>& v) { return {v.begin(), v.end()}; }

Report cyclo_check(const Document& doc, const std::string& name, const CheckOptions& opt) {
  auto I = CycloInstance::make(doc.p, doc.n, opt.bound, opt.D, opt.slack);
  Report r;
  r.add("p", doc.p);
  r.add("n", static_cast<i64>(doc.n));
  r.add("e", static_cast<i64>(I.e));
  if (name == "sharpness" || name == "h2") {
    auto h = h2_torsion_report(I);
    r.add("i", static_cast<i64>(h.i));
    r.add("alpha", static_cast<i64>(h.alpha));
    r.add("bound_num", static_cast<i64>(h.bound_num));
    r.add("bound_den", static_cast<i64>(h.bound_den));
    r.add("equal", h.equal);
    r.add("length", h.length);
    r.add("torsion_length", h.torsion_length);
    r.add("inclusion_lhs", static_cast<i64>(h.inclusion.lhs));
    r.add("inclusion_rhs", static_cast<i64>(h.inclusion.rhs));
    r.add("inclusion", h.inclusion.holds);
    if (h.boundary) r.add("boundary", h.boundary->pass());
    r.add("fixed_dim", static_cast<i64>(h.fixed_dim));
    r.pass = h.pass() && h.alpha == I.q;
    if (name == "h2") r.pass = h.pass();
  } else if (name == "kernel") {
    r.add("B", static_cast<i64>(I.B));
    r.pass = true;
    const int lo = opt.m > 0 ? opt.m : 1, hi = opt.m > 0 ? opt.m : doc.n;
    for (int m = lo; m <= hi; ++m) {
      auto k = ker_phi_minus_d(I, m);
      const std::string pre = "m" + std::to_string(m) + ".";
      r.add(pre + "length", k.length);
      r.add(pre + "generator", k.gens.empty() ? std::string("0") : series_literal(k.gens[0]));
      r.add(pre + "cyclic_by_g", k.generated_by_g);
      r.add(pre + "band_empty", k.band_empty);
      r.add(pre + "closed", k.closed);
      r.pass = r.pass && k.pass();
    }
  } else if (name == "mingens") {
    auto j = ideal_j_mingens(I);
    r.add("D", static_cast<i64>(j.D));
    r.add("K", static_cast<i64>(j.K));
    r.add("mu", static_cast<i64>(j.mu));
    r.add("mu_at_D_plus_e", static_cast<i64>(j.mu_check));
    r.add("free", j.mu == 1);
    r.pass = j.mu == j.mu_check;
  } else if (name == "identity") {
    r.pass = I.d_identity();
  } else if (name == "h1") {
    // free of rank 2 with phi(e2) = a e1 + d e2; a is recorded, nothing depends on it
    r.add("rank", i64{2});
    r.add("a", opt.a);
    r.add("d", series_literal(I.d.E));
    r.pass = true;
    r.note = "the constant a is an input; no claim depends on it";
  }
  return r;
}

Report phi_check(const Document& doc, const std::string& name) {
  Report r;
  if (doc.kind == "kisin" && (name == "height" || name == "breuil")) {
    auto K = to_kisin_module(doc);
    if (name == "height") {
      r.pass = height_check(K);
    } else {
      auto B = kisin_to_breuil(K);
      auto c = is_breuil_module(B);
      r.pass = c.ok;
      if (!c.ok) {
        r.add("axiom", c.axiom);
        r.add("detail", c.detail);
      }
    }
    return r;
  }
  auto M = to_phi_module(doc);
  if (M.is_finite()) r.add("length", M.length());
  if (name == "well_defined") {
    r.pass = true;
  } else if (name == "u_torsion") {
    r.add("torsion_length", u_torsion(M).length());
    r.pass = true;
  } else if (name == "alpha") {
    r.add("alpha", static_cast<i64>(annihilator_alpha(M)));
    r.pass = true;
  } else if (name == "ann_exponents") {
    auto x = annihilator_exponents(M);
    r.add("beta", static_cast<i64>(x.beta));
    r.add("gamma", static_cast<i64>(x.gamma));
    r.pass = true;
    r.note = "measured only";
  } else if (name == "zp_shape") {
    auto s = zp_shape(M);
    r.add("refuted", s.refuted);
    r.add("lengths", s.lengths);
    if (s.refuted) {
      r.add("fail_j", static_cast<i64>(s.fail_j));
      r.add("witness", std::vector<i64>(s.witness.data(), s.witness.data() + s.witness.size()));
    } else {
      r.add("exponents", as_i64(s.exponents));
      r.add("certified", s.certified);
    }
    r.pass = !s.refuted && s.certified;
  } else if (name == "split") {
    auto sp = split_phi_module(M);
    r.add("len_mult", sp.len_mult);
    r.add("len_nilp", sp.len_nilp);
    r.add("phi_stable", sp.phi_stable);
    r.add("mult_surjective", sp.mult_surjective);
    r.add("nilp_nilpotent", sp.nilp_nilpotent);
    r.pass = sp.ok();
  } else if (name == "boundary") {
    auto b = boundary_structure_check(M);
    r.add("killed_by_p_u", b.killed_by_p_u);
    r.add("phi_bijective", b.phi_bijective);
    r.pass = b.pass();
  } else if (name == "twist") {
    auto t = twist_u_torsion_iso(M);
    r.add("len_source", t.len_source);
    r.add("len_target", t.len_target);
    r.pass = t.bijective();
  }
  return r;
}

Report fl_check(const Document& doc, const std::string& name) {
  auto M = to_fl_module(doc);
  Report r;
  r.add("length", M.length());
  auto c = is_fl_module(M);
  if (name == "fl_axioms") {
    r.pass = c.ok;
    if (!c.ok) {
      r.add("axiom", c.axiom);
      r.add("detail", c.detail);
    }
  } else if (name == "fl_criterion") {
    bool crit = fl_criterion(M);
    r.add("criterion", crit);
    r.add("direct", c.ok);
    r.pass = crit;
  } else if (name == "split_fl") {
    auto s = split_fl(M);
    r.add("len_mult", s.mult.length());
    r.add("len_nilp", s.nilp.length());
    r.add("fil_trivial", s.fil_trivial);
    r.pass = s.ok();
  } else if (name == "split_compat") {
    r.pass = check_split_compat(M);
  }
  return r;
}

Report etale_check(const Document& doc, const CheckOptions& opt) {
  auto V = to_etale_module(doc);
  auto fp = etale_fixed_points(V, opt.t_max);
  IMat B = V.fp_matrix();
  Report r;
  r.add("t", static_cast<i64>(fp.t));
  r.add("dims", as_i64(fp.dims));
  bool ok = fp.dims.back() == V.k->m() * V.d;
  for (int s = 1; s <= fp.t; ++s) ok = ok && enumerate_fixed_dimension(B, V.k->p(), s) == fp.dims[s - 1];
  r.add("matches_enumeration", ok);
  r.pass = ok;
  return r;
}

}  // namespace

const std::vector<std::string>& check_names(const std::string& kind) {
  static const std::map<std::string, std::vector<std::string>> names{
      {"cyclo", {"sharpness", "h2", "kernel", "mingens", "identity", "h1"}},
      {"phi", {"well_defined", "u_torsion", "alpha", "ann_exponents", "zp_shape", "split", "boundary", "twist"}},
      {"kisin", {"well_defined", "u_torsion", "alpha", "ann_exponents", "zp_shape", "split", "boundary", "twist", "height", "breuil"}},
      {"fl", {"fl_axioms", "fl_criterion", "split_fl", "split_compat"}},
      {"etale", {"fixed_points"}}};
  auto it = names.find(kind);
  if (it == names.end()) throw UnknownCheck("unknown module kind " + kind);
  return it->second;
}

Report run_check(const Document& doc, const std::string& name, const CheckOptions& opt) {
  const auto& allowed = check_names(doc.kind);
  if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
    throw UnknownCheck("no check '" + name + "' for kind " + doc.kind);
  Report r;
  if (doc.kind != "cyclo" && doc.rank == 0) {
    r.pass = true;
    r.note = "vacuous pass: empty module";
  } else if (doc.kind == "cyclo") {
    r = cyclo_check(doc, name, opt);
  } else if (doc.kind == "fl") {
    r = fl_check(doc, name);
  } else if (doc.kind == "etale") {
    r = etale_check(doc, opt);
  } else {
    r = phi_check(doc, name);
  }
  r.check = name;
  return r;
}

}  // namespace prismalab
