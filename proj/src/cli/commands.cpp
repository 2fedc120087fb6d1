#include "npc/cli/commands.hpp"

#include "npc/cohomlin/cohomology.hpp"
#include "npc/cohomlin/naka.hpp"
#include "npc/flows/hamiltonian_flow.hpp"
#include "npc/modular/modular_class.hpp"
#include "npc/nambu/validity.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace npc {

namespace {

using json = nlohmann::ordered_json;

struct Outcome {
  bool ok = true;
  std::vector<std::string> lines;
  json result = json::object();
  json certificates = json::array();
};

struct Context {
  const ModelFile& model;
  const CommandOptions& opts;
  const std::string& command;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

void need_args(const Context& c, std::size_t min, std::size_t max, const std::string& usage) {
  if (c.opts.args.size() < min || c.opts.args.size() > max) {
    throw UsageError("usage: nambu " + c.command + " <model-file> " + usage);
  }
}

int need_bound(const Context& c) {
  if (!c.opts.degree_bound) throw UsageError(c.command + " requires --degree-bound");
  if (*c.opts.degree_bound < 0) throw UsageError("--degree-bound must be non-negative");
  return *c.opts.degree_bound;
}

const NambuStructure& structure_arg(const Context& c, std::size_t i) {
  const std::string& name = c.opts.args.at(i);
  const Binding* b = c.model.find(name);
  if (!b) throw UsageError("unknown name '" + name + "'");
  if (!b->structure) throw UsageError("'" + name + "' is not a lambda binding");
  return *b->structure;
}

// Volume from --volume, else from positional slot i, else the standard volume.
VolumeSpec volume_arg(const Context& c, std::size_t i, std::string& label) {
  std::optional<std::string> name = c.opts.volume;
  if (!name && c.opts.args.size() > i) name = c.opts.args[i];
  if (!name) {
    label = "std";
    return VolumeSpec::standard(c.model.chart());
  }
  const Binding* b = c.model.find(*name);
  if (!b) throw UsageError("unknown name '" + *name + "'");
  if (!b->volume) throw UsageError("'" + *name + "' is not a volume binding");
  label = *name;
  return *b->volume;
}

RationalFunction scalar_arg(const Context& c, const std::string& text) {
  try {
    return evaluate_scalar(c.model, text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("in argument '") + text + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

GradedTensor tensor_arg(const Context& c, const std::string& text) {
  try {
    return evaluate_tensor(c.model, text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("in argument '") + text + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

FamilyKind family_arg(const Context& c, FamilyKind fallback) {
  if (!c.opts.family) return fallback;
  if (*c.opts.family == "coords") return FamilyKind::coords;
  if (*c.opts.family == "quadratics") return FamilyKind::quadratics;
  throw UsageError("--family must be 'coords' or 'quadratics'");
}

std::string names_of(const std::vector<RationalFunction>& family, const std::vector<std::size_t>& idx,
                     const ChartPtr& chart) {
  std::vector<std::string> parts;
  for (std::size_t i : idx) parts.push_back(family[i].to_string(chart->names()));
  return "(" + join(parts, ", ") + ")";
}

std::string dims(std::size_t v) { return std::to_string(v); }

// ---------------------------------------------------------------------------

Outcome cmd_check(const Context& c) {
  need_args(c, 1, 1, "<lambda>");
  const NambuStructure& s = structure_arg(c, 0);
  const FamilyKind kind = family_arg(c, FamilyKind::quadratics);
  const ValidityReport v = validate(s, kind);
  const auto& fi = v.fundamental_identity;
  const auto& chart = s.chart();
  Outcome o;
  o.ok = v.valid();
  o.lines.push_back("check " + c.opts.args[0] + ": " + (o.ok ? "pass" : "FAIL"));
  o.lines.push_back("  family: " + fi.family_name + " (" + dims(fi.family.size()) + " functions)");
  o.lines.push_back("  fundamental identity: " + std::string(fi.pass ? "pass" : "FAIL") + " (" + dims(fi.pairs_checked) +
                    " pairs checked, " + dims(fi.violation_count) + " violations)");
  json violations = json::array();
  for (const auto& viol : fi.violations) {
    const std::string f = names_of(fi.family, viol.f_tuple, chart);
    const std::string g = names_of(fi.family, viol.g_tuple, chart);
    const std::string r = viol.residual.to_string(chart->names());
    o.lines.push_back("    f=" + f + " g=" + g + " residual " + r);
    violations.push_back({{"f", f}, {"g", g}, {"residual", r}});
  }
  const auto& dec = v.decomposability;
  o.lines.push_back("  decomposability: " + std::string(dec.pass ? "pass" : "FAIL"));
  if (!dec.pass) {
    o.lines.push_back("    witness " + dec.witness->to_string() + " residual " + dec.residual->to_string());
  }
  const std::string caveat = "the fundamental identity is tested on a finite family; passing is a necessary condition";
  o.lines.push_back("  note: " + caveat);
  o.result = {{"valid", o.ok},
              {"family", fi.family_name},
              {"family_size", fi.family.size()},
              {"fundamental_identity",
               {{"pass", fi.pass}, {"pairs_checked", fi.pairs_checked}, {"violation_count", fi.violation_count}}},
              {"decomposability", {{"pass", dec.pass}}},
              {"caveat", caveat}};
  o.certificates = violations;
  if (!dec.pass) {
    o.certificates.push_back({{"decomposability_witness", dec.witness->to_string()},
                              {"residual", dec.residual->to_string()}});
  }
  return o;
}

Outcome cmd_sharp(const Context& c) {
  need_args(c, 2, 2, "<lambda> <form>");
  const NambuStructure& s = structure_arg(c, 0);
  const GradedTensor alpha = tensor_arg(c, c.opts.args[1]);
  if (!alpha.is_form() && alpha.degree() > 0) throw UsageError("sharp expects a form");
  if (alpha.degree() > s.order()) throw UsageError("form degree exceeds the order");
  const Multivector r = sharp(s, alpha.degree(), alpha);
  Outcome o;
  o.lines.push_back("sharp_" + std::to_string(alpha.degree()) + "(" + alpha.to_string() + ") = " + r.to_string());
  o.result = {{"degree", alpha.degree()}, {"value", r.to_string()}};
  return o;
}

Outcome cmd_hamiltonian(const Context& c) {
  if (c.opts.args.empty()) throw UsageError("usage: nambu hamiltonian <model-file> <lambda> <f1> ... <f_{n-1}>");
  const NambuStructure& s = structure_arg(c, 0);
  need_args(c, s.order(), s.order(), "<lambda> <f1> ... <f_{n-1}>");
  std::vector<RationalFunction> fs;
  for (std::size_t i = 1; i < c.opts.args.size(); ++i) fs.push_back(scalar_arg(c, c.opts.args[i]));
  const Multivector x = hamiltonian_vf(s, fs);
  Outcome o;
  o.lines.push_back("X_(" + join(std::vector<std::string>(c.opts.args.begin() + 1, c.opts.args.end()), ", ") + ") = " +
                    x.to_string());
  o.result = {{"field", x.to_string()}};
  return o;
}

Outcome cmd_bracket(const Context& c) {
  need_args(c, 3, 3, "<lambda> <form> <form>");
  const NambuStructure& s = structure_arg(c, 0);
  const GradedTensor a = tensor_arg(c, c.opts.args[1]);
  const GradedTensor b = tensor_arg(c, c.opts.args[2]);
  if (!a.is_form() || !b.is_form() || a.degree() != s.order() - 1 || b.degree() != s.order() - 1) {
    throw UsageError("bracket expects two forms of degree n-1");
  }
  const Form r = leibniz_bracket(s, a, b);
  Outcome o;
  o.lines.push_back("[[" + a.to_string() + ", " + b.to_string() + "]] = " + r.to_string());
  o.result = {{"value", r.to_string()}};
  return o;
}

Outcome cmd_modular(const Context& c) {
  need_args(c, 1, 2, "<lambda> [volume]");
  const NambuStructure& s = structure_arg(c, 0);
  std::string vname;
  const VolumeSpec v = volume_arg(c, 1, vname);
  const Multivector m = modular_tensor(s, v);
  Outcome o;
  o.lines.push_back("modular tensor of " + c.opts.args[0] + " w.r.t. " + vname + " = " + m.to_string());
  o.result = {{"volume", v.to_string()}, {"modular_tensor", m.to_string()}, {"zero", m.is_zero()}};
  return o;
}

Outcome cmd_potential(const Context& c) {
  need_args(c, 1, 2, "<lambda> [volume] --degree-bound D");
  const NambuStructure& s = structure_arg(c, 0);
  std::string vname;
  const VolumeSpec v = volume_arg(c, 1, vname);
  const int bound = need_bound(c);
  const PotentialResult r = modular_potential(s, v, bound);
  Outcome o;
  o.ok = r.feasible;
  o.result = {{"volume", v.to_string()}, {"modular_tensor", r.modular.to_string()}, {"feasible", r.feasible}};
  if (r.feasible) {
    const std::string f = r.potential->to_string(s.chart()->names());
    o.lines.push_back("potential found at bound " + std::to_string(bound) + ": f = " + f);
    o.result["potential"] = f;
  } else {
    o.lines.push_back("infeasible at bound " + std::to_string(bound) + ": no f with M = (-1)^(n-1) #1(df)");
    o.lines.push_back("  certificate (left kernel vector y with y.A = 0, y.M != 0):");
    for (const auto& l : r.certificate_labels) {
      o.lines.push_back("    " + l);
      o.certificates.push_back(l);
    }
  }
  return o;
}

Outcome cmd_basic_volume(const Context& c) {
  need_args(c, 1, 3, "<lambda> [volume] [potential]");
  const NambuStructure& s = structure_arg(c, 0);
  std::string vname;
  const VolumeSpec v = volume_arg(c, 1, vname);
  Polynomial f(s.dim());
  if (c.opts.args.size() == 3) {
    auto p = scalar_arg(c, c.opts.args[2]).as_polynomial();
    if (!p) throw UsageError("potential must be a polynomial");
    f = *p;
  }
  Outcome o;
  try {
    const WeightedForm mu = basic_volume(s, v, f);
    const FamilyKind kind = family_arg(c, FamilyKind::coords);
    const BasicReport check = check_basic(s, mu, default_family(s.chart(), kind));
    o.ok = check.pass;
    o.lines.push_back("basic volume mu = " + mu.to_string());
    o.lines.push_back("  check on " + family_name(kind) + ": " + (check.pass ? "pass" : "FAIL") + " (" +
                      dims(check.tuples_checked) + " tuples)");
    for (const auto& viol : check.violations) {
      o.lines.push_back("    " + viol.condition + " condition fails: " + viol.residual.to_string());
      o.certificates.push_back({{"condition", viol.condition}, {"residual", viol.residual.to_string()}});
    }
    o.result = {{"mu", mu.to_string()}, {"basic", check.pass}, {"tuples_checked", check.tuples_checked}};
  } catch (const PreconditionError& e) {
    o.ok = false;
    o.lines.push_back(std::string("no basic volume: ") + e.what());
    o.result = {{"mu", nullptr}, {"basic", false}, {"reason", e.what()}};
  }
  return o;
}

Outcome cmd_delta(const Context& c) {
  need_args(c, 1, 2, "<multivector> [volume]");
  const GradedTensor p = tensor_arg(c, c.opts.args[0]);
  if (p.is_form() && p.degree() > 0) throw UsageError("delta expects a multivector");
  if (p.degree() < 1) throw UsageError("delta expects a multivector of degree at least 1");
  std::string vname;
  const VolumeSpec v = volume_arg(c, 1, vname);
  const Multivector r = delta(v, p);
  Outcome o;
  o.lines.push_back("delta_" + vname + "(" + p.to_string() + ") = " + r.to_string());
  o.result = {{"volume", v.to_string()}, {"value", r.to_string()}};
  return o;
}

Outcome cmd_h1_top(const Context& c) {
  need_args(c, 1, 1, "<lambda> --degree-bound D");
  const NambuStructure& s = structure_arg(c, 0);
  if (!s.is_top_order()) throw UsageError("h1-top needs a top-order structure (dimension = order)");
  const int bound = need_bound(c);
  const Polynomial f = s.top_coefficient();
  if (bound < f.total_degree() - 1) throw UsageError("--degree-bound must be at least deg f - 1");
  const H1TopResult r = np_h1_top(f, bound);
  const Form df = differential(s.chart(), RationalFunction(f));
  Outcome o;
  o.lines.push_back("H1_NP at bound " + std::to_string(bound) + " = " + dims(r.dimension) + " (cocycles " +
                    dims(r.cocycles) + ", coboundaries " + dims(r.coboundaries) + ")");
  json reps = json::array();
  for (const auto& rep : r.representatives) {
    const CongruenceResult cg = h1_top_congruence(f, bound, rep, df);
    std::string line = "  representative " + rep.to_string();
    json entry = {{"form", rep.to_string()}};
    if (cg.member) {
      line += "  ~ " + rational_to_string(cg.target_coefficient) + " * d(" + f.to_string(s.chart()->names()) + ")";
      entry["df_coefficient"] = rational_to_string(cg.target_coefficient);
    }
    o.lines.push_back(line);
    reps.push_back(entry);
  }
  o.result = {{"dimension", r.dimension}, {"cocycles", r.cocycles}, {"coboundaries", r.coboundaries},
              {"representatives", reps}};
  return o;
}

Outcome cmd_foliated(const Context& c) {
  need_args(c, 1, 1, "<lambda> --degree k --degree-bound D");
  const NambuStructure& s = structure_arg(c, 0);
  const int bound = need_bound(c);
  if (!c.opts.degree) throw UsageError("foliated requires --degree");
  if (*c.opts.degree < 0 || *c.opts.degree > s.order()) throw UsageError("--degree must lie in 0..n");
  const FoliatedResult r = foliated_cohomology_dim(s, *c.opts.degree, bound);
  Outcome o;
  std::string line = "foliated H" + std::to_string(r.degree) + " at bound " + std::to_string(bound) + " = " +
                     dims(r.dimension);
  if (r.previous) line += " (bound " + std::to_string(bound - 1) + ": " + dims(*r.previous) + (r.stable() ? ", stable)" : ", not stable)");
  o.lines.push_back(line);
  o.result = {{"degree", r.degree},
              {"dimension", r.dimension},
              {"cocycles", r.cocycles},
              {"coboundaries", r.coboundaries},
              {"previous", r.previous ? json(*r.previous) : json(nullptr)},
              {"stable", r.stable()}};
  return o;
}

Outcome cmd_canonical(const Context& c) {
  need_args(c, 1, 2, "<lambda> [volume] --degree k --degree-bound D");
  const NambuStructure& s = structure_arg(c, 0);
  std::string vname;
  const VolumeSpec v = volume_arg(c, 1, vname);
  const int bound = need_bound(c);
  if (!c.opts.degree) throw UsageError("canonical-homology requires --degree");
  if (*c.opts.degree < 0 || *c.opts.degree > s.order()) throw UsageError("--degree must lie in 0..n");
  const HomologyResult r = canonical_homology_dim(s, v, *c.opts.degree, bound);
  Outcome o;
  o.lines.push_back("canonical H" + std::to_string(r.degree) + " at bound " + std::to_string(bound) + " = " +
                    dims(r.dimension) + " (chains " + dims(r.chains) + ", cycles " + dims(r.cycles) + ", boundaries " +
                    dims(r.boundaries) + ")");
  o.result = {{"degree", r.degree},
              {"dimension", r.dimension},
              {"chains", r.chains},
              {"cycles", r.cycles},
              {"boundaries", r.boundaries}};
  return o;
}

Outcome cmd_subcomplex(const Context& c) {
  need_args(c, 1, 2, "<lambda> [volume] --degree-bound D");
  const NambuStructure& s = structure_arg(c, 0);
  std::string vname;
  const VolumeSpec v = volume_arg(c, 1, vname);
  const int bound = need_bound(c);
  const MembershipResult r = subcomplex_check(s, v, bound);
  Outcome o;
  o.ok = r.member;
  o.result = {{"member", r.member}, {"modular_tensor", r.modular.to_string()}};
  if (r.member) {
    o.lines.push_back("yes: M = #1(alpha) with alpha = " + r.witness->to_string());
    o.result["witness"] = r.witness->to_string();
    o.certificates.push_back({{"witness", r.witness->to_string()}});
  } else {
    o.lines.push_back("no: M is not in #1 of 1-forms of degree <= " + std::to_string(bound));
    for (const auto& l : r.certificate_labels) {
      o.lines.push_back("    " + l);
      o.certificates.push_back(l);
    }
  }
  return o;
}

Outcome cmd_duality(const Context& c) {
  need_args(c, 1, 2, "<lambda> [volume] --degree-bound D");
  const NambuStructure& s = structure_arg(c, 0);
  std::string vname;
  const VolumeSpec v = volume_arg(c, 1, vname);
  const int bound = need_bound(c);
  const DualityReport r = duality_report(s, v, bound);
  Outcome o;
  o.ok = r.holds;
  o.lines.push_back("duality table at bound " + std::to_string(bound) + " (order " + std::to_string(r.order) + ")");
  o.lines.push_back("  k  NP  foliated  canonical(n-k)");
  json rows = json::array();
  for (const auto& row : r.rows) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %d  %-3s %-9zu %zu", row.degree, row.np ? std::to_string(*row.np).c_str() : "n/a",
                  row.foliated, row.canonical);
    o.lines.push_back(buf);
    rows.push_back({{"k", row.degree},
                    {"np", row.np ? json(*row.np) : json(nullptr)},
                    {"foliated", row.foliated},
                    {"canonical", row.canonical},
                    {"canonical_degree", r.order - row.degree}});
  }
  o.lines.push_back(r.verdict);
  o.result = {{"rows", rows}, {"holds", r.holds}, {"verdict", r.verdict}};
  return o;
}

Polynomial project(const Context& c, const std::string& text, std::size_t vars) {
  auto p = scalar_arg(c, text).as_polynomial();
  if (!p) throw UsageError("'" + text + "' is not a polynomial");
  if (c.model.chart()->dim() < vars) throw UsageError("chart has fewer than " + std::to_string(vars) + " coordinates");
  Polynomial out(vars);
  for (const auto& [e, coeff] : p->terms()) {
    for (std::size_t i = vars; i < e.size(); ++i) {
      if (e[i] != 0) throw UsageError("'" + text + "' uses coordinates beyond the first " + std::to_string(vars));
    }
    out.add_term(Exponent(e.begin(), e.begin() + static_cast<long>(vars)), coeff);
  }
  return out;
}

Outcome cmd_naka_pair(const Context& c) {
  need_args(c, 2, 2, "<P> <Q>");
  const Polynomial p = project(c, c.opts.args[0], 2);
  const Polynomial q = project(c, c.opts.args[1], 2);
  const NakaPairResult r = naka_pair(p, q);
  const auto names = std::vector<std::string>(c.model.chart()->names().begin(), c.model.chart()->names().begin() + 2);
  Outcome o;
  o.ok = r.applicable && r.found && r.verified;
  if (!r.applicable || !r.found) {
    o.lines.push_back("not applicable: " + r.reason);
    o.result = {{"applicable", r.applicable}, {"reason", r.reason}};
    return o;
  }
  o.lines.push_back("a = " + rational_to_string(r.a) + ", b = " + rational_to_string(r.b) + ", P~ = " +
                    r.p_tilde.to_string(names) + ", Q~ = " + r.q_tilde.to_string(names));
  o.lines.push_back(std::string("  re-substitution: ") + (r.verified ? "exact" : "FAILED"));
  o.lines.push_back("  form: P = a*x1 + b*x2 + s*P~, Q = -b*x1 + a*x2 + s*Q~, s = x1^2 + x2^2");
  o.result = {{"applicable", true},
              {"form", "Q = -b*x1 + a*x2 + s*Q~"},
              {"a", rational_to_string(r.a)},
              {"b", rational_to_string(r.b)},
              {"p_tilde", r.p_tilde.to_string(names)},
              {"q_tilde", r.q_tilde.to_string(names)},
              {"verified", r.verified}};
  return o;
}

Outcome cmd_naka_triple(const Context& c) {
  need_args(c, 3, 3, "<A> <B> <C>");
  const Polynomial a = project(c, c.opts.args[0], 3);
  const Polynomial b = project(c, c.opts.args[1], 3);
  const Polynomial cc = project(c, c.opts.args[2], 3);
  const NakaTripleResult r = naka_triple(a, b, cc);
  const auto names = std::vector<std::string>(c.model.chart()->names().begin(), c.model.chart()->names().begin() + 3);
  Outcome o;
  o.ok = r.applicable && r.found && r.verified;
  if (!r.applicable || !r.found) {
    o.lines.push_back("not applicable: " + r.reason);
    o.result = {{"applicable", r.applicable}, {"reason", r.reason}};
    return o;
  }
  o.lines.push_back("a = " + rational_to_string(r.a) + ", A~ = " + r.a_tilde.to_string(names) + ", B~ = " +
                    r.b_tilde.to_string(names) + ", C~ = " + r.c_tilde.to_string(names));
  o.lines.push_back(std::string("  re-substitution: ") + (r.verified ? "exact" : "FAILED"));
  o.lines.push_back("  hypothesis uses 2*(B*x3 - C*x2) in the (B, C) relation");
  o.result = {{"applicable", true},
              {"third_relation", "2*(B*x3 - C*x2)"},
              {"a", rational_to_string(r.a)},
              {"a_tilde", r.a_tilde.to_string(names)},
              {"b_tilde", r.b_tilde.to_string(names)},
              {"c_tilde", r.c_tilde.to_string(names)},
              {"verified", r.verified}};
  return o;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--start must be a comma-separated list of numbers");
    }
  }
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

Outcome cmd_flow(const Context& c) {
  if (c.opts.args.empty()) throw UsageError("usage: nambu flow <model-file> <lambda> <f1> ... <f_{n-1}> --start a,b,...");
  const NambuStructure& s = structure_arg(c, 0);
  need_args(c, s.order(), s.order(), "<lambda> <f1> ... <f_{n-1}> --start a,b,...");
  std::vector<RationalFunction> fs;
  for (std::size_t i = 1; i < c.opts.args.size(); ++i) fs.push_back(scalar_arg(c, c.opts.args[i]));
  if (!c.opts.start) throw UsageError("flow requires --start");
  FlowConfig cfg;
  cfg.start = parse_point(*c.opts.start);
  if (cfg.start.size() != s.dim()) throw UsageError("--start needs " + std::to_string(s.dim()) + " coordinates");
  if (c.opts.step) cfg.step = *c.opts.step;
  if (c.opts.steps) cfg.steps = *c.opts.steps;
  if (c.opts.tolerance) cfg.tolerance = *c.opts.tolerance;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Outcome o;
  o.result = {{"step", cfg.step}, {"steps", cfg.steps}, {"tolerance", cfg.tolerance}};
  try {
    const Trajectory traj = integrate_hamiltonian(s, fs, cfg);
    const ConservationReport rep = conservation_report(traj, s, fs, {}, cfg.tolerance);
    o.ok = rep.pass;
    std::vector<std::string> end;
    for (const auto& x : traj.points.back()) end.push_back(format_double(to_double(x)));
    o.lines.push_back(std::string("flow ") + (rep.pass ? "pass" : "FAIL") + ": " + std::to_string(cfg.steps) +
                      " steps of h = " + format_double(cfg.step) + ", end point (" + join(end, ", ") + ")");
    json drifts = json::array();
    for (const auto& e : rep.entries) {
      o.lines.push_back("  drift of " + e.label + ": " + format_double(e.max_drift) + (e.structural ? " (structural)" : ""));
      drifts.push_back({{"function", e.label}, {"max_drift", e.max_drift}, {"structural", e.structural}});
    }
    o.result["pass"] = rep.pass;
    o.result["end_point"] = end;
    o.result["drifts"] = drifts;
    // Rerun at half the step over the same time span to expose the convergence order.
    FlowConfig half = cfg;
    half.step = cfg.step / 2;
    half.steps = cfg.steps * 2;
    const ConservationReport fine = conservation_report(integrate_hamiltonian(s, fs, half), s, fs, {}, cfg.tolerance);
    json ratios = json::object();
    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
      const auto& e = rep.entries[i];
      if (e.structural || fine.entries[i].max_drift == 0) continue;
      const double ratio = e.max_drift / fine.entries[i].max_drift;
      o.lines.push_back("  halving ratio for " + e.label + ": " + format_double(ratio));
      ratios[e.label] = ratio;
    }
    o.result["halving_ratio"] = ratios;
  } catch (const NonFiniteError& e) {
    o.ok = false;
    o.lines.push_back(std::string("flow FAIL: ") + e.what());
    o.result["pass"] = false;
    o.result["error"] = e.what();
  }
  return o;
}

using Handler = std::function<Outcome(const Context&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"check", cmd_check},
      {"sharp", cmd_sharp},
      {"hamiltonian", cmd_hamiltonian},
      {"bracket", cmd_bracket},
      {"modular", cmd_modular},
      {"potential", cmd_potential},
      {"basic-volume", cmd_basic_volume},
      {"delta", cmd_delta},
      {"h1-top", cmd_h1_top},
      {"foliated", cmd_foliated},
      {"canonical-homology", cmd_canonical},
      {"subcomplex", cmd_subcomplex},
      {"duality", cmd_duality},
      {"naka-pair", cmd_naka_pair},
      {"naka-triple", cmd_naka_triple},
      {"flow", cmd_flow},
  };
  return h;
}

json inputs_json(const CommandOptions& o) {
  json flags = json::object();
  if (o.family) flags["family"] = *o.family;
  if (o.volume) flags["volume"] = *o.volume;
  if (o.degree) flags["degree"] = *o.degree;
  if (o.start) flags["start"] = *o.start;
  if (o.step) flags["step"] = *o.step;
  if (o.steps) flags["steps"] = *o.steps;
  if (o.tolerance) flags["tolerance"] = *o.tolerance;
  return {{"model", o.model_path}, {"arguments", o.args}, {"flags", flags}};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : handlers()) n.push_back(k);
    return n;
  }();
  return names;
}

CommandReport run_command(const ModelFile& model, const std::string& command, const CommandOptions& options) {
  auto it = handlers().find(command);
  if (it == handlers().end()) throw UsageError("unknown command '" + command + "'");
  const Context ctx{model, options, command};
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = it->second(ctx);
  } catch (const UsageError&) {
    throw;
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  CommandReport report;
  report.exit_code = out.ok ? 0 : 1;
  if (options.timing) out.lines.push_back("time: " + std::to_string(static_cast<long>(ms)) + " ms");
  report.text = join(out.lines, "\n") + "\n";
  json j;
  j["command"] = command;
  j["inputs"] = inputs_json(options);
  j["result"] = out.result;
  j["certificates"] = out.certificates;
  j["degree_bound"] = options.degree_bound ? json(*options.degree_bound) : json(nullptr);
  j["timing_ms"] = options.timing ? json(ms) : json(nullptr);
  report.json = j.dump(2) + "\n";
  return report;
}

}  // namespace npc
