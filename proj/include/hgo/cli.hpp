#pragma once

// Run configurations and the command runners behind the hgo tool.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "hgo/hcmod.hpp"
#include "hgo/spherical.hpp"
#include "hgo/stabilizer.hpp"
#include "hgo/verify.hpp"

namespace hgo {

struct Bounds {
  int degree = 4;
  int jet_order = 3;
  int word_length = 2;
  int orbit_window = 4;
};

struct NamedText {
  std::string name;
  std::string value;
};

struct RunConfig {
  Recipe recipe;
  bool has_presentation = false;
  std::vector<NamedText> presentation;
  std::vector<NamedText> extra_generators;
  std::vector<std::string> checks;
  bool has_point = false;
  std::vector<std::string> point;
  std::vector<std::string> center;
  std::vector<NamedText> spherical_generators;
  Bounds bounds;
  bool allow_truncation = false;
  std::string output;
};

namespace config_detail {

inline const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path.empty() ? key : path + "." + key, "missing required field");
  return j.at(key);
}

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

inline int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

inline bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
  return j.get<bool>();
}

inline const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  return j;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  const Json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_string(a[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

/// Entries are either "expr" (named by itself) or {"name": ..., "value": ...}.
inline std::vector<NamedText> named_list(const Json& j, const std::string& path) {
  std::vector<NamedText> out;
  const Json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    if (a[i].is_string()) {
      std::string v = a[i].get<std::string>();
      out.push_back({v, v});
    } else if (a[i].is_object()) {
      out.push_back({as_string(require(a[i], "name", p), p + ".name"), as_string(require(a[i], "value", p), p + ".value")});
    } else {
      throw ConfigError(p, "expected a string or an object with name and value");
    }
  }
  return out;
}

inline GroupSpec parse_group(const Json& j, const std::string& path) {
  GroupSpec g;
  if (j.is_string()) {
    g.name = j.get<std::string>();
    return g;
  }
  if (!j.is_object()) throw ConfigError(path, "expected a group name or an object with matrices");
  g.name = j.contains("name") ? as_string(j["name"], path + ".name") : "custom";
  const Json& ms = as_array(require(j, "matrices", path), path + ".matrices");
  for (std::size_t m = 0; m < ms.size(); ++m) {
    std::string mp = path + ".matrices[" + std::to_string(m) + "]";
    std::vector<std::vector<std::string>> mat;
    const Json& rows = as_array(ms[m], mp);
    for (std::size_t r = 0; r < rows.size(); ++r) mat.push_back(string_list(rows[r], mp + "[" + std::to_string(r) + "]"));
    g.matrices.push_back(std::move(mat));
  }
  if (j.contains("generator_names")) g.generator_names = string_list(j["generator_names"], path + ".generator_names");
  if (j.contains("minimal_polynomial")) {
    const Json& mp = as_array(j["minimal_polynomial"], path + ".minimal_polynomial");
    for (std::size_t i = 0; i < mp.size(); ++i) {
      g.minimal_polynomial.push_back(as_int(mp[i], path + ".minimal_polynomial[" + std::to_string(i) + "]"));
    }
  }
  return g;
}

inline Json group_json(const GroupSpec& g) {
  if (g.matrices.empty()) return g.name;
  Json j;
  j["name"] = g.name;
  j["matrices"] = g.matrices;
  if (!g.generator_names.empty()) j["generator_names"] = g.generator_names;
  if (!g.minimal_polynomial.empty()) j["minimal_polynomial"] = g.minimal_polynomial;
  return j;
}

}  // namespace config_detail

inline Recipe parse_recipe(const Json& j, const std::string& path = "recipe") {
  using namespace config_detail;
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  Recipe r;
  r.kind = as_string(require(j, "kind", path), join(path, "kind"));
  bool known = false;
  for (const auto& info : recipe_list()) known = known || info.name == r.kind;
  if (!known) throw ConfigError(join(path, "kind"), "unknown recipe '" + r.kind + "'");
  if (j.contains("n")) r.n = as_int(j["n"], join(path, "n"));
  if (j.contains("group")) r.group = parse_group(j["group"], join(path, "group"));
  if (j.contains("variables")) r.variables = string_list(j["variables"], join(path, "variables"));
  if (j.contains("p")) r.p = as_string(j["p"], join(path, "p"));
  if (j.contains("cartan")) r.cartan = as_string(j["cartan"], join(path, "cartan"));
  if (j.contains("variant")) r.variant = as_string(j["variant"], join(path, "variant"));
  if (j.contains("monoid")) r.monoid = as_string(j["monoid"], join(path, "monoid"));
  return r;
}

inline Json recipe_json(const Recipe& r) {
  Json j;
  j["kind"] = r.kind;
  j["n"] = r.n;
  j["group"] = config_detail::group_json(r.group);
  if (!r.variables.empty()) j["variables"] = r.variables;
  if (r.kind == "ore-family") j["p"] = r.p;
  if (r.kind == "gkv-hecke") {
    j["cartan"] = r.cartan;
    j["variant"] = r.variant;
  }
  if (r.kind == "shift-flag") j["monoid"] = r.monoid;
  return j;
}

inline RunConfig parse_run_config(const Json& j) {
  using namespace config_detail;
  if (!j.is_object()) throw ConfigError("$", "expected an object at the top level");
  static const std::vector<std::string> known = {"recipe", "presentation", "extra_generators", "checks", "point", "center",
                                                 "spherical_generators", "bounds", "allow_truncation", "output"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError(key, "unknown field");
  }
  RunConfig c;
  c.recipe = parse_recipe(require(j, "recipe", ""));
  if (j.contains("presentation")) {
    c.has_presentation = true;
    c.presentation = named_list(j["presentation"], "presentation");
  }
  if (j.contains("extra_generators")) c.extra_generators = named_list(j["extra_generators"], "extra_generators");
  if (j.contains("checks")) c.checks = string_list(j["checks"], "checks");
  if (j.contains("point")) {
    c.has_point = true;
    c.point = string_list(j["point"], "point");
  }
  if (j.contains("center")) c.center = string_list(j["center"], "center");
  if (j.contains("spherical_generators")) c.spherical_generators = named_list(j["spherical_generators"], "spherical_generators");
  if (j.contains("bounds")) {
    const Json& b = j["bounds"];
    if (!b.is_object()) throw ConfigError("bounds", "expected an object");
    for (const auto& [key, value] : b.items()) {
      int v = as_int(value, "bounds." + key);
      if (key == "degree") {
        c.bounds.degree = v;
      } else if (key == "jet_order") {
        c.bounds.jet_order = v;
      } else if (key == "word_length") {
        c.bounds.word_length = v;
      } else if (key == "orbit_window") {
        c.bounds.orbit_window = v;
      } else {
        throw ConfigError("bounds." + key, "unknown bound");
      }
    }
  }
  if (j.contains("allow_truncation")) c.allow_truncation = as_bool(j["allow_truncation"], "allow_truncation");
  if (j.contains("output")) c.output = as_string(j["output"], "output");
  return c;
}

inline void validate_bounds(const Bounds& b) {
  if (b.degree < 1) throw ConfigError("bounds.degree", "must be positive");
  if (b.jet_order < 0) throw ConfigError("bounds.jet_order", "must be non-negative");
  if (b.word_length < 0) throw ConfigError("bounds.word_length", "must be non-negative");
  if (b.orbit_window < 0) throw ConfigError("bounds.orbit_window", "must be non-negative");
}

inline Json bounds_json(const Bounds& b) {
  return Json{{"degree", b.degree}, {"jet_order", b.jet_order}, {"word_length", b.word_length}, {"orbit_window", b.orbit_window}};
}

/// A resolved configuration: the setting is built and every expression parsed.
struct Workspace {
  RunConfig config;
  CatalogEntry entry;
  OrderPresentation presentation;
};

inline Workspace resolve(const RunConfig& c) {
  validate_bounds(c.bounds);
  Workspace w;
  w.config = c;
  try {
    w.entry = build_setting(c.recipe);
  } catch (const Error& e) {
    throw ConfigError("recipe", e.what());
  }
  std::vector<NamedElement> gens;
  auto parse_all = [&](const std::vector<NamedText>& items, const std::string& path) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      try {
        gens.push_back({items[i].name, w.entry.parse(items[i].value)});
      } catch (const Error& e) {
        throw ConfigError(path + "[" + std::to_string(i) + "]", e.what());
      }
    }
  };
  if (c.has_presentation) {
    parse_all(c.presentation, "presentation");
  } else {
    gens = w.entry.presentation;
  }
  parse_all(c.extra_generators, "extra_generators");
  if (gens.empty()) throw ConfigError("presentation", "needs at least one generator");
  w.presentation = OrderPresentation(w.entry.setting, gens);
  return w;
}

inline PointIdeal resolve_point(const Workspace& w, bool required) {
  const Field& f = w.entry.setting->field();
  if (!w.config.has_point) {
    if (required) throw ConfigError("point", "missing required field");
    return PointIdeal::origin(f);
  }
  if (static_cast<int>(w.config.point.size()) != f.nvars()) {
    throw ConfigError("point", "expected " + std::to_string(f.nvars()) + " coordinates");
  }
  try {
    return PointIdeal::parse(f, w.config.point);
  } catch (const Error& e) {
    throw ConfigError("point", e.what());
  }
}

struct RunResult {
  Json document;
  int counterexamples = 0;
  int inconclusive = 0;
  bool leaked = false;
};

inline void record(RunResult& r, const VerificationReport& rep) {
  if (rep.status == Status::counterexample) ++r.counterexamples;
  if (rep.status == Status::inconclusive) ++r.inconclusive;
  r.document["reports"].push_back(rep.to_json());
}

inline RunResult start(const std::string& command, const Workspace& w) {
  RunResult r;
  r.document["command"] = command;
  r.document["recipe"] = recipe_json(w.config.recipe);
  Json gens = Json::array();
  for (const auto& g : w.presentation.generators) gens.push_back(Json{{"name", g.name}, {"value", g.value.to_string()}});
  r.document["presentation"] = gens;
  r.document["bounds"] = bounds_json(w.config.bounds);
  r.document["reports"] = Json::array();
  return r;
}

inline void finish(RunResult& r) {
  r.document["summary"] = Json{{"reports", r.document["reports"].size()},
                               {"counterexample", r.counterexamples},
                               {"inconclusive-at-bound", r.inconclusive}};
}

inline const std::vector<std::string>& verify_checks() {
  static const std::vector<std::string> checks = {"preserves_lattice", "max_commutative_probe", "fo_certificate",
                                                  "lf_witness", "weight_fiber_witness", "center_membership"};
  return checks;
}

inline RunResult run_verify(const Workspace& w) {
  RunResult r = start("verify", w);
  const auto& F = w.presentation;
  const Bounds& b = w.config.bounds;
  std::vector<std::string> checks = w.config.checks;
  if (checks.empty()) {
    checks = {"preserves_lattice", "max_commutative_probe", "fo_certificate", "lf_witness"};
    if (w.config.has_point) checks.push_back("weight_fiber_witness");
    if (!w.config.center.empty()) checks.push_back("center_membership");
  }
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    if (std::find(verify_checks().begin(), verify_checks().end(), c) == verify_checks().end()) {
      throw ConfigError("checks[" + std::to_string(i) + "]", "unknown check '" + c + "'");
    }
  }
  for (const auto& c : checks) {
    if (c == "preserves_lattice") {
      record(r, preserves_lattice(F, b.degree));
    } else if (c == "max_commutative_probe") {
      for (const auto& g : F.generators) {
        if (split_decompose(g.value).second.is_zero()) continue;
        auto rep = max_commutative_probe(g.value, std::min(b.degree, 2));
        rep.witness["generator"] = g.name;
        record(r, rep);
      }
    } else if (c == "fo_certificate") {
      record(r, fo_certificate(fo_generator_set(F), b.degree));
    } else if (c == "lf_witness") {
      record(r, lf_witness(F, std::max(1, std::min(b.word_length, 2))));
    } else if (c == "weight_fiber_witness") {
      record(r, weight_fiber_witness(F, resolve_point(w, true)));
    } else if (c == "center_membership") {
      const Field& f = w.entry.setting->field();
      for (std::size_t i = 0; i < w.config.center.size(); ++i) {
        RatFunc a;
        try {
          a = f.parse(w.config.center[i]);
        } catch (const Error& e) {
          throw ConfigError("center[" + std::to_string(i) + "]", e.what());
        }
        record(r, center_membership(a, F));
      }
    }
  }
  finish(r);
  return r;
}

inline RunResult run_module(const Workspace& w) {
  RunResult r = start("module", w);
  const Bounds& b = w.config.bounds;
  PointIdeal lambda = resolve_point(w, false);
  auto lat = preserves_lattice(w.presentation, std::max(1, b.degree), false);
  if (!lat.verified()) {
    record(r, lat);
    finish(r);
    return r;
  }
  TruncatedModule m = cyclic_module(w.presentation, lambda, b.jet_order, b.word_length, b.orbit_window);
  r.leaked = m.leaked();
  r.document["module"] = m.to_json();
  try {
    r.document["quotient"] = simple_quotient(m).to_json();
  } catch (const PreconditionError& e) {
    r.document["quotient"] = Json{{"unavailable", e.what()}};
  }
  record(r, local_finiteness_check(m, 1, lambda));
  if (w.config.recipe.kind == "ore-family") {
    const Field& f = w.entry.setting->field();
    auto family = scalar_module_check(f.parse(w.config.recipe.p), lambda.coords().front(), ParamElem(0));
    r.document["scalar_family"] = family.to_json();
  }
  finish(r);
  return r;
}

inline RunResult run_stabilizer(const Workspace& w) {
  RunResult r = start("stabilizer", w);
  const Setting& s = *w.entry.setting;
  PointIdeal m = resolve_point(w, true);
  int window = w.config.bounds.orbit_window;
  auto all = enumerate_grouplikes(s, window);
  auto stab = stab_group(s, all, m);
  Json labels = Json::array();
  for (const auto& g : stab) labels.push_back(grouplike_label(s, g));
  r.document["point"] = m.to_string();
  r.document["stabilizer"] = labels;
  for (const auto& g : all) {
    if (m.image(s, g) == m) continue;
    auto red = find_reductor(s, {g}, m);
    auto rep = verify_reductor(s, *red, {g}, m);
    rep.witness["grouplike"] = grouplike_label(s, g);
    record(r, rep);
  }
  auto fin = finiteness_predicate(s, m, window);
  r.document["finiteness"] = Json{{"finite", fin.finite}, {"explanation", fin.explanation}};
  finish(r);
  return r;
}

/// σ(X²) for each presentation member outside Λ and W.
inline std::vector<NamedElement> default_spherical_generators(const OrderPresentation& F) {
  std::vector<NamedElement> out;
  for (const auto& g : F.generators) {
    if (g.value.is_function()) continue;
    bool group_only = true;
    for (const auto& [k, c] : g.value.terms()) group_only = group_only && k.alpha.is_one();
    if (group_only) continue;
    out.push_back({"sym(" + g.name + "^2)", symmetrize(g.value * g.value)});
  }
  return out;
}

inline RunResult run_spherical(const Workspace& w) {
  RunResult r = start("spherical", w);
  const SettingPtr& s = w.entry.setting;
  SmashElement e = idempotent(s);
  VerificationReport idem = make_report("idempotent", "the averaging element e squares to itself and absorbs W",
                                        Json{{"group_order", s->group().order()}});
  if (e * e != e) {
    idem.status = Status::counterexample;
    idem.witness = Json{{"e", e.to_string()}};
  }
  for (int g : s->group().generator_indices()) {
    if (idem.status == Status::verified && SmashElement::group(s, GroupPart{g, {}}) * e != e) {
      idem.status = Status::counterexample;
      idem.witness = Json{{"e", e.to_string()}, {"generator", s->group_label(g)}};
    }
  }
  if (idem.verified()) idem.witness = Json{{"e", e.to_string()}};
  record(r, idem);
  std::vector<NamedElement> gens;
  if (w.config.spherical_generators.empty()) {
    gens = default_spherical_generators(w.presentation);
  } else {
    for (std::size_t i = 0; i < w.config.spherical_generators.size(); ++i) {
      const auto& t = w.config.spherical_generators[i];
      try {
        gens.push_back({t.name, w.entry.parse(t.value)});
      } catch (const Error& err) {
        throw ConfigError("spherical_generators[" + std::to_string(i) + "]", err.what());
      }
    }
  }
  if (!gens.empty()) record(r, spherical_axiom_check(gens, s, w.config.bounds.degree));
  record(r, corner_check(w.presentation, std::clamp(w.config.bounds.word_length, 1, 2)));
  record(r, morita_witness(w.presentation, w.config.bounds.word_length));
  finish(r);
  return r;
}

}  // namespace hgo
