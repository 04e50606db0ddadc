#pragma once

// Constructors for the concrete settings and their distinguished operators.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hgo/smash.hpp"

namespace hgo {

struct NamedElement {
  std::string name;
  SmashElement value;
};

/// Finite group given by name ("trivial", "S<n>", "Z<m>", "B2") or by explicit
/// generator matrices whose entries may use the extension generator zeta.
struct GroupSpec {
  std::string name = "trivial";
  std::vector<std::vector<std::vector<std::string>>> matrices;
  std::vector<std::string> generator_names;
  std::vector<long> minimal_polynomial;  // for explicit groups needing zeta
};

struct Recipe {
  std::string kind;
  int n = 1;
  GroupSpec group;
  std::vector<std::string> variables;  // optional override of the default names
  std::string p = "1";                 // ore-family
  std::string cartan = "A1";           // gkv-hecke
  std::string variant = "multiplicative";
  std::string monoid = "Z";            // shift-flag: "Z" or "N"
};

struct RecipeInfo {
  std::string name;
  std::string summary;
};

inline const std::vector<RecipeInfo>& recipe_list() {
  static const std::vector<RecipeInfo> list = {
      {"rational-differential", "C[V] with constant-coefficient derivations and a finite linear group W"},
      {"trigonometric-differential", "Laurent polynomials on a torus with Euler derivations z_i d/dz_i and W"},
      {"quantum-borel", "C[t] with a q-difference skew-primitive E, twist t -> q^-1 t, E(t) = 1"},
      {"ore-family", "C[t] with X = p(t) d/dt, so that X t - t X = p(t)"},
      {"shift-flag", "C[x_1..x_n] with unit shifts x_i -> x_i + 1 and permutations W"},
      {"gkv-hecke", "Demazure-Lusztig operators for A1 or A2, multiplicative (torus) or additive variant"},
      {"cherednik", "Dunkl operators t d_y + sum_s 2c_s/(1-lambda_s) (alpha_s,y)/alpha_s (s-1)"},
  };
  return list;
}

/// A built setting together with its named operators and default presentation.
struct CatalogEntry {
  Recipe recipe;
  SettingPtr setting;
  std::vector<NamedElement> operators;
  std::vector<NamedElement> presentation;  // generators of the default order F

  const SmashElement& op(const std::string& name) const {
    for (const auto& o : operators) {
      if (o.name == name) return o.value;
    }
    throw InvalidArgument("no operator named " + name);
  }

  SmashElement parse(const std::string& text) const {
    return parse_smash(setting, text, [this](const std::string& id) -> SmashElement {
      for (const auto& o : operators) {
        if (o.name == id) return o.value;
      }
      throw ParseError("unknown identifier " + id);
    });
  }

  /// Presentation members other than the generators of Λ.
  std::vector<NamedElement> non_lattice_generators() const {
    std::vector<NamedElement> out;
    for (const auto& g : presentation) {
      if (!g.value.is_function()) out.push_back(g);
    }
    return out;
  }
};

namespace detail {

inline ScalarMatrix permutation_matrix(int n, int a, int b) {
  ScalarMatrix m = linalg::identity<AlgNumber>(n);
  m[a][a] = AlgNumber(0);
  m[b][b] = AlgNumber(0);
  m[a][b] = AlgNumber(1);
  m[b][a] = AlgNumber(1);
  return m;
}

inline AlgContextPtr cyclotomic(int m) {
  switch (m) {
    case 3:
      return std::make_shared<const AlgContext>(std::vector<Rational>{1, 1, 1});
    case 4:
      return std::make_shared<const AlgContext>(std::vector<Rational>{1, 0, 1});
    case 6:
      return std::make_shared<const AlgContext>(std::vector<Rational>{1, -1, 1});
    default:
      throw InvalidArgument("primitive " + std::to_string(m) +
                            "-th roots of unity are not representable in a quadratic extension");
  }
}

struct BuiltGroup {
  Group group;
  std::map<std::string, int> names;
  AlgContextPtr alg;
};

inline int parse_suffix(const std::string& name, std::size_t prefix) {
  std::string digits = name.substr(prefix);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidArgument("malformed group name " + name);
  }
  return std::stoi(digits);
}

inline BuiltGroup build_group(const GroupSpec& spec, int n) {
  std::vector<ScalarMatrix> gens;
  std::vector<std::string> names;
  AlgContextPtr alg;
  const std::string& g = spec.name;
  if (!spec.matrices.empty()) {
    if (!spec.minimal_polynomial.empty()) {
      std::vector<Rational> mp;
      for (long c : spec.minimal_polynomial) mp.emplace_back(c);
      alg = std::make_shared<const AlgContext>(mp);
    }
    Field scalars(nullptr, nullptr, alg);
    for (std::size_t k = 0; k < spec.matrices.size(); ++k) {
      const auto& rows = spec.matrices[k];
      ScalarMatrix m;
      for (const auto& row : rows) {
        std::vector<AlgNumber> r;
        for (const auto& entry : row) {
          ParamElem v = scalars.parse_scalar(entry);
          if (!v.is_constant()) throw InvalidArgument("group matrix entries must be constants");
          r.push_back(v.constant_value());
        }
        m.push_back(std::move(r));
      }
      gens.push_back(std::move(m));
      names.push_back(k < spec.generator_names.size() ? spec.generator_names[k] : "g" + std::to_string(k + 1));
    }
  } else if (g == "trivial") {
  } else if (g.rfind("S", 0) == 0) {
    int k = parse_suffix(g, 1);
    if (k != n) throw InvalidArgument("group " + g + " must act on " + std::to_string(k) + " variables");
    for (int i = 0; i + 1 < k; ++i) {
      gens.push_back(permutation_matrix(n, i, i + 1));
      names.push_back(k == 2 ? "s" : "s" + std::to_string(i + 1));
    }
  } else if (g.rfind("Z", 0) == 0) {
    int m = parse_suffix(g, 1);
    if (n != 1) throw InvalidArgument("cyclic groups act on one variable");
    if (m < 2) throw InvalidArgument("cyclic group order must be at least 2");
    ScalarMatrix gen(1, std::vector<AlgNumber>(1));
    if (m == 2) {
      gen[0][0] = AlgNumber(-1);
    } else {
      alg = cyclotomic(m);
      gen[0][0] = AlgNumber::generator(alg);
    }
    gens.push_back(gen);
    names.push_back("s");
  } else if (g == "B2") {
    if (n != 2) throw InvalidArgument("B2 acts on two variables");
    gens.push_back(permutation_matrix(2, 0, 1));
    ScalarMatrix sign = linalg::identity<AlgNumber>(2);
    sign[1][1] = AlgNumber(-1);
    gens.push_back(sign);
    names = {"s1", "s2"};
  } else {
    throw InvalidArgument("unknown group " + g);
  }
  BuiltGroup out{Group(n, gens), {}, alg};
  for (std::size_t k = 0; k < gens.size(); ++k) out.names[names[k]] = out.group.lookup(gens[k]);
  return out;
}

inline std::vector<std::string> default_names(const std::string& base, int n) {
  if (n == 1) return {base};
  if (n == 2 && base == "x") return {"x", "y"};
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back(base + std::to_string(i));
  return v;
}

inline std::vector<std::string> variable_names(const Recipe& r, const std::string& base, int n) {
  if (r.variables.empty()) return default_names(base, n);
  if (static_cast<int>(r.variables.size()) != n) throw InvalidArgument("recipe lists the wrong number of variables");
  return r.variables;
}

inline void add_lattice_generators(CatalogEntry& e) {
  const Field& f = e.setting->field();
  for (int i = 0; i < f.nvars(); ++i) {
    e.presentation.push_back({f.vars()->name(i), SmashElement::function(e.setting, f.var(i))});
    if (f.vars()->laurent(i)) {
      e.presentation.push_back({f.vars()->name(i) + "^-1", SmashElement::function(e.setting, f.var(i, -1))});
    }
  }
}

inline void add_group_generators(CatalogEntry& e) {
  for (const auto& [name, idx] : e.setting->group_names()) {
    e.presentation.push_back({name, SmashElement::group(e.setting, GroupPart{idx, {}})});
  }
}

inline std::vector<GeneratorSpec> partial_derivatives(const Field& f, const std::string& prefix, bool euler) {
  std::vector<GeneratorSpec> out;
  for (int i = 0; i < f.nvars(); ++i) {
    GeneratorSpec g;
    g.name = prefix + f.vars()->name(i);
    g.kind = GenKind::primitive;
    for (int j = 0; j < f.nvars(); ++j) g.values.push_back(i == j ? (euler ? f.var(i) : f.one()) : f.zero());
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace detail

/// Reflections of a linear_on_v setting: elements s with rank(s - 1) = 1 on V*.
struct Reflection {
  int w;
  ParamElem lambda;        // non-trivial eigenvalue on V*
  std::vector<AlgNumber> alpha;  // root in V*, first nonzero coordinate 1
  int cls;                 // conjugacy class index
};

inline std::vector<Reflection> find_reflections(const Setting& s) {
  const Group& g = s.group();
  int n = s.nvars();
  std::vector<Reflection> out;
  for (int w = 1; w < g.order(); ++w) {
    ScalarMatrix m = linalg::transpose(s.substitution_matrix(w));
    for (int i = 0; i < n; ++i) m[i][i] = m[i][i] - AlgNumber(1);
    if (linalg::rank(m) != 1) continue;
    AlgNumber trace(0);
    const auto& t = s.substitution_matrix(w);
    for (int i = 0; i < n; ++i) trace = trace + t[i][i];
    AlgNumber lambda = trace - AlgNumber(n - 1);
    if (lambda.is_one()) throw InvalidArgument("element " + s.group_label(w) + " has lambda_s = 1 and is not a reflection");
    std::vector<AlgNumber> col;
    for (int j = 0; j < n && col.empty(); ++j) {
      bool nz = false;
      for (int i = 0; i < n; ++i) nz = nz || !m[i][j].is_zero();
      if (nz) {
        for (int i = 0; i < n; ++i) col.push_back(m[i][j]);
      }
    }
    AlgNumber lead(0);
    for (const auto& c : col) {
      if (!c.is_zero()) {
        lead = c;
        break;
      }
    }
    AlgNumber inv = lead.inverse();
    for (auto& c : col) c = c * inv;
    out.push_back(Reflection{w, ParamElem(lambda), col, -1});
  }
  int classes = 0;
  for (auto& r : out) {
    if (r.cls >= 0) continue;
    r.cls = classes;
    for (int u = 0; u < g.order(); ++u) {
      int conj = g.mul(g.mul(u, r.w), g.inverse(u));
      for (auto& o : out) {
        if (o.w == conj) o.cls = classes;
      }
    }
    ++classes;
  }
  return out;
}

inline int reflection_class_count(const std::vector<Reflection>& refl) {
  int c = 0;
  for (const auto& r : refl) c = std::max(c, r.cls + 1);
  return c;
}

/// D_y for the basis direction y = e_k.
inline SmashElement dunkl_operator(const SettingPtr& s, int k) {
  const Field& f = s->field();
  if (f.params()->index_of("t") < 0) throw PreconditionError("setting has no Cherednik parameters");
  if (s->ninf() != f.nvars()) throw PreconditionError("setting lacks one derivation per variable");
  auto refl = find_reflections(*s);
  int classes = reflection_class_count(refl);
  SmashElement d = SmashElement::infinitesimal(s, k).left_scale(f.lift(f.param("t")));
  for (const auto& r : refl) {
    if (r.alpha[k].is_zero()) continue;
    ParamElem c = f.param(classes == 1 ? "c" : "c" + std::to_string(r.cls + 1));
    RatFunc alpha = f.zero();
    for (int i = 0; i < f.nvars(); ++i) alpha = alpha + f.lift(ParamElem(r.alpha[i])) * f.var(i);
    RatFunc coeff = f.lift(ParamElem(2) * c * ParamElem(r.alpha[k]) / (ParamElem(1) - r.lambda)) / alpha;
    SmashElement sm = SmashElement::group(s, GroupPart{r.w, {}}) - SmashElement::one(s);
    d = d + sm.left_scale(coeff);
  }
  return d;
}

/// σ_i = q(t^α s - 1)/(t^α - 1) - q⁻¹(s - 1)/(t^α - 1), or its additive
/// degeneration s + q(s - 1)/α.
inline SmashElement demazure_lusztig(const SettingPtr& s, const RatFunc& root_function, int reflection,
                                     bool multiplicative) {
  const Field& f = s->field();
  RatFunc q = f.lift(f.param("q"));
  SmashElement sm = SmashElement::group(s, GroupPart{reflection, {}});
  SmashElement one = SmashElement::one(s);
  if (!multiplicative) return sm + (sm - one).left_scale(q / root_function);
  RatFunc denom = (root_function - f.one()).inverse();
  SmashElement a = (sm.left_scale(root_function) - one).left_scale(q * denom);
  SmashElement b = (sm - one).left_scale(q.inverse() * denom);
  return a - b;
}

inline SmashElement ore_generator(const SettingPtr& s, const RatFunc& p) {
  if (p.is_zero()) throw InvalidArgument("ore-family needs p != 0");
  return SmashElement::infinitesimal(s, 0).left_scale(p);
}

inline CatalogEntry build_setting(const Recipe& r) {
  CatalogEntry e;
  e.recipe = r;
  const std::string& k = r.kind;
  if (r.n < 1 || r.n > 4) throw InvalidArgument("n must lie between 1 and 4");

  if (k == "rational-differential" || k == "cherednik") {
    auto bg = detail::build_group(r.group, r.n);
    VarsPtr vars = make_vars(detail::variable_names(r, "x", r.n));
    std::vector<std::string> params;
    int classes = 0;
    if (k == "cherednik") {
      // Count reflection classes on a scratch setting to name the c parameters.
      SettingSpec probe;
      probe.field = std::make_shared<const Field>(vars, nullptr, bg.alg);
      probe.group = bg.group;
      auto scratch = std::make_shared<const Setting>(probe);
      classes = reflection_class_count(find_reflections(*scratch));
      params.push_back("t");
      if (classes == 1) params.push_back("c");
      for (int c = 1; classes > 1 && c <= classes; ++c) params.push_back("c" + std::to_string(c));
    }
    SettingSpec spec;
    spec.name = k;
    spec.field = std::make_shared<const Field>(vars, make_vars(params, true), bg.alg);
    spec.group = bg.group;
    spec.mode = ActionMode::linear_on_v;
    spec.group_names = bg.names;
    spec.infinitesimals = detail::partial_derivatives(*spec.field, "d", false);
    e.setting = std::make_shared<const Setting>(spec);
    detail::add_lattice_generators(e);
    detail::add_group_generators(e);
    const Field& f = e.setting->field();
    for (int i = 0; i < f.nvars(); ++i) {
      if (k == "cherednik") {
        e.operators.push_back({"D" + f.vars()->name(i), dunkl_operator(e.setting, i)});
      }
    }
    if (k == "cherednik") {
      for (const auto& o : e.operators) e.presentation.push_back(o);
    } else {
      for (int i = 0; i < f.nvars(); ++i) {
        e.presentation.push_back({"d" + f.vars()->name(i), SmashElement::infinitesimal(e.setting, i)});
      }
    }
    return e;
  }

  if (k == "trigonometric-differential") {
    auto bg = detail::build_group(r.group, r.n);
    for (int w = 0; w < bg.group.order(); ++w) {
      for (const auto& row : bg.group.matrix(w)) {
        for (const auto& x : row) {
          if (!x.is_rational() || x.rational_part().get_den() != 1) {
            throw InvalidArgument("torus actions need integer matrices");
          }
        }
      }
    }
    SettingSpec spec;
    spec.name = k;
    spec.field = std::make_shared<const Field>(make_vars(detail::variable_names(r, "z", r.n), true), nullptr, bg.alg);
    spec.group = bg.group;
    spec.mode = ActionMode::monomial_on_characters;
    spec.group_names = bg.names;
    spec.infinitesimals = detail::partial_derivatives(*spec.field, "th", true);
    e.setting = std::make_shared<const Setting>(spec);
    detail::add_lattice_generators(e);
    detail::add_group_generators(e);
    for (int i = 0; i < e.setting->ninf(); ++i) {
      e.presentation.push_back({e.setting->infinitesimals()[i].name, SmashElement::infinitesimal(e.setting, i)});
    }
    return e;
  }

  if (k == "quantum-borel") {
    SettingSpec spec;
    spec.name = k;
    auto field = std::make_shared<const Field>(make_vars({"t"}), make_vars({"q"}, true));
    spec.field = field;
    spec.group = Group(1, {});
    GeneratorSpec eg;
    eg.name = "E";
    eg.kind = GenKind::skew_primitive;
    eg.values = {field->one()};
    eg.twist = {field->lift(field->param("q", -1)) * field->var(0)};
    eg.twist_inverse = {field->lift(field->param("q")) * field->var(0)};
    spec.infinitesimals = {eg};
    e.setting = std::make_shared<const Setting>(spec);
    detail::add_lattice_generators(e);
    e.operators.push_back({"E", SmashElement::infinitesimal(e.setting, 0)});
    e.presentation.push_back({"E", SmashElement::infinitesimal(e.setting, 0)});
    return e;
  }

  if (k == "ore-family") {
    SettingSpec spec;
    spec.name = k;
    auto field = std::make_shared<const Field>(make_vars({"t"}), nullptr);
    spec.field = field;
    spec.group = Group(1, {});
    spec.infinitesimals = detail::partial_derivatives(*field, "d", false);
    e.setting = std::make_shared<const Setting>(spec);
    RatFunc p = field->parse(r.p);
    if (!is_in_lattice(p)) throw InvalidArgument("ore-family needs a polynomial p");
    detail::add_lattice_generators(e);
    e.operators.push_back({"X", ore_generator(e.setting, p)});
    e.presentation.push_back({"X", e.operators.back().value});
    return e;
  }

  if (k == "shift-flag") {
    auto bg = detail::build_group(r.group, r.n);
    SettingSpec spec;
    spec.name = k;
    spec.field = std::make_shared<const Field>(make_vars(detail::variable_names(r, "x", r.n)), nullptr, bg.alg);
    spec.group = bg.group;
    spec.mode = ActionMode::linear_on_v;
    spec.group_names = bg.names;
    spec.shift_dim = r.n;
    if (r.monoid != "Z" && r.monoid != "N") throw InvalidArgument("monoid must be Z or N");
    spec.shift_invertible = r.monoid == "Z";
    spec.shift_names = detail::default_names("tau", r.n);
    e.setting = std::make_shared<const Setting>(spec);
    detail::add_lattice_generators(e);
    detail::add_group_generators(e);
    for (int i = 0; i < r.n; ++i) {
      GroupPart g;
      g.mu[i] = 1;
      e.presentation.push_back({spec.shift_names[i], SmashElement::group(e.setting, g)});
      if (spec.shift_invertible) {
        g.mu[i] = -1;
        e.presentation.push_back({spec.shift_names[i] + "^-1", SmashElement::group(e.setting, g)});
      }
    }
    return e;
  }

  if (k == "gkv-hecke") {
    bool mult = r.variant == "multiplicative";
    if (!mult && r.variant != "additive") throw InvalidArgument("variant must be multiplicative or additive");
    int rank;
    std::vector<ScalarMatrix> simple;
    std::vector<std::vector<int>> roots;  // simple roots in the fundamental weight basis
    if (r.cartan == "A1") {
      rank = 1;
      simple = {ScalarMatrix{{AlgNumber(-1)}}};
      roots = {{2}};
    } else if (r.cartan == "A2") {
      rank = 2;
      simple = {ScalarMatrix{{AlgNumber(-1), AlgNumber(0)}, {AlgNumber(1), AlgNumber(1)}},
                ScalarMatrix{{AlgNumber(1), AlgNumber(1)}, {AlgNumber(0), AlgNumber(-1)}}};
      roots = {{2, -1}, {-1, 2}};
    } else {
      throw InvalidArgument("cartan type must be A1 or A2");
    }
    SettingSpec spec;
    spec.name = k;
    auto names = detail::variable_names(r, mult ? "z" : "x", rank);
    spec.field = std::make_shared<const Field>(make_vars(names, mult), make_vars({"q"}, true));
    spec.group = Group(rank, simple);
    spec.mode = mult ? ActionMode::monomial_on_characters : ActionMode::linear_on_functions;
    for (int i = 0; i < rank; ++i) {
      spec.group_names[rank == 1 ? "s" : "s" + std::to_string(i + 1)] = spec.group.lookup(simple[i]);
    }
    e.setting = std::make_shared<const Setting>(spec);
    detail::add_lattice_generators(e);
    const Field& f = e.setting->field();
    for (int i = 0; i < rank; ++i) {
      RatFunc root = mult ? f.one() : f.zero();
      for (int j = 0; j < rank; ++j) {
        if (mult) {
          root = root * f.var(j, roots[i][j]);
        } else {
          root = root + f.constant(roots[i][j]) * f.var(j);
        }
      }
      std::string name = rank == 1 ? "sigma" : "sigma" + std::to_string(i + 1);
      e.operators.push_back({name, demazure_lusztig(e.setting, root, spec.group.lookup(simple[i]), mult)});
      e.presentation.push_back(e.operators.back());
    }
    return e;
  }

  throw InvalidArgument("unknown recipe " + k);
}

}  // namespace hgo
