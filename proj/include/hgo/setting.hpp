#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hgo/group.hpp"

namespace hgo {

enum class GenKind { primitive, skew_primitive };

inline const char* to_string(GenKind k) { return k == GenKind::primitive ? "primitive" : "skew_primitive"; }

/// An infinitesimal generator, fixed by its values on the variables. A
/// skew-primitive E with twist γ satisfies E(fg) = E(f)g + γ(f)E(g).
struct GeneratorSpec {
  std::string name;
  GenKind kind = GenKind::primitive;
  std::vector<RatFunc> values;
  std::vector<RatFunc> twist;          // images of the variables under γ
  std::vector<RatFunc> twist_inverse;  // images under γ⁻¹
};

struct SettingSpec {
  std::string name;
  FieldPtr field;
  Group group;
  ActionMode mode = ActionMode::linear_on_v;
  std::map<std::string, int> group_names;  // element names usable in expressions
  int shift_dim = 0;                        // 0, or the number of variables
  bool shift_invertible = true;             // Z^k rather than N^k
  std::vector<std::string> shift_names;     // unit shift generators, one per coordinate
  std::vector<GeneratorSpec> infinitesimals;
};

/// A smash-product setting: Λ, its fraction field, the grouplike part (W and an
/// optional shift monoid) and commuting infinitesimal generators.
class Setting {
 public:
  explicit Setting(SettingSpec spec) : s_(std::move(spec)) {
    if (!s_.field) throw InvalidArgument("setting needs a field");
    int n = s_.field->nvars();
    int m = static_cast<int>(s_.infinitesimals.size());
    if (m > kMaxVars) throw InvalidArgument("too many infinitesimal generators");
    if (s_.group.dim() != n) throw InvalidArgument("group dimension does not match the number of variables");
    if (s_.shift_dim != 0 && s_.shift_dim != n) throw InvalidArgument("shift dimension must equal the number of variables");
    if (s_.shift_dim != 0 && m > 0) {
      throw InvalidArgument("shift monoids combined with infinitesimal generators are not supported");
    }
    if (s_.shift_dim != 0 && s_.mode == ActionMode::monomial_on_characters) {
      throw InvalidArgument("shifts require a linear action");
    }
    std::vector<std::string> inf_names;
    for (const auto& g : s_.infinitesimals) inf_names.push_back(g.name);
    inf_vars_ = make_vars(inf_names);
    build_group_data();
    validate_infinitesimals();
    build_conjugation_tables();
  }

  const std::string& name() const { return s_.name; }
  const Field& field() const { return *s_.field; }
  const FieldPtr& field_ptr() const { return s_.field; }
  int nvars() const { return s_.field->nvars(); }
  const Group& group() const { return s_.group; }
  ActionMode mode() const { return s_.mode; }
  int shift_dim() const { return s_.shift_dim; }
  bool shift_invertible() const { return s_.shift_invertible; }
  const std::vector<std::string>& shift_names() const { return s_.shift_names; }
  const std::vector<GeneratorSpec>& infinitesimals() const { return s_.infinitesimals; }
  int ninf() const { return static_cast<int>(s_.infinitesimals.size()); }
  /// Registry naming the infinitesimal generators, for commutative monomials in them.
  const VarsPtr& infinitesimal_vars() const { return inf_vars_; }
  const std::map<std::string, int>& group_names() const { return s_.group_names; }

  std::string group_label(int w) const {
    if (w == 0) return "1";
    for (const auto& [name, idx] : s_.group_names) {
      if (idx == w) return name;
    }
    return "w" + std::to_string(w);
  }

  /// T_w: w▷x_i = Σ_j T_w[i][j] x_j in linear modes, Π_j x_j^{T_w[i][j]} otherwise.
  const ScalarMatrix& substitution_matrix(int w) const { return t_.at(w); }

  GroupPart mul(const GroupPart& a, const GroupPart& b) const {
    GroupPart r;
    r.w = s_.group.mul(a.w, b.w);
    if (a.has_shift() || b.has_shift()) {
      const auto& t = t_[b.w];
      int n = nvars();
      for (int i = 0; i < n; ++i) {
        long v = b.mu[i];
        for (int j = 0; j < n; ++j) {
          if (a.mu[j] != 0) v += int_entry(t[i][j]) * a.mu[j];
        }
        r.mu[i] = static_cast<int16_t>(v);
      }
    }
    return r;
  }

  bool invertible(const GroupPart& g) const { return s_.shift_invertible || !g.has_shift(); }

  GroupPart inverse(const GroupPart& g) const {
    if (!invertible(g)) throw PreconditionError("shift in a monoid without inverses");
    GroupPart r;
    r.w = s_.group.inverse(g.w);
    if (g.has_shift()) {
      const auto& t = t_[r.w];
      int n = nvars();
      for (int i = 0; i < n; ++i) {
        long v = 0;
        for (int j = 0; j < n; ++j) v -= int_entry(t[i][j]) * g.mu[j];
        r.mu[i] = static_cast<int16_t>(v);
      }
    }
    return r;
  }

  std::vector<RatFunc> images(const GroupPart& g) const {
    std::vector<RatFunc> im = images_.at(g.w);
    if (g.has_shift()) {
      for (int i = 0; i < nvars(); ++i) {
        if (g.mu[i] != 0) im[i] = im[i] + field().constant(g.mu[i]);
      }
    }
    return im;
  }

  /// The inverse automorphism, which exists on L even for non-invertible shifts.
  /// Since (w, μ) = (w, 0)(1, μ), the inverse undoes w first and then the shift.
  RatFunc act_inverse(const GroupPart& g, const RatFunc& f) const {
    if (g.is_identity() || f.is_constant()) return f;
    RatFunc r = g.w == 0 ? f : act(GroupPart{s_.group.inverse(g.w), {}}, f);
    if (g.has_shift()) {
      GroupPart shift_back;
      for (int i = 0; i < nvars(); ++i) shift_back.mu[i] = static_cast<int16_t>(-g.mu[i]);
      r = r.substitute(images(shift_back));
    }
    return r;
  }

  RatFunc act(const GroupPart& g, const RatFunc& f) const {
    if (g.is_identity() || f.is_constant()) return f;
    if (!g.has_shift()) return f.substitute(images_[g.w]);
    return f.substitute(images(g));
  }

  /// Action of infinitesimal generator j on L.
  RatFunc act_infinitesimal(int j, const RatFunc& f) const {
    const GeneratorSpec& g = s_.infinitesimals.at(j);
    if (f.is_constant()) return field().zero();
    if (g.kind == GenKind::primitive) {
      RatFunc r = field().zero();
      for (int i = 0; i < nvars(); ++i) {
        if (g.values[i].is_zero()) continue;
        RatFunc d = f.derivative(i);
        if (!d.is_zero()) r = r + g.values[i] * d;
      }
      return r;
    }
    return twisted_derivation(g, f);
  }

  RatFunc act_twist(int j, const RatFunc& f) const {
    const GeneratorSpec& g = s_.infinitesimals.at(j);
    if (g.kind == GenKind::primitive) return f;
    return f.substitute(g.twist);
  }

  RatFunc act_twist_inverse(int j, const RatFunc& f) const {
    const GeneratorSpec& g = s_.infinitesimals.at(j);
    if (g.kind == GenKind::primitive) return f;
    return f.substitute(g.twist_inverse);
  }

  /// w·X_j·w⁻¹ = Σ_k C[k] X_k.
  const std::vector<ParamElem>& conjugation(int w, int j) const { return conj_.at(w).at(j); }

  int find_infinitesimal(const std::string& name) const {
    for (int j = 0; j < ninf(); ++j) {
      if (s_.infinitesimals[j].name == name) return j;
    }
    return -1;
  }

 private:
  static long int_entry(const AlgNumber& a) {
    if (!a.is_rational() || a.rational_part().get_den() != 1) {
      throw InvalidArgument("non-integral matrix entry where an integer is required");
    }
    return a.rational_part().get_num().get_si();
  }

  void build_group_data() {
    const Group& g = s_.group;
    int n = nvars();
    for (int w = 0; w < g.order(); ++w) {
      ScalarMatrix t = s_.mode == ActionMode::linear_on_v ? g.matrix(g.inverse(w)) : linalg::transpose(g.matrix(w));
      std::vector<RatFunc> im;
      for (int i = 0; i < n; ++i) {
        RatFunc v = s_.mode == ActionMode::monomial_on_characters ? field().one() : field().zero();
        for (int j = 0; j < n; ++j) {
          if (t[i][j].is_zero()) continue;
          if (s_.mode == ActionMode::monomial_on_characters) {
            if (!s_.field->vars()->laurent(j)) throw InvalidArgument("character variables must be Laurent");
            v = v * field().var(j, static_cast<int>(int_entry(t[i][j])));
          } else {
            v = v + field().lift(ParamElem(t[i][j])) * field().var(j);
          }
        }
        im.push_back(v);
      }
      if (s_.shift_dim != 0) {
        for (const auto& row : t) {
          for (const auto& x : row) int_entry(x);
        }
      }
      t_.push_back(std::move(t));
      images_.push_back(std::move(im));
    }
    for (const auto& [name, idx] : s_.group_names) {
      if (idx < 0 || idx >= g.order()) throw InvalidArgument("group name " + name + " refers to no element");
    }
  }

  void validate_infinitesimals() {
    int n = nvars();
    const GeneratorSpec* skew = nullptr;
    for (auto& g : s_.infinitesimals) {
      if (static_cast<int>(g.values.size()) != n) throw InvalidArgument("generator " + g.name + " needs one value per variable");
      if (g.kind == GenKind::primitive) continue;
      if (static_cast<int>(g.twist.size()) != n || static_cast<int>(g.twist_inverse.size()) != n) {
        throw InvalidArgument("skew-primitive " + g.name + " needs its twist and inverse twist");
      }
      for (int i = 0; i < n; ++i) {
        if (g.twist_inverse[i].substitute(g.twist) != field().var(i)) {
          throw InvalidArgument("twist inverse of " + g.name + " does not invert the twist");
        }
      }
      if (skew) {
        for (int i = 0; i < n; ++i) {
          if (skew->twist[i] != g.twist[i]) {
            throw InvalidArgument("skew-primitives with distinct twists are not supported");
          }
        }
      }
      skew = &g;
    }
    // The infinitesimal part is declared commutative; spot-check on small monomials.
    std::vector<RatFunc> samples;
    for (int i = 0; i < n; ++i) samples.push_back(field().var(i));
    for (int i = 0; i < n; ++i) {
      for (int k = i; k < n; ++k) samples.push_back(field().var(i) * field().var(k));
    }
    for (int a = 0; a < ninf(); ++a) {
      for (int b = a + 1; b < ninf(); ++b) {
        for (const auto& f : samples) {
          if (act_infinitesimal(a, act_infinitesimal(b, f)) != act_infinitesimal(b, act_infinitesimal(a, f))) {
            throw InvalidArgument("infinitesimal generators " + s_.infinitesimals[a].name + " and " +
                                  s_.infinitesimals[b].name + " do not commute");
          }
        }
      }
    }
  }

  void build_conjugation_tables() {
    int n = nvars(), m = ninf();
    const Group& g = s_.group;
    conj_.assign(g.order(), std::vector<std::vector<ParamElem>>(m, std::vector<ParamElem>(m, ParamElem(0))));
    if (m == 0) return;
    linalg::Matrix<RatFunc> base(n, std::vector<RatFunc>(m));
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < m; ++k) base[i][k] = act_infinitesimal(k, field().var(i));
    }
    for (int w = 0; w < g.order(); ++w) {
      GroupPart gw{w, {}}, gi{g.inverse(w), {}};
      for (int j = 0; j < m; ++j) {
        const auto& spec = s_.infinitesimals[j];
        if (w == 0) {
          conj_[w][j][j] = ParamElem(1);
          continue;
        }
        if (spec.kind == GenKind::skew_primitive) {
          for (int i = 0; i < n; ++i) {
            if (act(gw, act_twist(j, act(gi, field().var(i)))) != spec.twist[i]) {
              throw InvalidArgument("twist of " + spec.name + " does not commute with the group");
            }
          }
        }
        std::vector<RatFunc> rhs;
        for (int i = 0; i < n; ++i) rhs.push_back(act(gw, act_infinitesimal(j, act(gi, field().var(i)))));
        auto sol = linalg::solve(base, rhs);
        if (!sol) throw InvalidArgument("conjugation of " + spec.name + " does not close on the infinitesimal span");
        for (int k = 0; k < m; ++k) {
          if (!(*sol)[k].is_constant()) {
            throw InvalidArgument("conjugation of " + spec.name + " has non-constant coefficients");
          }
          conj_[w][j][k] = (*sol)[k].constant_value();
        }
        for (int a = 0; a < n; ++a) {
          for (int b = a; b < n; ++b) {
            RatFunc f = field().var(a) * field().var(b);
            RatFunc lhs = act(gw, act_infinitesimal(j, act(gi, f)));
            RatFunc rhs2 = field().zero();
            for (int k = 0; k < m; ++k) {
              if (!conj_[w][j][k].is_zero()) rhs2 = rhs2 + field().lift(conj_[w][j][k]) * act_infinitesimal(k, f);
            }
            if (lhs != rhs2) throw InvalidArgument("conjugation table of " + spec.name + " fails on " + f.to_string());
          }
        }
      }
    }
  }

  // E(f) for a twisted derivation: product rule E(ab) = E(a)b + γ(a)E(b) on
  // monomials, E(1/d) = -E(d)/(d γ(d)) for the denominator.
  RatFunc twisted_derivation(const GeneratorSpec& g, const RatFunc& f) const {
    const Poly& num = f.numerator();
    RatFunc e_num = twisted_on_poly(g, num);
    if (f.is_polynomial()) return e_num;
    RatFunc den(f.denominator());
    RatFunc e_den = twisted_on_poly(g, f.denominator());
    RatFunc numr(num);
    RatFunc gamma_num = numr.substitute(g.twist);
    RatFunc gamma_den = den.substitute(g.twist);
    return e_num / den - gamma_num * e_den / (den * gamma_den);
  }

  RatFunc twisted_on_poly(const GeneratorSpec& g, const Poly& p) const {
    int n = nvars();
    RatFunc acc = field().zero();
    for (const auto& [m, c] : p.terms()) {
      // E(x_0^{k0} ... x_{n-1}^{k_{n-1}}) via E(ab) = E(a)b + γ(a)E(b).
      RatFunc total = field().zero();
      RatFunc gamma_prefix = field().one();
      for (int i = 0; i < n; ++i) {
        int k = m.e[i];
        if (k == 0) continue;
        RatFunc rest = field().one();
        for (int j = i + 1; j < n; ++j) {
          if (m.e[j] != 0) rest = rest * field().var(j, m.e[j]);
        }
        RatFunc e_pow = twisted_power(g, i, k);
        if (!e_pow.is_zero()) total = total + gamma_prefix * e_pow * rest;
        gamma_prefix = gamma_prefix * g.twist[i].pow(k);
      }
      if (!total.is_zero()) acc = acc + field().lift(c) * total;
    }
    return acc;
  }

  RatFunc twisted_power(const GeneratorSpec& g, int i, int k) const {
    const RatFunc u = field().var(i);
    const RatFunc& eu = g.values[i];
    if (eu.is_zero()) return field().zero();
    const RatFunc& gu = g.twist[i];
    if (k > 0) {
      RatFunc sum = field().zero();
      for (int r = 0; r < k; ++r) sum = sum + gu.pow(r) * eu * u.pow(k - 1 - r);
      return sum;
    }
    RatFunc d = u.pow(-k);
    RatFunc ed = twisted_power(g, i, -k);
    return -ed / (d * gu.pow(-k));
  }

  SettingSpec s_;
  VarsPtr inf_vars_;
  std::vector<ScalarMatrix> t_;
  std::vector<std::vector<RatFunc>> images_;
  std::vector<std::vector<std::vector<ParamElem>>> conj_;
};

using SettingPtr = std::shared_ptr<const Setting>;

}  // namespace hgo
