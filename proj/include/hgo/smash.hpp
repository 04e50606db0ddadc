#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hgo/setting.hpp"

namespace hgo {

struct SmashKey {
  GroupPart g;
  Monomial alpha;  // exponents of the infinitesimal generators

  friend bool operator<(const SmashKey& a, const SmashKey& b) {
    if (a.g != b.g) return a.g < b.g;
    return a.alpha < b.alpha;
  }
  friend bool operator==(const SmashKey& a, const SmashKey& b) { return a.g == b.g && a.alpha == b.alpha; }
};

/// One summand g·∂^β·h of a right normal form (coefficient on the right).
struct RightTerm {
  GroupPart g;
  Monomial beta;
  RatFunc h;
};

/// Element of L#ℋ in left normal form Σ f·g·∂^α.
class SmashElement {
 public:
  explicit SmashElement(SettingPtr s) : s_(std::move(s)) {}

  static SmashElement function(const SettingPtr& s, const RatFunc& f) {
    SmashElement x(s);
    x.add_term(SmashKey{}, f);
    return x;
  }
  static SmashElement one(const SettingPtr& s) { return function(s, s->field().one()); }
  static SmashElement group(const SettingPtr& s, const GroupPart& g) {
    SmashElement x(s);
    x.add_term(SmashKey{g, {}}, s->field().one());
    return x;
  }
  static SmashElement infinitesimal(const SettingPtr& s, int j, int power = 1) {
    SmashElement x(s);
    x.add_term(SmashKey{{}, Monomial::var(j, power)}, s->field().one());
    return x;
  }
  static SmashElement term(const SettingPtr& s, const RatFunc& f, const GroupPart& g, const Monomial& alpha) {
    SmashElement x(s);
    x.add_term(SmashKey{g, alpha}, f);
    return x;
  }

  const SettingPtr& setting() const { return s_; }
  const std::map<SmashKey, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// True when the element is a function f·1.
  bool is_function() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == SmashKey{}); }
  RatFunc as_function() const {
    if (!is_function()) throw PreconditionError("element is not a function");
    return terms_.empty() ? s_->field().zero() : terms_.begin()->second;
  }

  friend SmashElement operator+(const SmashElement& a, const SmashElement& b) {
    check_same(a, b);
    SmashElement r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k, c);
    return r;
  }
  friend SmashElement operator-(const SmashElement& a, const SmashElement& b) {
    check_same(a, b);
    SmashElement r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
    return r;
  }
  SmashElement operator-() const {
    SmashElement r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }

  /// f·X, which only rescales left coefficients.
  SmashElement left_scale(const RatFunc& f) const {
    SmashElement r(s_);
    if (f.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.add_term(k, f * c);
    return r;
  }

  friend SmashElement operator*(const SmashElement& a, const SmashElement& b) { return a.mul(b); }

  SmashElement& operator+=(const SmashElement& o) { return *this = *this + o; }
  SmashElement& operator-=(const SmashElement& o) { return *this = *this - o; }

  friend bool operator==(const SmashElement& a, const SmashElement& b) {
    if (a.terms_.size() != b.terms_.size()) return (a - b).is_zero();
    auto ia = a.terms_.begin();
    for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
      if (!(ia->first == ib->first) || ia->second != ib->second) return (a - b).is_zero();
    }
    return true;
  }
  friend bool operator!=(const SmashElement& a, const SmashElement& b) { return !(a == b); }

  /// Product through the cross relations: g·a = (g▷a)·g, ∂·a = (∂▷a) + a·∂ and
  /// E·a = (E▷a) + (γ▷a)·E.
  SmashElement mul(const SmashElement& y) const {
    check_same(*this, y);
    SmashElement r(s_);
    for (const auto& [k1, f1] : terms_) {
      for (const auto& [k2, f2] : y.terms_) {
        // ∂^{α1}·f2 = Σ_γ h_γ ∂^γ
        std::map<Monomial, RatFunc> moved = move_past(k1.alpha, f2);
        GroupPart g = s_->mul(k1.g, k2.g);
        for (const auto& [gamma, h] : moved) {
          RatFunc coeff = f1 * s_->act(k1.g, h);
          if (coeff.is_zero()) continue;
          if (k2.g.w == 0 || gamma.is_one()) {
            r.add_term(SmashKey{g, gamma + k2.alpha}, coeff);
            continue;
          }
          // ∂^γ·g2 = g2·(g2⁻¹ ∂^γ g2)
          Poly conj = conjugate_monomial(s_->group().inverse(k2.g.w), gamma);
          for (const auto& [m, c] : conj.terms()) {
            r.add_term(SmashKey{g, m + k2.alpha}, coeff * s_->field().lift(c));
          }
        }
      }
    }
    return r;
  }

  SmashElement pow(int n) const {
    if (n < 0) throw InvalidArgument("negative power of a smash element");
    SmashElement r = one(s_);
    for (int i = 0; i < n; ++i) r = r.mul(*this);
    return r;
  }

  /// X̂(f) = Σ f_k · g_k▷(∂^{α_k}▷f).
  RatFunc apply(const RatFunc& f) const {
    std::map<Monomial, RatFunc> derived;
    RatFunc acc = s_->field().zero();
    for (const auto& [k, c] : terms_) {
      const RatFunc& d = derivative(k.alpha, f, derived);
      if (d.is_zero()) continue;
      acc = acc + c * s_->act(k.g, d);
    }
    return acc;
  }

  /// Rewrites as Σ g·∂^β·h with coefficients on the right, using f·g = g·(g⁻¹▷f)
  /// and h·x = x·h' − (x▷h') with h' = γ⁻¹▷h.
  std::vector<RightTerm> right_normal_form() const {
    std::map<SmashKey, RatFunc> acc;
    for (const auto& [k, f] : terms_) {
      RatFunc h = s_->act_inverse(k.g, f);
      for (const auto& [beta, hb] : move_right(h, k.alpha)) {
        SmashKey key{k.g, beta};
        auto it = acc.find(key);
        if (it == acc.end()) {
          acc.emplace(key, hb);
        } else {
          it->second = it->second + hb;
        }
      }
    }
    std::vector<RightTerm> out;
    for (auto& [k, h] : acc) {
      if (!h.is_zero()) out.push_back(RightTerm{k.g, k.alpha, h});
    }
    return out;
  }

  static SmashElement from_right_normal_form(const SettingPtr& s, const std::vector<RightTerm>& terms) {
    SmashElement r(s);
    for (const auto& t : terms) r = r + term(s, s->field().one(), t.g, t.beta).mul(function(s, t.h));
    return r;
  }

  int filtration_degree() const {
    if (terms_.empty()) throw PreconditionError("filtration degree of zero");
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k.alpha.total_degree());
    return d;
  }

  /// w·X·w⁻¹ computed from the conjugation tables and substitution on coefficients.
  SmashElement conjugate_by_group(const GroupPart& w) const {
    if (!s_->invertible(w)) throw PreconditionError("conjugation by a non-invertible shift");
    GroupPart wi = s_->inverse(w);
    SmashElement r(s_);
    for (const auto& [k, f] : terms_) {
      RatFunc fw = s_->act(w, f);
      GroupPart g = s_->mul(s_->mul(w, k.g), wi);
      if (k.alpha.is_one() || w.w == 0) {
        r.add_term(SmashKey{g, k.alpha}, fw);
        continue;
      }
      Poly conj = conjugate_monomial(w.w, k.alpha);
      for (const auto& [m, c] : conj.terms()) {
        r.add_term(SmashKey{g, m}, fw * s_->field().lift(c));
      }
    }
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [k, c] = *it;
      std::string ops;
      if (!k.g.is_identity()) ops = group_part_string(k.g);
      if (!k.alpha.is_one()) {
        if (!ops.empty()) ops += "*";
        ops += k.alpha.to_string(s_->infinitesimal_vars().get());
      }
      std::string cs = c.to_string();
      std::string piece;
      if (ops.empty()) {
        piece = "(" + cs + ")";
      } else if (c.is_one()) {
        piece = ops;
      } else {
        piece = "(" + cs + ")*" + ops;
      }
      if (!out.empty()) out += " + ";
      out += piece;
    }
    return out;
  }

  std::string group_part_string(const GroupPart& g) const {
    std::string out;
    if (g.w != 0) out = s_->group_label(g.w);
    if (g.has_shift()) {
      const auto& names = s_->shift_names();
      for (int i = 0; i < s_->nvars(); ++i) {
        if (g.mu[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += i < static_cast<int>(names.size()) ? names[i] : "tau" + std::to_string(i + 1);
        if (g.mu[i] != 1) out += "^" + std::to_string(g.mu[i]);
      }
    }
    return out;
  }

  void add_term(const SmashKey& k, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

 private:
  static void check_same(const SmashElement& a, const SmashElement& b) {
    if (a.s_ != b.s_) throw RegistryMismatch("smash elements belong to different settings");
  }

  // ∂^α·f = Σ_γ h_γ ∂^γ, one generator at a time: x·(h∂^γ) = (x▷h)∂^γ + (γ_x▷h)∂^{γ+e_x}.
  std::map<Monomial, RatFunc> move_past(const Monomial& alpha, const RatFunc& f) const {
    std::map<Monomial, RatFunc> cur;
    cur.emplace(Monomial{}, f);
    if (alpha.is_one()) return cur;
    for (int j = 0; j < s_->ninf(); ++j) {
      for (int rep = 0; rep < alpha.e[j]; ++rep) {
        std::map<Monomial, RatFunc> next;
        auto add = [&next](const Monomial& m, const RatFunc& v) {
          if (v.is_zero()) return;
          auto it = next.find(m);
          if (it == next.end()) {
            next.emplace(m, v);
          } else {
            it->second = it->second + v;
            if (it->second.is_zero()) next.erase(it);
          }
        };
        for (const auto& [gamma, h] : cur) {
          add(gamma, s_->act_infinitesimal(j, h));
          add(gamma + Monomial::var(j), s_->act_twist(j, h));
        }
        cur = std::move(next);
      }
    }
    return cur;
  }

  // h·∂^α = Σ_β ∂^β·h_β.
  std::map<Monomial, RatFunc> move_right(const RatFunc& h, const Monomial& alpha) const {
    std::map<Monomial, RatFunc> out;
    if (h.is_zero()) return out;
    int j = -1;
    for (int i = 0; i < s_->ninf(); ++i) {
      if (alpha.e[i] > 0) {
        j = i;
        break;
      }
    }
    if (j < 0) {
      out.emplace(Monomial{}, h);
      return out;
    }
    Monomial rest = alpha - Monomial::var(j);
    RatFunc hp = s_->act_twist_inverse(j, h);
    auto add = [&out](const Monomial& m, const RatFunc& v) {
      auto it = out.find(m);
      if (it == out.end()) {
        out.emplace(m, v);
      } else {
        it->second = it->second + v;
      }
    };
    for (const auto& [beta, hb] : move_right(hp, rest)) add(beta + Monomial::var(j), hb);
    for (const auto& [beta, hb] : move_right(s_->act_infinitesimal(j, hp), rest)) add(beta, -hb);
    for (auto it = out.begin(); it != out.end();) {
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return out;
  }

  // w·∂^α·w⁻¹ as a commutative polynomial in the infinitesimal generators.
  Poly conjugate_monomial(int w, const Monomial& alpha) const {
    const VarsPtr& iv = s_->infinitesimal_vars();
    Poly r = Poly::constant(ParamElem(1), iv);
    for (int j = 0; j < s_->ninf(); ++j) {
      if (alpha.e[j] == 0) continue;
      Poly lin(iv);
      const auto& c = s_->conjugation(w, j);
      for (int k = 0; k < s_->ninf(); ++k) {
        if (!c[k].is_zero()) lin = lin + Poly::monomial(iv, Monomial::var(k), c[k]);
      }
      r = r * lin.pow(alpha.e[j]);
    }
    return r;
  }

  const RatFunc& derivative(const Monomial& alpha, const RatFunc& f, std::map<Monomial, RatFunc>& memo) const {
    auto it = memo.find(alpha);
    if (it != memo.end()) return it->second;
    RatFunc v = f;
    if (!alpha.is_one()) {
      int j = 0;
      while (alpha.e[j] == 0) ++j;
      const RatFunc& prev = derivative(alpha - Monomial::var(j), f, memo);
      v = prev.is_zero() ? prev : s_->act_infinitesimal(j, prev);
    }
    return memo.emplace(alpha, std::move(v)).first->second;
  }

  SettingPtr s_;
  std::map<SmashKey, RatFunc> terms_;
};

inline SmashElement commutator(const SmashElement& a, const SmashElement& b) { return a * b - b * a; }

}  // namespace hgo

namespace hgo {

/// Reads expressions over variables, parameters, group element names, shift
/// names and infinitesimal names. Other identifiers go to `fallback`.
inline SmashElement parse_smash(const SettingPtr& s, const std::string& text,
                                const std::function<SmashElement(const std::string&)>& fallback = nullptr) {
  const Field& f = s->field();
  ExprOps<SmashElement> ops;
  ops.identifier = [&](const std::string& id) -> SmashElement {
    if (f.vars()->index_of(id) >= 0) return SmashElement::function(s, f.var(id));
    if (f.params()->index_of(id) >= 0) return SmashElement::function(s, f.lift(f.param(id)));
    if (f.alg() && id == f.alg()->generator()) return SmashElement::function(s, f.lift(f.zeta()));
    auto g = s->group_names().find(id);
    if (g != s->group_names().end()) return SmashElement::group(s, GroupPart{g->second, {}});
    const auto& shifts = s->shift_names();
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      if (shifts[i] == id) {
        GroupPart p;
        p.mu[i] = 1;
        return SmashElement::group(s, p);
      }
    }
    int j = s->find_infinitesimal(id);
    if (j >= 0) return SmashElement::infinitesimal(s, j);
    if (fallback) return fallback(id);
    throw ParseError("unknown identifier " + id);
  };
  ops.number = [&](const Rational& r) { return SmashElement::function(s, f.lift(ParamElem(AlgNumber(r)))); };
  ops.divide = [&](const SmashElement& a, const SmashElement& b) {
    if (!b.is_function()) throw ParseError("can only divide by a function");
    return a.mul(SmashElement::function(s, b.as_function().inverse()));
  };
  ops.power = [&](const SmashElement& a, long k) -> SmashElement {
    if (k >= 0) return a.pow(static_cast<int>(k));
    if (a.is_function()) return SmashElement::function(s, a.as_function().pow(static_cast<int>(k)));
    if (a.terms().size() == 1 && a.terms().begin()->second.is_one() && a.terms().begin()->first.alpha.is_one()) {
      GroupPart g = a.terms().begin()->first.g;
      if (s->invertible(g) || s->shift_invertible()) {
        return SmashElement::group(s, s->inverse(g)).pow(static_cast<int>(-k));
      }
    }
    throw ParseError("negative power of a non-invertible element");
  };
  return parse_expression(text, ops);
}

}  // namespace hgo
