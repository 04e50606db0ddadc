#pragma once

#include <algorithm>
#include <optional>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "hgo/polynomial.hpp"

namespace hgo {

/// Enables gcd splitting of univariate denominator atoms; only worth it when
/// coefficients are plain scalars.
template <class C>
struct univariate_gcd : std::false_type {};

/// Element of Frac(P) for a (Laurent) polynomial ring P = C[vars].
///
/// The denominator is kept factored into atoms: monic, non-constant polynomials
/// without Laurent monomial content. A non-Laurent variable x is itself an atom.
/// Units (scalars and Laurent monomials) are always moved into the numerator, and
/// an atom is cancelled whenever it divides the numerator. Hence the value lies in
/// P exactly when no atom remains. Atoms are not forced to be coprime, so the
/// representation is not canonical; equality compares through the difference.
template <class C>
class Fraction {
 public:
  using Poly = Polynomial<C>;
  using Atom = std::pair<Poly, int>;

  Fraction() = default;
  Fraction(long c) : num_(Poly::constant(C(c))) {}  // NOLINT(google-explicit-constructor)
  Fraction(const C& c) : num_(Poly::constant(c)) {}  // NOLINT(google-explicit-constructor)
  Fraction(Poly p) : num_(std::move(p)) {}  // NOLINT(google-explicit-constructor)

  static Fraction zero(const VarsPtr& vars) { return Fraction(Poly(vars)); }
  static Fraction one(const VarsPtr& vars) { return Fraction(Poly::constant(C(1), vars)); }
  static Fraction variable(const VarsPtr& vars, int i, int power = 1) {
    return Fraction(Poly::variable(vars, i, power));
  }

  /// num / den with den != 0.
  static Fraction quotient(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw ZeroDivision("fraction with zero denominator");
    Fraction r(num);
    r.num_ = Poly(merge_vars(num.vars(), den.vars())) + num;
    r.divide_by_poly(den);
    r.reduce();
    return r;
  }

  const Poly& numerator() const { return num_; }
  const std::vector<Atom>& denominator_atoms() const { return den_; }
  VarsPtr vars() const {
    VarsPtr v = num_.vars();
    for (const auto& a : den_) v = merge_vars(v, a.first.vars());
    return v;
  }

  Poly denominator() const {
    Poly d = Poly::constant(C(1), num_.vars());
    for (const auto& [a, e] : den_) d = d * a.pow(e);
    return d;
  }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.empty() && num_.is_one(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  C constant_value() const {
    if (!is_constant()) throw PreconditionError("fraction is not a constant");
    return num_.constant_value();
  }

  Fraction operator-() const {
    Fraction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend Fraction operator+(const Fraction& a, const Fraction& b) { return add(a, b, false); }
  friend Fraction operator-(const Fraction& a, const Fraction& b) { return add(a, b, true); }

  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    if (a.is_zero() || b.is_zero()) return zero(merge_vars(a.vars(), b.vars()));
    Fraction r;
    r.num_ = a.num_ * b.num_;
    if (a.den_.empty() && b.den_.empty()) return r;
    r.den_ = a.den_;
    for (const auto& [p, e] : b.den_) insert_atom(r.den_, p, e);
    r.reduce();
    return r;
  }

  Fraction inverse() const {
    if (is_zero()) throw ZeroDivision("inverse of zero fraction");
    Fraction r;
    r.num_ = Poly::constant(C(1), vars());
    for (const auto& [p, e] : den_) r.num_ = r.num_ * p.pow(e);
    r.divide_by_poly(num_);
    r.reduce();
    return r;
  }

  friend Fraction operator/(const Fraction& a, const Fraction& b) { return a * b.inverse(); }

  Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
  Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
  Fraction& operator*=(const Fraction& o) { return *this = *this * o; }

  Fraction pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    Fraction r = one(vars());
    Fraction b = *this;
    while (n > 0) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    if (same_atoms(a.den_, b.den_)) return a.num_ == b.num_;
    return (a - b).is_zero();
  }
  friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }

  /// Image under x_i -> images[i]. Throws SingularSubstitution if the
  /// denominator becomes identically zero.
  Fraction substitute(const std::vector<Fraction>& images) const {
    if (auto fast = substitute_monomial(images)) return *fast;
    auto embed = [](const C& c) { return Fraction(c); };
    Fraction zero_f = zero(nullptr), one_f = one(nullptr);
    Fraction result = num_.evaluate(images, embed, zero_f, one_f);
    for (const auto& [p, e] : den_) {
      Fraction d = p.evaluate(images, embed, zero_f, one_f);
      if (d.is_zero()) throw SingularSubstitution("substitution sends a denominator factor to zero");
      result = result / d.pow(e);
    }
    return result;
  }

  /// Value at a point of C^n. Throws ZeroDivision if the point is a pole.
  C evaluate(const std::vector<C>& point) const {
    auto embed = [](const C& c) { return c; };
    C result = num_.evaluate(point, embed, C(0), C(1));
    for (const auto& [p, e] : den_) {
      C d = p.evaluate(point, embed, C(0), C(1));
      if (d.is_zero()) throw ZeroDivision("point is a pole of the rational function");
      C de = C(1);
      for (int k = 0; k < e; ++k) de = de * d;
      result = result * de.inverse();
    }
    return result;
  }

  Fraction derivative(int i) const {
    Fraction r(num_.derivative(i));
    r.den_ = den_;
    r.reduce();
    for (const auto& [p, e] : den_) {
      Poly dp = p.derivative(i);
      if (dp.is_zero()) continue;
      Fraction t(num_ * dp.scaled(C(static_cast<long>(-e))));
      t.den_ = den_;
      insert_atom(t.den_, p, 1);
      t.reduce();
      r = r + t;
    }
    return r;
  }

  bool is_compound() const {
    if (!den_.empty()) return true;
    if (num_.size() > 1) return true;
    return num_.size() == 1 && num_.terms()[0].second.is_compound();
  }

  std::string to_string() const {
    std::string n = num_.to_string();
    if (den_.empty()) return n;
    std::string d;
    for (const auto& [p, e] : den_) {
      if (!d.empty()) d += "*";
      std::string ps = p.to_string();
      d += p.size() > 1 ? "(" + ps + ")" : ps;
      if (e != 1) d += "^" + std::to_string(e);
    }
    if (num_.size() > 1 || (num_.size() == 1 && num_.terms()[0].second.is_compound())) n = "(" + n + ")";
    return n + "/(" + d + ")";
  }

 private:
  static bool same_atoms(const std::vector<Atom>& a, const std::vector<Atom>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
      bool found = false;
      for (const auto& y : b) {
        if (x.second == y.second && x.first == y.first) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  static Fraction add(const Fraction& a, const Fraction& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    Fraction r;
    if (same_atoms(a.den_, b.den_)) {
      r.num_ = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      if (r.num_.is_zero()) return r;
      r.den_ = a.den_;
      r.reduce();
      return r;
    }
    // Common multiple: every atom at its largest exponent.
    std::vector<Atom> lcm = a.den_;
    for (const auto& [p, e] : b.den_) {
      bool found = false;
      for (auto& x : lcm) {
        if (x.first == p) {
          x.second = std::max(x.second, e);
          found = true;
        }
      }
      if (!found) lcm.emplace_back(p, e);
    }
    auto cofactor = [&lcm](const std::vector<Atom>& den) {
      Poly c = Poly::constant(C(1));
      for (const auto& [p, e] : lcm) {
        int have = 0;
        for (const auto& x : den) {
          if (x.first == p) have = x.second;
        }
        if (e > have) c = c * p.pow(e - have);
      }
      return c;
    };
    Poly na = a.num_ * cofactor(a.den_), nb = b.num_ * cofactor(b.den_);
    r.num_ = subtract ? na - nb : na + nb;
    if (r.num_.is_zero()) return r;
    r.den_ = std::move(lcm);
    r.reduce();
    return r;
  }

  // Splits a nonzero polynomial into unit * atoms and records the atoms in the
  // denominator (the unit goes into the numerator).
  void divide_by_poly(const Poly& p) {
    if (p.is_zero()) throw ZeroDivision("division by zero polynomial");
    const VarsPtr& v = p.vars();
    int n = v ? v->size() : 0;
    Monomial mn = p.min_exponents();
    Monomial laurent_part, plain_part;
    for (int i = 0; i < n; ++i) {
      if (v->laurent(i)) {
        laurent_part.e[i] = mn.e[i];
      } else {
        plain_part.e[i] = mn.e[i];
      }
    }
    const C& lead = p.leading_term().second;
    C lead_inv = lead.inverse();
    Poly rest = p.shifted(Monomial{} - laurent_part - plain_part).scaled(lead_inv);
    num_ = num_.scaled(lead_inv);
    num_ = Poly::from_terms(merge_vars(num_.vars(), v), shift_terms(num_, Monomial{} - laurent_part));
    for (int i = 0; i < n; ++i) {
      if (plain_part.e[i] > 0) insert_atom(den_, Poly::variable(v, i), plain_part.e[i]);
    }
    if (!rest.is_constant()) insert_atom(den_, rest, 1);
  }

  static std::vector<typename Poly::Term> shift_terms(const Poly& p, const Monomial& m) {
    std::vector<typename Poly::Term> t = p.terms();
    for (auto& x : t) x.first = x.first + m;
    return t;
  }

  // Adds atom^e, splitting against existing atoms that divide or are divided by it.
  static void insert_atom(std::vector<Atom>& den, const Poly& atom, int e) {
    if (e == 0 || atom.is_constant()) return;
    for (std::size_t k = 0; k < den.size(); ++k) {
      const Poly& a = den[k].first;
      if (a == atom) {
        den[k].second += e;
        return;
      }
    }
    for (std::size_t k = 0; k < den.size(); ++k) {
      const Poly a = den[k].first;
      int ea = den[k].second;
      if (a.size() > 1 && atom.size() > 1 && a.total_degree() > atom.total_degree()) {
        if (auto q = Poly::divide_exact(a, atom)) {
          den.erase(den.begin() + static_cast<long>(k));
          insert_atom(den, atom, ea + e);
          insert_atom(den, normalized(*q), ea);
          return;
        }
      } else if (a.size() > 1 && atom.size() > 1 && a.total_degree() < atom.total_degree()) {
        if (auto q = Poly::divide_exact(atom, a)) {
          den[k].second += e;
          insert_atom(den, normalized(*q), e);
          return;
        }
      }
    }
    for (std::size_t k = 0; k < den.size(); ++k) {
      if (auto g = common_factor(den[k].first, atom)) {
        Poly a = den[k].first;
        int ea = den[k].second;
        den.erase(den.begin() + static_cast<long>(k));
        insert_atom(den, *g, ea + e);
        insert_atom(den, normalized(*Poly::divide_exact(a, *g)), ea);
        insert_atom(den, normalized(*Poly::divide_exact(atom, *g)), e);
        return;
      }
    }
    den.emplace_back(atom, e);
  }

  static Poly normalized(const Poly& p) {
    if (p.is_zero() || p.is_constant()) return p;
    return p.scaled(p.leading_term().second.inverse());
  }

  void reduce() {
    if (den_.empty()) return;
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (std::size_t k = 0; k < den_.size(); ++k) {
      auto& [p, e] = den_[k];
      while (e > 0) {
        auto q = Poly::divide_exact(num_, p);
        if (!q) break;
        num_ = std::move(*q);
        --e;
      }
      if (e == 0) continue;
      Poly shifted_num = num_.shifted(Monomial{} - num_.min_exponents());
      if (auto g = common_factor(shifted_num, p)) {
        Poly rest = normalized(*Poly::divide_exact(p, *g));
        int ek = e;
        den_.erase(den_.begin() + static_cast<long>(k));
        insert_atom(den_, *g, ek);
        insert_atom(den_, rest, ek);
        reduce();
        return;
      }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const Atom& a) { return a.second == 0; }), den_.end());
  }

  // Index of the only variable of p (with non-negative exponents), -1 for a
  // constant, nullopt otherwise.
  static std::optional<int> sole_variable(const Poly& p) {
    int v = -1;
    for (const auto& [m, c] : p.terms()) {
      for (int i = 0; i < kMaxVars; ++i) {
        if (m.e[i] == 0) continue;
        if (m.e[i] < 0 || (v >= 0 && v != i)) return std::nullopt;
        v = i;
      }
    }
    return v;
  }

  static std::vector<C> dense(const Poly& p, int i) {
    std::vector<C> d;
    for (const auto& [m, c] : p.terms()) {
      std::size_t k = static_cast<std::size_t>(m.e[i]);
      if (d.size() <= k) d.resize(k + 1, C(0));
      d[k] = c;
    }
    return d;
  }

  static void trim(std::vector<C>& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }

  /// Monic gcd of univariate polynomials in the same variable, when it has positive degree
  /// and is a proper factor of b.
  static std::optional<Poly> common_factor(const Poly& a, const Poly& b) {
    if constexpr (!univariate_gcd<C>::value) return std::nullopt;
    if (a.size() < 2 || b.size() < 2) return std::nullopt;
    auto va = sole_variable(a), vb = sole_variable(b);
    if (!va || !vb || *va < 0 || *va != *vb) return std::nullopt;
    int i = *va;
    std::vector<C> x = dense(a, i), y = dense(b, i);
    trim(x);
    trim(y);
    if (x.size() > 33 || y.size() > 33) return std::nullopt;
    std::size_t degree_b = y.size();
    while (!y.empty()) {
      C inv = y.back().inverse();
      while (x.size() >= y.size()) {
        C f = x.back() * inv;
        std::size_t off = x.size() - y.size();
        for (std::size_t k = 0; k < y.size(); ++k) {
          if (!y[k].is_zero()) x[off + k] = x[off + k] - f * y[k];
        }
        x.pop_back();
        trim(x);
      }
      std::swap(x, y);
    }
    if (x.size() < 2 || x.size() >= degree_b) return std::nullopt;
    C inv = x.back().inverse();
    std::vector<typename Poly::Term> terms;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!x[k].is_zero()) terms.emplace_back(Monomial::var(i, static_cast<int>(k)), x[k] * inv);
    }
    return Poly::from_terms(b.vars(), std::move(terms));
  }

  std::optional<Fraction> substitute_monomial(const std::vector<Fraction>& images) const {
    int n = static_cast<int>(images.size());
    for (const auto& im : images) {
      if (!im.den_.empty() || im.num_.size() != 1) return std::nullopt;
    }
    VarsPtr target;
    for (const auto& im : images) target = merge_vars(target, im.num_.vars());
    auto map_poly = [&](const Poly& p) {
      std::vector<typename Poly::Term> out;
      out.reserve(p.size());
      for (const auto& [m, c] : p.terms()) {
        Monomial tm;
        C tc = c;
        for (int i = 0; i < kMaxVars; ++i) {
          if (m.e[i] == 0) continue;
          if (i >= n) throw InvalidArgument("substitution misses a variable");
          const auto& [im, ic] = images[i].num_.terms()[0];
          int k = m.e[i];
          for (int j = 0; j < kMaxVars; ++j) tm.e[j] = static_cast<int16_t>(tm.e[j] + k * im.e[j]);
          if (!ic.is_one()) {
            C f = k > 0 ? ic : ic.inverse();
            for (int j = 0; j < (k > 0 ? k : -k); ++j) tc = tc * f;
          }
        }
        out.emplace_back(tm, tc);
      }
      return Poly::from_terms(target, std::move(out));
    };
    Fraction r(map_poly(num_));
    for (const auto& [p, e] : den_) {
      Poly mp = map_poly(p);
      if (mp.is_zero()) throw SingularSubstitution("substitution sends a denominator factor to zero");
      for (int k = 0; k < e; ++k) r.divide_by_poly(mp);
    }
    r.reduce();
    return r;
  }

  Poly num_;
  std::vector<Atom> den_;
};

}  // namespace hgo
