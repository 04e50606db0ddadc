#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hgo/monomial.hpp"

namespace hgo {

/// Sparse (Laurent) polynomial with coefficients in a field C.
///
/// C must be constructible from `long`, support + - * and `inverse()`, and expose
/// `is_zero()`, `is_one()`, `is_compound()` and `to_string()`.
template <class C>
class Polynomial {
 public:
  using Coeff = C;
  using Term = std::pair<Monomial, C>;

  Polynomial() = default;
  explicit Polynomial(VarsPtr vars) : vars_(std::move(vars)) {}
  Polynomial(VarsPtr vars, const C& c) : vars_(std::move(vars)) {
    if (!c.is_zero()) terms_.emplace_back(Monomial{}, c);
  }
  Polynomial(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace_back(Monomial{}, C(c));
  }

  static Polynomial constant(const C& c, VarsPtr vars = nullptr) { return Polynomial(std::move(vars), c); }

  static Polynomial monomial(VarsPtr vars, const Monomial& m, const C& c = C(1)) {
    check_monomial(vars.get(), m);
    Polynomial p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace_back(m, c);
    return p;
  }

  static Polynomial variable(const VarsPtr& vars, int i, int power = 1) {
    return monomial(vars, Monomial::var(i, power));
  }

  /// Builds from arbitrary terms: combines duplicates and drops zeros.
  static Polynomial from_terms(VarsPtr vars, std::vector<Term> terms) {
    Polynomial p(std::move(vars));
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
      } else {
        if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
    for (const auto& t : p.terms_) check_monomial(p.vars_.get(), t.first);
    return p;
  }

  const VarsPtr& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_[0].second.is_one(); }

  C constant_value() const {
    for (const auto& t : terms_) {
      if (t.first.is_one()) return t.second;
    }
    return C(0);
  }

  C coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return t.first < x; });
    if (it != terms_.end() && it->first == m) return it->second;
    return C(0);
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw PreconditionError("leading term of zero polynomial");
    return terms_.back();
  }

  int total_degree() const {
    if (terms_.empty()) throw PreconditionError("degree of zero polynomial");
    return terms_.back().first.total_degree();
  }

  /// Componentwise minimum exponent over all terms.
  Monomial min_exponents() const {
    Monomial m;
    if (terms_.empty()) return m;
    m = terms_[0].first;
    for (const auto& t : terms_) {
      for (int i = 0; i < kMaxVars; ++i) m.e[i] = std::min(m.e[i], t.first.e[i]);
    }
    return m;
  }

  Monomial max_exponents() const {
    Monomial m;
    if (terms_.empty()) return m;
    m = terms_[0].first;
    for (const auto& t : terms_) {
      for (int i = 0; i < kMaxVars; ++i) m.e[i] = std::max(m.e[i], t.first.e[i]);
    }
    return m;
  }

  Polynomial with_vars(VarsPtr v) const {
    Polynomial p = *this;
    p.vars_ = std::move(v);
    for (const auto& t : p.terms_) check_monomial(p.vars_.get(), t.first);
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    VarsPtr v = merge_vars(a.vars_, b.vars_);
    if (a.terms_.empty() || b.terms_.empty()) return Polynomial(v);
    if (a.is_constant()) return b.scaled(a.terms_[0].second).with_vars_unchecked(v);
    if (b.is_constant()) return a.scaled(b.terms_[0].second).with_vars_unchecked(v);
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) prod.emplace_back(ta.first + tb.first, ta.second * tb.second);
    }
    return from_terms(v, std::move(prod));
  }

  Polynomial scaled(const C& c) const {
    if (c.is_zero()) return Polynomial(vars_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.second = t.second * c;
    return r;
  }

  Polynomial shifted(const Monomial& m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.first = t.first + m;
    for (const auto& t : r.terms_) check_monomial(vars_.get(), t.first);
    return r;
  }

  Polynomial pow(int n) const {
    if (n < 0) throw InvalidArgument("negative power of a polynomial");
    Polynomial result = constant(C(1), vars_);
    Polynomial base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].first != b.terms_[i].first) return false;
      if (!(a.terms_[i].second == b.terms_[i].second)) return false;
    }
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Exact quotient a / b in the (Laurent) polynomial ring, if it exists.
  static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    VarsPtr v = merge_vars(a.vars_, b.vars_);
    if (b.is_zero()) throw ZeroDivision("polynomial division by zero");
    if (a.is_zero()) return Polynomial(v);
    if (b.is_monomial()) {
      const auto& [m, c] = b.terms_[0];
      Polynomial q = a.scaled(c.inverse());
      for (auto& t : q.terms_) t.first = t.first - m;
      if (!q.exponents_admissible()) return std::nullopt;
      q.vars_ = v;
      return q;
    }
    // Strip Laurent monomial content from both, then divide in the ordinary ring.
    Monomial sa = a.laurent_shift(v.get()), sb = b.laurent_shift(v.get());
    Polynomial pa = a.shifted_unchecked(sa), pb = b.shifted_unchecked(sb);
    std::optional<Polynomial> q = divide_plain(pa, pb);
    if (!q) return std::nullopt;
    Polynomial r = q->shifted_unchecked(sb - sa);
    r.vars_ = v;
    if (!r.exponents_admissible()) return std::nullopt;
    return r;
  }

  bool divisible_by(const Polynomial& b) const { return divide_exact(*this, b).has_value(); }

  /// Formal partial derivative in variable i.
  Polynomial derivative(int i) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.first.e[i] == 0) continue;
      Monomial m = t.first;
      C c = t.second * C(static_cast<long>(m.e[i]));
      m.e[i] = static_cast<int16_t>(m.e[i] - 1);
      out.emplace_back(m, c);
    }
    return from_terms(vars_, std::move(out));
  }

  /// Evaluates with variable i sent to vals[i] in a ring R. `embed` maps C into R.
  /// Negative exponents use R::inverse().
  template <class R, class Embed>
  R evaluate(const std::vector<R>& vals, Embed embed, const R& zero, const R& one) const {
    int n = vars_ ? vars_->size() : 0;
    if (static_cast<int>(vals.size()) < n) throw InvalidArgument("too few values for evaluation");
    std::vector<std::map<int, R>> cache(n);
    auto power = [&](int i, int k) -> const R& {
      auto it = cache[i].find(k);
      if (it != cache[i].end()) return it->second;
      R v = one;
      if (k > 0) {
        auto prev = cache[i].find(k - 1);
        v = (prev != cache[i].end() ? prev->second : power_raw(vals[i], k - 1, one)) * vals[i];
      } else if (k < 0) {
        v = power_raw(vals[i], -k, one).inverse();
      }
      return cache[i].emplace(k, std::move(v)).first->second;
    };
    R acc = zero;
    for (const auto& t : terms_) {
      R term = embed(t.second);
      for (int i = 0; i < n; ++i) {
        if (t.first.e[i] != 0) term = term * power(i, t.first.e[i]);
      }
      acc = acc + term;
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t k = terms_.size(); k-- > 0;) {
      const auto& [m, c] = terms_[k];
      std::string cs = c.to_string();
      bool neg = !c.is_compound() && !cs.empty() && cs[0] == '-';
      if (neg) cs = cs.substr(1);
      std::string ms = m.to_string(vars_.get());
      std::string body;
      if (ms.empty()) {
        body = c.is_compound() ? "(" + cs + ")" : cs;
      } else if (cs == "1") {
        body = ms;
      } else {
        body = (c.is_compound() ? "(" + cs + ")" : cs) + "*" + ms;
      }
      if (out.empty()) {
        out = (neg ? "-" : "") + body;
      } else {
        out += (neg ? " - " : " + ") + body;
      }
    }
    return out;
  }

 private:
  static void check_monomial(const VariableSet* vars, const Monomial& m) {
    int n = vars ? vars->size() : 0;
    for (int i = 0; i < kMaxVars; ++i) {
      if (m.e[i] == 0) continue;
      if (i >= n) throw RegistryMismatch("monomial uses a variable outside the registry");
      if (m.e[i] < 0 && !vars->laurent(i)) {
        throw InvalidArgument("negative exponent on non-Laurent variable " + vars->name(i));
      }
    }
  }

  bool exponents_admissible() const {
    for (const auto& t : terms_) {
      for (int i = 0; i < kMaxVars; ++i) {
        if (t.first.e[i] < 0 && !(vars_ && i < vars_->size() && vars_->laurent(i))) return false;
      }
    }
    return true;
  }

  template <class R>
  static R power_raw(const R& x, int k, const R& one) {
    R r = one;
    for (int j = 0; j < k; ++j) r = r * x;
    return r;
  }

  Polynomial with_vars_unchecked(VarsPtr v) const {
    Polynomial p = *this;
    p.vars_ = std::move(v);
    return p;
  }

  Polynomial shifted_unchecked(const Monomial& m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.first = t.first + m;
    return r;
  }

  // Monomial bringing the minimum exponent of every Laurent variable to zero.
  Monomial laurent_shift(const VariableSet* v) const {
    Monomial mn = min_exponents(), s;
    int n = v ? v->size() : 0;
    for (int i = 0; i < n; ++i) {
      if (v->laurent(i)) s.e[i] = static_cast<int16_t>(-mn.e[i]);
    }
    return s;
  }

  // Division by a single divisor in grlex order; exact iff it terminates with zero.
  static std::optional<Polynomial> divide_plain(Polynomial a, const Polynomial& b) {
    const auto& [lm, lc] = b.terms_.back();
    if (!a.terms_.front().first.divisible_by(b.terms_.front().first)) return std::nullopt;
    Monomial amax, bmax;
    for (const auto& t : a.terms_) {
      for (int i = 0; i < kMaxVars; ++i) amax.e[i] = std::max(amax.e[i], t.first.e[i]);
    }
    for (const auto& t : b.terms_) {
      for (int i = 0; i < kMaxVars; ++i) bmax.e[i] = std::max(bmax.e[i], t.first.e[i]);
    }
    if (!amax.divisible_by(bmax)) return std::nullopt;
    C lc_inv = lc.inverse();
    std::vector<Term> quotient;
    while (!a.terms_.empty()) {
      const auto& [am, ac] = a.terms_.back();
      if (!am.divisible_by(lm)) return std::nullopt;
      if (am < lm) return std::nullopt;
      Monomial qm = am - lm;
      C qc = ac * lc_inv;
      quotient.emplace_back(qm, qc);
      Polynomial sub = b.shifted_unchecked(qm).scaled(qc);
      a = combine(a, sub, true);
    }
    Polynomial q(a.vars_);
    std::reverse(quotient.begin(), quotient.end());
    q.terms_ = std::move(quotient);
    return q;
  }

  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial r(merge_vars(a.vars_, b.vars_));
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
        r.terms_.emplace_back(b.terms_[j].first, subtract ? -b.terms_[j].second : b.terms_[j].second);
        ++j;
      } else {
        C c = subtract ? a.terms_[i].second - b.terms_[j].second : a.terms_[i].second + b.terms_[j].second;
        if (!c.is_zero()) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  VarsPtr vars_;
  std::vector<Term> terms_;
};

}  // namespace hgo
