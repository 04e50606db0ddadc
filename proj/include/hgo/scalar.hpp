#pragma once

// Ground field tower: Q, optionally extended by a single algebraic number.

#include <gmpxx.h>

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hgo/error.hpp"

namespace hgo {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw ZeroDivision("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Q[zeta]/(m) for a monic integer polynomial m, which the caller asserts is irreducible.
class AlgContext {
 public:
  /// `modulus` holds the coefficients of m from the constant term upwards; the
  /// leading coefficient must be 1.
  AlgContext(std::vector<Rational> modulus, std::string generator = "zeta")
      : modulus_(std::move(modulus)), generator_(std::move(generator)) {
    if (modulus_.size() < 2) throw InvalidArgument("minimal polynomial must have degree >= 1");
    if (modulus_.back() != 1) throw InvalidArgument("minimal polynomial must be monic");
    for (const auto& c : modulus_) {
      if (c.get_den() != 1) throw InvalidArgument("minimal polynomial must have integer coefficients");
    }
    spot_check_irreducible();
  }

  int degree() const { return static_cast<int>(modulus_.size()) - 1; }
  const std::vector<Rational>& modulus() const { return modulus_; }
  const std::string& generator() const { return generator_; }

  bool operator==(const AlgContext& o) const {
    return modulus_ == o.modulus_ && generator_ == o.generator_;
  }

 private:
  // Degree <= 3 is irreducible over Q iff it has no rational root. Rational roots
  // of a monic integer polynomial are integer divisors of the constant term.
  void spot_check_irreducible() const {
    if (degree() == 1) return;
    Integer c0 = abs(modulus_.front().get_num());
    if (c0 == 0) throw InvalidArgument("minimal polynomial has root 0");
    if (c0 > 100000) return;
    for (long d = 1; d <= c0.get_si(); ++d) {
      if (c0 % d != 0) continue;
      for (long s : {d, -d}) {
        Rational v = 0;
        Rational p = 1;
        for (const auto& c : modulus_) {
          v += c * p;
          p *= s;
        }
        if (v == 0) throw InvalidArgument("minimal polynomial has the rational root " + std::to_string(s));
      }
    }
  }

  std::vector<Rational> modulus_;
  std::string generator_;
};

using AlgContextPtr = std::shared_ptr<const AlgContext>;

inline bool same_context(const AlgContextPtr& a, const AlgContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Element of Q[zeta]/(m). A null context means the element is rational and
/// combines freely with any extension.
class AlgNumber {
 public:
  AlgNumber() = default;
  AlgNumber(long v) : head_(v) {}  // NOLINT(google-explicit-constructor)
  AlgNumber(Rational v) : head_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static AlgNumber generator(const AlgContextPtr& ctx) {
    AlgNumber a;
    a.ctx_ = ctx;
    if (ctx->degree() == 1) {
      a.head_ = -ctx->modulus()[0];
    } else {
      a.tail_ = {Rational(1)};
    }
    return a;
  }

  const AlgContextPtr& context() const { return ctx_; }
  bool is_rational() const { return tail_.empty(); }
  const Rational& rational_part() const { return head_; }

  /// Coefficient of zeta^i.
  Rational coefficient(std::size_t i) const {
    if (i == 0) return head_;
    return i - 1 < tail_.size() ? tail_[i - 1] : Rational(0);
  }

  bool is_zero() const { return head_ == 0 && tail_.empty(); }
  bool is_one() const { return head_ == 1 && tail_.empty(); }

  friend AlgNumber operator+(const AlgNumber& a, const AlgNumber& b) {
    AlgNumber r;
    r.ctx_ = merge_context(a.ctx_, b.ctx_);
    r.head_ = a.head_ + b.head_;
    if (!a.tail_.empty() || !b.tail_.empty()) {
      r.tail_.resize(std::max(a.tail_.size(), b.tail_.size()));
      for (std::size_t i = 0; i < r.tail_.size(); ++i) {
        if (i < a.tail_.size()) r.tail_[i] += a.tail_[i];
        if (i < b.tail_.size()) r.tail_[i] += b.tail_[i];
      }
      r.trim();
    }
    return r;
  }

  AlgNumber operator-() const {
    AlgNumber r = *this;
    r.head_ = -r.head_;
    for (auto& c : r.tail_) c = -c;
    return r;
  }

  friend AlgNumber operator-(const AlgNumber& a, const AlgNumber& b) { return a + (-b); }

  friend AlgNumber operator*(const AlgNumber& a, const AlgNumber& b) {
    if (a.tail_.empty() && b.tail_.empty()) {
      AlgNumber r;
      r.ctx_ = merge_context(a.ctx_, b.ctx_);
      r.head_ = a.head_ * b.head_;
      return r;
    }
    AlgContextPtr ctx = merge_context(a.ctx_, b.ctx_);
    std::vector<Rational> pa = a.dense(), pb = b.dense();
    std::vector<Rational> prod(pa.size() + pb.size() - 1);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      if (pa[i] == 0) continue;
      for (std::size_t j = 0; j < pb.size(); ++j) prod[i + j] += pa[i] * pb[j];
    }
    return from_dense(ctx, reduce_mod(*ctx, std::move(prod)));
  }

  AlgNumber inverse() const {
    if (is_zero()) throw ZeroDivision("inverse of zero");
    if (tail_.empty()) {
      AlgNumber r;
      r.ctx_ = ctx_;
      r.head_ = 1 / head_;
      return r;
    }
    // Extended Euclid in Q[zeta]: find u with u*a = 1 mod m.
    std::vector<Rational> r0 = ctx_->modulus(), r1 = dense();
    std::vector<Rational> s0 = {Rational(0)}, s1 = {Rational(1)};
    trim_poly(r1);
    while (!(r1.size() == 1 && r1[0] != 0) && !r1.empty()) {
      auto [q, r] = divmod_poly(r0, r1);
      std::vector<Rational> s2 = sub_poly(s0, mul_poly(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r1.empty()) throw ZeroDivision("zero divisor in algebraic extension: minimal polynomial is reducible");
    Rational inv = 1 / r1[0];
    for (auto& c : s1) c *= inv;
    return from_dense(ctx_, reduce_mod(*ctx_, std::move(s1)));
  }

  friend AlgNumber operator/(const AlgNumber& a, const AlgNumber& b) { return a * b.inverse(); }

  AlgNumber& operator+=(const AlgNumber& o) { return *this = *this + o; }
  AlgNumber& operator-=(const AlgNumber& o) { return *this = *this - o; }
  AlgNumber& operator*=(const AlgNumber& o) { return *this = *this * o; }

  friend bool operator==(const AlgNumber& a, const AlgNumber& b) {
    return a.head_ == b.head_ && a.tail_ == b.tail_;
  }

  /// Total order used only for deterministic sorting.
  friend int compare(const AlgNumber& a, const AlgNumber& b) {
    std::size_t n = std::max(a.tail_.size(), b.tail_.size());
    for (std::size_t i = n; i-- > 0;) {
      int c = cmp(a.coefficient(i + 1), b.coefficient(i + 1));
      if (c != 0) return c < 0 ? -1 : 1;
    }
    int c = cmp(a.head_, b.head_);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }

  /// True when printing needs parentheses inside a product.
  bool is_compound() const {
    if (tail_.empty()) return false;
    int nonzero = head_ != 0 ? 1 : 0;
    for (const auto& c : tail_) nonzero += c != 0 ? 1 : 0;
    return nonzero > 1;
  }

  bool is_negative_leading() const {
    if (tail_.empty()) return head_ < 0;
    return tail_.back() < 0;
  }

  std::string to_string() const {
    if (tail_.empty()) return head_.get_str();
    std::string name = ctx_ ? ctx_->generator() : "zeta";
    std::string out;
    for (std::size_t i = tail_.size() + 1; i-- > 0;) {
      Rational c = coefficient(i);
      if (c == 0) continue;
      std::string mono = i == 0 ? "" : (i == 1 ? name : name + "^" + std::to_string(i));
      std::string body;
      if (mono.empty()) {
        body = Rational(abs(c)).get_str();
      } else if (abs(c) == 1) {
        body = mono;
      } else {
        body = Rational(abs(c)).get_str() + "*" + mono;
      }
      if (out.empty()) {
        out = (c < 0 ? "-" : "") + body;
      } else {
        out += (c < 0 ? " - " : " + ") + body;
      }
    }
    return out;
  }

 private:
  static AlgContextPtr merge_context(const AlgContextPtr& a, const AlgContextPtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (!same_context(a, b)) throw RegistryMismatch("algebraic numbers from different extensions");
    return a;
  }

  std::vector<Rational> dense() const {
    std::vector<Rational> d;
    d.reserve(tail_.size() + 1);
    d.push_back(head_);
    d.insert(d.end(), tail_.begin(), tail_.end());
    return d;
  }

  static AlgNumber from_dense(const AlgContextPtr& ctx, std::vector<Rational> d) {
    AlgNumber r;
    r.ctx_ = ctx;
    if (!d.empty()) {
      r.head_ = d[0];
      r.tail_.assign(d.begin() + 1, d.end());
    }
    r.trim();
    return r;
  }

  static void trim_poly(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  }

  static std::vector<Rational> reduce_mod(const AlgContext& ctx, std::vector<Rational> p) {
    const auto& m = ctx.modulus();
    std::size_t deg = m.size() - 1;
    trim_poly(p);
    while (p.size() > deg) {
      Rational lead = p.back();
      std::size_t shift = p.size() - 1 - deg;
      for (std::size_t i = 0; i <= deg; ++i) p[shift + i] -= lead * m[i];
      trim_poly(p);
    }
    return p;
  }

  static std::vector<Rational> mul_poly(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim_poly(r);
    return r;
  }

  static std::vector<Rational> sub_poly(std::vector<Rational> a, const std::vector<Rational>& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim_poly(a);
    return a;
  }

  static std::pair<std::vector<Rational>, std::vector<Rational>> divmod_poly(std::vector<Rational> a,
                                                                             const std::vector<Rational>& b) {
    trim_poly(a);
    std::vector<Rational> q;
    if (a.size() >= b.size()) q.resize(a.size() - b.size() + 1);
    while (!a.empty() && a.size() >= b.size()) {
      Rational c = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      q[shift] = c;
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
      trim_poly(a);
    }
    trim_poly(q);
    return {q, a};
  }

  void trim() {
    while (!tail_.empty() && tail_.back() == 0) tail_.pop_back();
  }

  AlgContextPtr ctx_;
  Rational head_ = 0;
  std::vector<Rational> tail_;
};

}  // namespace hgo
