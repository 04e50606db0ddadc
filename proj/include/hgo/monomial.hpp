#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hgo/error.hpp"

namespace hgo {

inline constexpr int kMaxVars = 8;

/// Ordered list of variable names with a Laurent flag each.
class VariableSet {
 public:
  VariableSet() = default;
  VariableSet(std::vector<std::string> names, std::vector<bool> laurent)
      : names_(std::move(names)), laurent_(std::move(laurent)) {
    if (names_.size() != laurent_.size()) throw InvalidArgument("variable names and Laurent flags differ in length");
    if (names_.size() > static_cast<std::size_t>(kMaxVars)) {
      throw InvalidArgument("at most " + std::to_string(kMaxVars) + " variables are supported");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) throw InvalidArgument("duplicate variable name " + names_[i]);
      }
    }
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  bool laurent(int i) const { return laurent_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  int index_of(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == n) return static_cast<int>(i);
    }
    return -1;
  }

  bool operator==(const VariableSet& o) const { return names_ == o.names_ && laurent_ == o.laurent_; }

 private:
  std::vector<std::string> names_;
  std::vector<bool> laurent_;
};

using VarsPtr = std::shared_ptr<const VariableSet>;

inline VarsPtr make_vars(std::vector<std::string> names, std::vector<bool> laurent) {
  return std::make_shared<const VariableSet>(std::move(names), std::move(laurent));
}

inline VarsPtr make_vars(std::vector<std::string> names, bool laurent = false) {
  std::vector<bool> flags(names.size(), laurent);
  return make_vars(std::move(names), std::move(flags));
}

/// Null registries stand for context-free constants.
inline VarsPtr merge_vars(const VarsPtr& a, const VarsPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (!(*a == *b)) throw RegistryMismatch("operands use different variable registries");
  return a;
}

struct Monomial {
  std::array<int16_t, kMaxVars> e{};

  int total_degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_one() const {
    for (auto x : e) {
      if (x != 0) return false;
    }
    return true;
  }
  static Monomial var(int i, int power = 1) {
    Monomial m;
    m.e[i] = static_cast<int16_t>(power);
    return m;
  }

  friend Monomial operator+(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<int16_t>(a.e[i] + b.e[i]);
    return r;
  }
  friend Monomial operator-(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<int16_t>(a.e[i] - b.e[i]);
    return r;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }

  /// Graded lexicographic: total degree first, then the earlier variable wins.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    for (int i = 0; i < kMaxVars; ++i) {
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    }
    return false;
  }

  /// True if every exponent of `a` is at least the matching exponent of `b`.
  bool divisible_by(const Monomial& b) const {
    for (int i = 0; i < kMaxVars; ++i) {
      if (e[i] < b.e[i]) return false;
    }
    return true;
  }

  std::string to_string(const VariableSet* vars) const {
    std::string out;
    for (int i = 0; i < kMaxVars; ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += vars ? vars->name(i) : "v" + std::to_string(i);
      if (e[i] != 1) out += "^" + std::to_string(e[i]);
    }
    return out;
  }
};

}  // namespace hgo
