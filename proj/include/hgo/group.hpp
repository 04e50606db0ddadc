#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hgo/exactfield.hpp"

namespace hgo {

/// How a matrix group element w acts on the variables.
enum class ActionMode {
  /// Matrices act on V and variables are coordinates on V: (w▷f)(v) = f(w⁻¹v).
  linear_on_v,
  /// Matrices act directly on the span of the variables: w▷x_i = Σ_j A_ji x_j.
  linear_on_functions,
  /// Variables are characters of a torus and matrices act on exponent vectors:
  /// w▷z_i = Π_j z_j^{A_ji}.
  monomial_on_characters,
};

using ScalarMatrix = linalg::Matrix<AlgNumber>;

/// Finite matrix group, enumerated eagerly by closing a generating set.
class Group {
 public:
  static constexpr std::size_t kMaxOrder = 10000;

  Group() : Group(0, {}) {}

  Group(int dim, const std::vector<ScalarMatrix>& generators) : dim_(dim) {
    for (const auto& g : generators) {
      if (static_cast<int>(g.size()) != dim || (dim > 0 && static_cast<int>(g[0].size()) != dim)) {
        throw InvalidArgument("group generator has the wrong shape");
      }
      if (!linalg::inverse(g)) throw InvalidArgument("group generator is not invertible");
    }
    add(linalg::identity<AlgNumber>(dim));
    for (std::size_t head = 0; head < elements_.size(); ++head) {
      for (const auto& g : generators) {
        ScalarMatrix p = linalg::multiply(elements_[head], g);
        if (index_.count(key(p)) == 0) {
          if (elements_.size() >= kMaxOrder) {
            throw InvalidArgument("group exceeds " + std::to_string(kMaxOrder) + " elements or is infinite");
          }
          add(std::move(p));
        }
      }
    }
    std::size_t n = elements_.size();
    inverse_.assign(n, -1);
    if (n <= 1024) {
      table_.assign(n, std::vector<int>(n, -1));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) table_[i][j] = lookup(linalg::multiply(elements_[i], elements_[j]));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (mul(static_cast<int>(i), static_cast<int>(j)) == 0) {
          inverse_[i] = static_cast<int>(j);
          break;
        }
      }
    }
    for (const auto& g : generators) generator_indices_.push_back(lookup(g));
  }

  int dim() const { return dim_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const ScalarMatrix& matrix(int w) const { return elements_.at(w); }
  const std::vector<int>& generator_indices() const { return generator_indices_; }
  int inverse(int w) const { return inverse_.at(w); }

  int mul(int a, int b) const {
    if (!table_.empty()) return table_[a][b];
    return lookup(linalg::multiply(elements_[a], elements_[b]));
  }

  int lookup(const ScalarMatrix& m) const {
    auto it = index_.find(key(m));
    if (it == index_.end()) throw InvalidArgument("matrix is not in the group: generating set is not closed");
    return it->second;
  }

 private:
  static std::string key(const ScalarMatrix& m) {
    std::string k;
    for (const auto& row : m) {
      for (const auto& x : row) {
        k += x.to_string();
        k += ',';
      }
      k += ';';
    }
    return k;
  }

  void add(ScalarMatrix m) {
    index_.emplace(key(m), static_cast<int>(elements_.size()));
    elements_.push_back(std::move(m));
  }

  int dim_;
  std::vector<ScalarMatrix> elements_;
  std::map<std::string, int> index_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> generator_indices_;
};

/// Element (w, μ) of the semidirect product of a shift monoid with W. The shift
/// part acts by x_i ↦ x_i + μ_i.
struct GroupPart {
  int w = 0;
  std::array<int16_t, kMaxVars> mu{};

  bool has_shift() const {
    for (auto x : mu) {
      if (x != 0) return true;
    }
    return false;
  }
  bool is_identity() const { return w == 0 && !has_shift(); }

  friend bool operator==(const GroupPart& a, const GroupPart& b) { return a.w == b.w && a.mu == b.mu; }
  friend bool operator!=(const GroupPart& a, const GroupPart& b) { return !(a == b); }
  friend bool operator<(const GroupPart& a, const GroupPart& b) {
    if (a.w != b.w) return a.w < b.w;
    return a.mu < b.mu;
  }
};

}  // namespace hgo
