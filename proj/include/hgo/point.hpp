#pragma once

#include <string>
#include <vector>

#include "hgo/setting.hpp"

namespace hgo {

/// Maximal ideal of a point λ with coordinates in the coefficient tower.
class PointIdeal {
 public:
  PointIdeal() = default;
  PointIdeal(VarsPtr vars, std::vector<ParamElem> coords) : vars_(std::move(vars)), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != vars_->size()) throw InvalidArgument("point needs one coordinate per variable");
    for (int i = 0; i < vars_->size(); ++i) {
      if (vars_->laurent(i) && coords_[i].is_zero()) {
        throw InvalidArgument("point lies outside the torus: coordinate " + vars_->name(i) + " is 0");
      }
    }
  }

  static PointIdeal parse(const Field& f, const std::vector<std::string>& coords) {
    std::vector<ParamElem> c;
    for (const auto& s : coords) c.push_back(f.parse_scalar(s));
    return PointIdeal(f.vars(), std::move(c));
  }

  static PointIdeal origin(const Field& f) {
    return PointIdeal(f.vars(), std::vector<ParamElem>(f.nvars(), ParamElem(0)));
  }

  const VarsPtr& vars() const { return vars_; }
  const std::vector<ParamElem>& coords() const { return coords_; }
  int size() const { return static_cast<int>(coords_.size()); }

  ParamElem evaluate(const RatFunc& f) const { return f.evaluate(coords_); }

  /// φ_g(λ) with φ_g(λ)_i = (g▷x_i)(λ); g fixes 𝔪_λ iff φ_g(λ) = λ, and
  /// g(𝔪_λ) is the ideal of φ_{g⁻¹}(λ).
  PointIdeal image(const Setting& s, const GroupPart& g) const {
    std::vector<ParamElem> c;
    for (const auto& im : s.images(g)) c.push_back(evaluate(im));
    return PointIdeal(vars_, std::move(c));
  }

  /// Image under the twist of a skew-primitive generator.
  PointIdeal twist_image(const Setting& s, int j) const {
    std::vector<ParamElem> c;
    for (int i = 0; i < size(); ++i) c.push_back(evaluate(s.act_twist(j, s.field().var(i))));
    return PointIdeal(vars_, std::move(c));
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) out += ", ";
      out += coords_[i].to_string();
    }
    return out + ")";
  }

  friend bool operator==(const PointIdeal& a, const PointIdeal& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const PointIdeal& a, const PointIdeal& b) { return !(a == b); }

 private:
  VarsPtr vars_;
  std::vector<ParamElem> coords_;
};

}  // namespace hgo
