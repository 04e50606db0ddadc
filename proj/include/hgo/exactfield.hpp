#pragma once

// The coefficient tower Q ⊂ Q(zeta) ⊂ Q(zeta)(params) and rational functions over it.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hgo/fraction.hpp"
#include "hgo/linalg.hpp"
#include "hgo/parse.hpp"
#include "hgo/polynomial.hpp"
#include "hgo/scalar.hpp"

namespace hgo {

using ParamPoly = Polynomial<AlgNumber>;

template <>
struct univariate_gcd<AlgNumber> : std::true_type {};

using ParamElem = Fraction<AlgNumber>;
using Poly = Polynomial<ParamElem>;
using RatFunc = Fraction<ParamElem>;

/// f lies in the (Laurent) polynomial ring.
inline bool is_in_lattice(const RatFunc& f) { return f.is_polynomial(); }

/// Registries for one computation: main variables, parameters (all Laurent) and
/// an optional algebraic extension.
class Field {
 public:
  Field(VarsPtr vars, VarsPtr params, AlgContextPtr alg = nullptr)
      : vars_(std::move(vars)), params_(std::move(params)), alg_(std::move(alg)) {
    if (!vars_) vars_ = make_vars({});
    if (!params_) params_ = make_vars({}, true);
    for (int i = 0; i < params_->size(); ++i) {
      if (!params_->laurent(i)) throw InvalidArgument("parameters must be Laurent");
      if (vars_->index_of(params_->name(i)) >= 0) throw InvalidArgument("name used twice: " + params_->name(i));
    }
  }

  const VarsPtr& vars() const { return vars_; }
  const VarsPtr& params() const { return params_; }
  const AlgContextPtr& alg() const { return alg_; }
  int nvars() const { return vars_->size(); }

  RatFunc var(int i, int power = 1) const { return RatFunc::variable(vars_, i, power); }
  RatFunc var(const std::string& name, int power = 1) const {
    int i = vars_->index_of(name);
    if (i < 0) throw InvalidArgument("unknown variable " + name);
    return var(i, power);
  }

  ParamElem param(const std::string& name, int power = 1) const {
    int i = params_->index_of(name);
    if (i < 0) throw InvalidArgument("unknown parameter " + name);
    return ParamElem::variable(params_, i, power);
  }

  ParamElem zeta() const {
    if (!alg_) throw InvalidArgument("no algebraic extension declared");
    return ParamElem(AlgNumber::generator(alg_));
  }

  RatFunc lift(const ParamElem& c) const { return RatFunc(Poly::constant(c, vars_)); }
  RatFunc constant(long c) const { return lift(ParamElem(c)); }
  RatFunc zero() const { return RatFunc::zero(vars_); }
  RatFunc one() const { return RatFunc::one(vars_); }

  /// Polynomial ring variables, parameters and the extension generator are
  /// recognized by name; other identifiers go to `fallback` if given.
  RatFunc parse(const std::string& text,
                const std::function<RatFunc(const std::string&)>& fallback = nullptr) const {
    ExprOps<RatFunc> ops;
    ops.identifier = [&](const std::string& id) -> RatFunc {
      if (vars_->index_of(id) >= 0) return var(id);
      if (params_->index_of(id) >= 0) return lift(param(id));
      if (alg_ && id == alg_->generator()) return lift(zeta());
      if (fallback) return fallback(id);
      throw ParseError("unknown identifier " + id);
    };
    ops.number = [this](const Rational& r) { return lift(ParamElem(AlgNumber(r))); };
    ops.divide = [](const RatFunc& a, const RatFunc& b) { return a / b; };
    ops.power = [](const RatFunc& a, long k) { return a.pow(static_cast<int>(k)); };
    return parse_expression(text, ops);
  }

  ParamElem parse_scalar(const std::string& text) const {
    ExprOps<ParamElem> ops;
    ops.identifier = [&](const std::string& id) -> ParamElem {
      if (params_->index_of(id) >= 0) return param(id);
      if (alg_ && id == alg_->generator()) return zeta();
      throw ParseError("unknown parameter " + id);
    };
    ops.number = [](const Rational& r) { return ParamElem(AlgNumber(r)); };
    ops.divide = [](const ParamElem& a, const ParamElem& b) { return a / b; };
    ops.power = [](const ParamElem& a, long k) { return a.pow(static_cast<int>(k)); };
    return parse_expression(text, ops);
  }

  /// Monomials with Laurent exponents in [-d, d] and degree at most d in the
  /// polynomial variables, ordered by absolute degree, grlex-descending within a level.
  std::vector<Monomial> monomial_window(int d) const {
    std::vector<Monomial> out;
    Monomial m;
    enumerate(0, d, m, out);
    auto norm = [](const Monomial& x) {
      int n = 0;
      for (auto k : x.e) n += std::abs(k);
      return n;
    };
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
      int na = norm(a), nb = norm(b);
      return na != nb ? na < nb : b < a;
    });
    return out;
  }

 private:
  void enumerate(int i, int d, Monomial& m, std::vector<Monomial>& out) const {
    if (i == vars_->size()) {
      int deg = 0;
      for (int j = 0; j < i; ++j) deg += vars_->laurent(j) ? 0 : m.e[j];
      if (deg <= d) out.push_back(m);
      return;
    }
    int lo = vars_->laurent(i) ? -d : 0;
    for (int k = lo; k <= d; ++k) {
      m.e[i] = static_cast<int16_t>(k);
      enumerate(i + 1, d, m, out);
    }
    m.e[i] = 0;
  }

  VarsPtr vars_;
  VarsPtr params_;
  AlgContextPtr alg_;
};

using FieldPtr = std::shared_ptr<const Field>;

}  // namespace hgo
