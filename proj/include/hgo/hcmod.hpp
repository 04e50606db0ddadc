#pragma once

// Truncated modules of local distributions and their canonical simple quotients.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hgo/stabilizer.hpp"
#include "hgo/verify.hpp"

namespace hgo {

/// Σ c · (∂^α f)(p)/α!, i.e. coefficients on the Taylor-coefficient functionals.
class DistributionVector {
 public:
  using Key = std::pair<int, Monomial>;

  static DistributionVector evaluation(const PointIdeal& p) {
    DistributionVector d;
    d.add(p, Monomial{}, ParamElem(1));
    return d;
  }

  const std::vector<PointIdeal>& points() const { return points_; }
  const std::map<Key, ParamElem>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  int point_index(const PointIdeal& p) const {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i] == p) return static_cast<int>(i);
    }
    return -1;
  }

  void add(const PointIdeal& p, const Monomial& alpha, const ParamElem& c) {
    if (c.is_zero()) return;
    int i = point_index(p);
    if (i < 0) {
      i = static_cast<int>(points_.size());
      points_.push_back(p);
    }
    auto [it, fresh] = coeffs_.emplace(Key{i, alpha}, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  ParamElem coefficient(const PointIdeal& p, const Monomial& alpha) const {
    int i = point_index(p);
    if (i < 0) return ParamElem(0);
    auto it = coeffs_.find(Key{i, alpha});
    return it == coeffs_.end() ? ParamElem(0) : it->second;
  }

  /// Points carrying a nonzero coefficient, in registry order.
  std::vector<PointIdeal> support() const {
    std::vector<PointIdeal> out;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      for (const auto& [k, c] : coeffs_) {
        if (k.first == static_cast<int>(i)) {
          out.push_back(points_[i]);
          break;
        }
      }
    }
    return out;
  }

  int order() const {
    int o = 0;
    for (const auto& [k, c] : coeffs_) o = std::max(o, k.second.total_degree());
    return o;
  }

  DistributionVector scaled(const ParamElem& s) const {
    DistributionVector r;
    for (const auto& [k, c] : coeffs_) r.add(points_[k.first], k.second, c * s);
    return r;
  }

  friend DistributionVector operator+(const DistributionVector& a, const DistributionVector& b) {
    DistributionVector r = a;
    for (const auto& [k, c] : b.coeffs_) r.add(b.points_[k.first], k.second, c);
    return r;
  }
  friend DistributionVector operator-(const DistributionVector& a, const DistributionVector& b) {
    return a + b.scaled(ParamElem(-1));
  }
  friend bool operator==(const DistributionVector& a, const DistributionVector& b) { return (a - b).is_zero(); }

  ParamElem evaluate(const RatFunc& f) const;

  std::string to_string(const Field& f) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : coeffs_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")*J" + points_[k.first].to_string();
      if (!k.second.is_one()) out += "[" + k.second.to_string(f.vars().get()) + "]";
    }
    return out;
  }

 private:
  std::vector<PointIdeal> points_;
  std::map<Key, ParamElem> coeffs_;
};

/// Taylor coefficient of x^β at p in direction α: Π_i binom(β_i, α_i) p_i^{β_i − α_i}.
inline ParamElem taylor_monomial(const Monomial& beta, const PointIdeal& p, const Monomial& alpha) {
  ParamElem r(1);
  for (int i = 0; i < p.size(); ++i) {
    int b = beta.e[i], a = alpha.e[i];
    if (a == 0 && b == 0) continue;
    if (b >= 0 && a > b) return ParamElem(0);
    Rational binom = 1;
    for (int k = 0; k < a; ++k) binom = binom * Rational(b - k) / Rational(k + 1);
    int e = b - a;
    ParamElem pw = e == 0 ? ParamElem(1) : (p.coords()[i].is_zero() ? ParamElem(0) : p.coords()[i].pow(e));
    r = r * ParamElem(AlgNumber(binom)) * pw;
    if (r.is_zero()) return r;
  }
  return r;
}

inline ParamElem taylor_coefficient(const RatFunc& f, const PointIdeal& p, const Monomial& alpha) {
  if (!is_in_lattice(f)) throw PreconditionError("Taylor coefficients are taken of lattice elements only");
  ParamElem r(0);
  for (const auto& [beta, c] : f.numerator().terms()) {
    ParamElem t = taylor_monomial(beta, p, alpha);
    if (!t.is_zero()) r = r + c * t;
  }
  return r;
}

inline ParamElem DistributionVector::evaluate(const RatFunc& f) const {
  ParamElem r(0);
  for (const auto& [k, c] : coeffs_) r = r + c * taylor_coefficient(f, points_[k.first], k.second);
  return r;
}

/// Monomials with non-negative exponents of degree ≤ d in n variables.
inline std::vector<Monomial> jet_monomials(int n, int d) {
  std::vector<Monomial> out;
  Monomial m;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      out.push_back(m);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      m.e[i] = static_cast<int16_t>(k);
      rec(i + 1, left - k);
    }
    m.e[i] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end());
  return out;
}

inline int skew_degree(const Setting& s, const Monomial& alpha) {
  int d = 0;
  for (int j = 0; j < s.ninf(); ++j) {
    if (s.infinitesimals()[j].kind == GenKind::skew_primitive) d += alpha.e[j];
  }
  return d;
}

/// Points where X·ξ can be supported when ξ is supported at p: images under the
/// group parts of X and their twists by skew-primitive powers.
inline std::vector<PointIdeal> candidate_points(const SmashElement& x, const PointIdeal& p) {
  const Setting& s = *x.setting();
  int twist_index = -1;
  for (int j = 0; j < s.ninf(); ++j) {
    if (s.infinitesimals()[j].kind == GenKind::skew_primitive) twist_index = j;
  }
  std::vector<PointIdeal> out;
  auto push = [&out](const PointIdeal& q) {
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  };
  for (const auto& [k, c] : x.terms()) {
    PointIdeal q = p.image(s, k.g);
    push(q);
    for (int i = 0; i < skew_degree(s, k.alpha); ++i) {
      q = q.twist_image(s, twist_index);
      push(q);
    }
  }
  return out;
}

struct ActionResult {
  DistributionVector value;
  bool leaked = false;  // nonzero coefficients above the jet order were dropped
};

/// Memo of X̂ on test monomials, shared across calls with the same X.
using ApplyCache = std::map<Monomial, RatFunc>;

/// (X·ξ)(a) = ξ(X̂(a)). The result is recovered exactly from its values on
/// Hermite-type test functions at the candidate support points, raising the
/// trial order until it also matches on a window of test monomials.
inline ActionResult distribution_action(const SmashElement& x, const DistributionVector& xi, int N,
                                        ApplyCache* cache = nullptr) {
  ActionResult out;
  if (xi.is_zero() || x.is_zero()) return out;
  const Setting& s = *x.setting();
  const Field& f = s.field();
  int n = s.nvars();
  bool moves = false;
  for (const auto& [k, c] : x.terms()) moves = moves || !k.g.is_identity() || skew_degree(s, k.alpha) > 0;
  std::vector<PointIdeal> cand;
  for (const auto& p : xi.support()) {
    for (const auto& q : candidate_points(x, p)) {
      if (std::find(cand.begin(), cand.end(), q) == cand.end()) cand.push_back(q);
    }
  }
  ApplyCache local;
  ApplyCache& memo = cache ? *cache : local;
  auto image = [&](const Monomial& m) -> const RatFunc& {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    RatFunc v = x.apply(monomial_function(f, m));
    if (!is_in_lattice(v)) throw PreconditionError("element does not preserve the lattice");
    return memo.emplace(m, std::move(v)).first->second;
  };
  std::map<Monomial, ParamElem> values;  // ξ(X̂ x^m)
  auto value = [&](const Monomial& m) -> const ParamElem& {
    auto it = values.find(m);
    if (it != values.end()) return it->second;
    return values.emplace(m, xi.evaluate(image(m))).first->second;
  };
  auto value_of = [&](const RatFunc& g) {
    ParamElem r(0);
    for (const auto& [m, c] : g.numerator().terms()) r = r + c * value(m);
    return r;
  };
  int base = xi.order() + x.filtration_degree() + (moves ? 1 : 0);
  int ns = static_cast<int>(cand.size());
  for (int order = base; order <= base + 4; ++order) {
    auto jets = jet_monomials(n, order);
    std::sort(jets.begin(), jets.end(),
              [](const Monomial& a, const Monomial& b) { return a.total_degree() > b.total_degree(); });
    std::vector<std::map<Monomial, ParamElem>> fit(cand.size());
    for (std::size_t p = 0; p < cand.size(); ++p) {
      // w vanishes to order > `order` at every other candidate and w(p) = 1, so the
      // tests (x - p)^β w are unitriangular against the Taylor functionals at p.
      RatFunc w = f.one();
      for (std::size_t o = 0; o < cand.size(); ++o) {
        if (o == p) continue;
        int i = 0;
        while (cand[o].coords()[i] == cand[p].coords()[i]) ++i;
        const ParamElem& qo = cand[o].coords()[i];
        RatFunc factor = (f.var(i) - f.lift(qo)) / f.lift(cand[p].coords()[i] - qo);
        w = w * factor.pow(order + 1);
      }
      for (const auto& beta : jets) {
        RatFunc test = w;
        for (int i = 0; i < n; ++i) {
          if (beta.e[i] > 0) test = test * (f.var(i) - f.lift(cand[p].coords()[i])).pow(beta.e[i]);
        }
        ParamElem d = value_of(test);
        for (const auto& [gamma, c] : fit[p]) {
          bool above = true;
          for (int i = 0; i < n; ++i) above = above && gamma.e[i] >= beta.e[i];
          if (above) d = d - c * taylor_coefficient(test, cand[p], gamma);
        }
        if (!d.is_zero()) fit[p].emplace(beta, d);
      }
    }
    bool consistent = true;
    for (const auto& m : jet_monomials(n, order + ns)) {
      ParamElem predicted(0);
      for (std::size_t p = 0; p < cand.size(); ++p) {
        for (const auto& [gamma, c] : fit[p]) predicted = predicted + c * taylor_monomial(m, cand[p], gamma);
      }
      if (predicted != value(m)) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;
    for (std::size_t p = 0; p < cand.size(); ++p) {
      for (const auto& [gamma, c] : fit[p]) {
        if (gamma.total_degree() > N) {
          out.leaked = true;
        } else {
          out.value.add(cand[p], gamma, c);
        }
      }
    }
    return out;
  }
  throw PreconditionError("action does not close on the candidate support points");
}

struct TruncatedModule {
  OrderPresentation presentation;
  PointIdeal lambda;
  int jet_order = 0;
  int word_length = 0;
  int orbit_window = 0;
  int closure_depth = 0;
  std::vector<PointIdeal> orbit;
  std::vector<DistributionVector> basis;
  std::vector<int> basis_point;  // orbit index of each basis vector
  std::vector<linalg::Matrix<ParamElem>> matrices;  // one per generator; column j = image of basis j
  std::vector<bool> leakage;                        // jet truncation per generator
  std::vector<bool> orbit_leakage;                  // support beyond the orbit window per generator

  int dim() const { return static_cast<int>(basis.size()); }

  int orbit_index(const PointIdeal& p) const {
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      if (orbit[i] == p) return static_cast<int>(i);
    }
    return -1;
  }

  /// Generalized weight space dimension at each orbit point.
  std::vector<int> weight_dims() const {
    std::vector<int> d(orbit.size(), 0);
    for (int p : basis_point) ++d[p];
    return d;
  }

  /// Common eigenvectors of the lattice generators with eigenvalues a(p).
  std::vector<std::vector<ParamElem>> ordinary_weight_space(const PointIdeal& p) const {
    std::size_t n = basis.size();
    linalg::Matrix<ParamElem> stacked;
    for (std::size_t g = 0; g < presentation.generators.size(); ++g) {
      const auto& gen = presentation.generators[g].value;
      if (!gen.is_function()) continue;
      ParamElem ev = p.evaluate(gen.as_function());
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<ParamElem> row = matrices[g][i];
        row[i] = row[i] - ev;
        stacked.push_back(std::move(row));
      }
    }
    if (stacked.empty()) stacked.push_back(std::vector<ParamElem>(n, ParamElem(0)));
    return linalg::nullspace(stacked, n);
  }

  bool leaked() const {
    for (bool b : leakage) {
      if (b) return true;
    }
    for (bool b : orbit_leakage) {
      if (b) return true;
    }
    return false;
  }

  Json to_json() const {
    const Field& f = presentation.setting->field();
    Json j;
    j["lambda"] = lambda.to_string();
    j["bounds"] = Json{{"jet_order", jet_order}, {"word_length", word_length}, {"orbit_window", orbit_window}};
    j["closure_depth"] = closure_depth;
    j["dimension"] = dim();
    Json pts = Json::array();
    auto wd = weight_dims();
    for (std::size_t i = 0; i < orbit.size(); ++i) pts.push_back(Json{{"point", orbit[i].to_string()}, {"dimension", wd[i]}});
    j["weights"] = pts;
    j["ordinary_weight_dimension"] = ordinary_weight_space(lambda).size();
    Json b = Json::array();
    for (const auto& v : basis) b.push_back(v.to_string(f));
    j["basis"] = b;
    Json mats = Json::object();
    for (std::size_t g = 0; g < matrices.size(); ++g) {
      Json m = Json::array();
      for (const auto& row : matrices[g]) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(c.to_string());
        m.push_back(r);
      }
      mats[presentation.generators[g].name] = Json{{"matrix", m}, {"jet_leakage", static_cast<bool>(leakage[g])},
                                                   {"orbit_leakage", static_cast<bool>(orbit_leakage[g])}};
    }
    j["action"] = mats;
    return j;
  }
};

namespace detail {

/// Incremental echelon basis of coordinate vectors over a growing index set.
class JetSpan {
 public:
  std::size_t coordinate(int point, const Monomial& alpha) {
    auto [it, fresh] = index_.emplace(std::make_pair(point, alpha), index_.size());
    return it->second;
  }

  std::vector<ParamElem> coords(const DistributionVector& v, const std::vector<PointIdeal>& orbit) {
    std::vector<std::pair<std::size_t, ParamElem>> entries;
    for (const auto& [k, c] : v.coefficients()) {
      int p = -1;
      for (std::size_t i = 0; i < orbit.size(); ++i) {
        if (orbit[i] == v.points()[k.first]) p = static_cast<int>(i);
      }
      entries.emplace_back(coordinate(p, k.second), c);
    }
    std::vector<ParamElem> out(index_.size(), ParamElem(0));
    for (auto& [i, c] : entries) out[i] = c;
    return out;
  }

  /// Reduces against the stored rows; returns true and stores if independent.
  bool insert(std::vector<ParamElem> v) {
    std::size_t width = v.size();
    for (const auto& [piv, row] : rows_) width = std::max(width, row.size());
    v.resize(width, ParamElem(0));
    for (auto& [piv, row] : rows_) row.resize(width, ParamElem(0));
    for (const auto& [piv, row] : rows_) {
      if (!v[piv].is_zero()) {
        ParamElem c = v[piv];
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (!row[i].is_zero()) v[i] = v[i] - c * row[i];
        }
      }
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      ParamElem inv = v[i].inverse();
      for (auto& x : v) x = x * inv;
      for (auto& [piv, row] : rows_) {
        if (!row[i].is_zero()) {
          ParamElem c = row[i];
          for (std::size_t k = 0; k < v.size(); ++k) {
            if (!v[k].is_zero()) row[k] = row[k] - c * v[k];
          }
        }
      }
      rows_.emplace_back(i, std::move(v));
      return true;
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::map<std::pair<int, Monomial>, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::vector<ParamElem>>> rows_;
};

inline DistributionVector restrict_to(const DistributionVector& v, const PointIdeal& p) {
  DistributionVector r;
  for (const auto& [k, c] : v.coefficients()) {
    if (v.points()[k.first] == p) r.add(p, k.second, c);
  }
  return r;
}

}  // namespace detail

/// Cyclic F^op-submodule of truncated distributions generated by the evaluation
/// at λ. Words up to `word_length` are spanned first; the span is then closed
/// under the generators so that the action matrices are defined.
inline TruncatedModule cyclic_module(const OrderPresentation& F, const PointIdeal& lambda, int N, int word_length,
                                     int orbit_window = 4) {
  if (N < 0 || word_length < 0) throw InvalidArgument("bounds must be non-negative");
  const Setting& s = *F.setting;
  TruncatedModule m;
  m.presentation = F;
  m.lambda = lambda;
  m.jet_order = N;
  m.word_length = word_length;
  m.orbit_window = orbit_window;
  m.orbit.push_back(lambda);
  std::vector<int> depth = {0};
  std::size_t ng = F.generators.size();
  m.leakage.assign(ng, false);
  m.orbit_leakage.assign(ng, false);
  std::vector<ApplyCache> caches(ng);

  auto act = [&](std::size_t g, const DistributionVector& v) {
    ActionResult r = distribution_action(F.generators[g].value, v, N, &caches[g]);
    if (r.leaked) m.leakage[g] = true;
    DistributionVector kept;
    for (const auto& [k, c] : r.value.coefficients()) {
      const PointIdeal& p = r.value.points()[k.first];
      int idx = m.orbit_index(p);
      if (idx < 0) {
        int reach = 1 << 20;
        for (const auto& src : v.support()) {
          auto cands = candidate_points(F.generators[g].value, src);
          if (std::find(cands.begin(), cands.end(), p) != cands.end()) {
            reach = std::min(reach, depth[m.orbit_index(src)] + 1);
          }
        }
        if (reach > orbit_window) {
          m.orbit_leakage[g] = true;
          continue;
        }
        m.orbit.push_back(p);
        depth.push_back(reach);
      }
      kept.add(p, k.second, c);
    }
    return kept;
  };

  detail::JetSpan span;
  std::vector<DistributionVector> found;
  std::vector<DistributionVector> frontier = {DistributionVector::evaluation(lambda)};
  span.insert(span.coords(frontier.front(), m.orbit));
  found.push_back(frontier.front());
  int level = 0;
  while (!frontier.empty()) {
    std::vector<DistributionVector> next;
    for (const auto& v : frontier) {
      for (std::size_t g = 0; g < ng; ++g) {
        DistributionVector w = act(g, v);
        if (w.is_zero()) continue;
        if (span.insert(span.coords(w, m.orbit))) {
          next.push_back(w);
          found.push_back(w);
        }
      }
    }
    frontier = std::move(next);
    if (!frontier.empty()) ++level;
  }
  m.closure_depth = level;

  // Weight-adapted basis: components of the spanning vectors at each orbit point.
  detail::JetSpan adapted;
  for (const auto& v : found) {
    for (std::size_t p = 0; p < m.orbit.size(); ++p) {
      DistributionVector part = detail::restrict_to(v, m.orbit[p]);
      if (part.is_zero()) continue;
      if (adapted.insert(adapted.coords(part, m.orbit))) {
        m.basis.push_back(part);
        m.basis_point.push_back(static_cast<int>(p));
      }
    }
  }
  if (m.basis.size() != span.rank()) {
    throw PreconditionError("module is not a sum of weight blocks: the presentation must contain generators of the lattice");
  }

  // Action matrices in the adapted basis.
  detail::JetSpan coords;
  std::vector<std::vector<ParamElem>> bcoords;
  for (const auto& b : m.basis) bcoords.push_back(coords.coords(b, m.orbit));
  for (std::size_t g = 0; g < ng; ++g) {
    linalg::Matrix<ParamElem> mat(m.basis.size(), std::vector<ParamElem>(m.basis.size(), ParamElem(0)));
    for (std::size_t j = 0; j < m.basis.size(); ++j) {
      DistributionVector w = act(g, m.basis[j]);
      std::vector<ParamElem> wc = coords.coords(w, m.orbit);
      linalg::Matrix<ParamElem> a(wc.size(), std::vector<ParamElem>(m.basis.size(), ParamElem(0)));
      for (std::size_t i = 0; i < m.basis.size(); ++i) {
        for (std::size_t r = 0; r < bcoords[i].size() && r < wc.size(); ++r) a[r][i] = bcoords[i][r];
      }
      auto sol = linalg::solve(a, wc);
      if (!sol) throw PreconditionError("module is not closed under " + F.generators[g].name);
      for (std::size_t i = 0; i < m.basis.size(); ++i) mat[i][j] = (*sol)[i];
    }
    m.matrices.push_back(std::move(mat));
  }
  return m;
}

namespace detail {

/// Rows spanning the annihilator of span(cols): K v = 0 iff v ∈ span.
inline linalg::Matrix<ParamElem> annihilator(const std::vector<std::vector<ParamElem>>& cols, std::size_t n) {
  if (cols.empty()) return linalg::identity<ParamElem>(n);
  linalg::Matrix<ParamElem> rows = cols;  // each basis vector as a row
  return linalg::nullspace(rows, n);
}

}  // namespace detail

/// Largest submodule meeting the λ-line trivially, found inside the sum of the
/// non-λ weight blocks by iterated preimages.
inline std::vector<std::vector<ParamElem>> maximal_submodule(const TruncatedModule& M) {
  std::size_t n = M.basis.size();
  if (M.ordinary_weight_space(M.lambda).size() != 1) {
    throw PreconditionError("ordinary weight space at lambda is not one-dimensional");
  }
  int home = M.orbit_index(M.lambda);
  std::vector<std::vector<ParamElem>> u;
  for (std::size_t i = 0; i < n; ++i) {
    if (M.basis_point[i] == home) continue;
    std::vector<ParamElem> e(n, ParamElem(0));
    e[i] = ParamElem(1);
    u.push_back(std::move(e));
  }
  for (std::size_t iter = 0; iter <= n + 1; ++iter) {
    if (u.empty()) return u;
    auto k = detail::annihilator(u, n);
    // c ∈ ker of K·A_X·B for every generator X.
    linalg::Matrix<ParamElem> stacked;
    for (const auto& a : M.matrices) {
      for (const auto& krow : k) {
        std::vector<ParamElem> row(u.size(), ParamElem(0));
        for (std::size_t c = 0; c < u.size(); ++c) {
          ParamElem acc(0);
          for (std::size_t i = 0; i < n; ++i) {
            if (krow[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
              if (!a[i][j].is_zero() && !u[c][j].is_zero()) acc = acc + krow[i] * a[i][j] * u[c][j];
            }
          }
          row[c] = acc;
        }
        stacked.push_back(std::move(row));
      }
    }
    if (stacked.empty()) return u;
    auto null = linalg::nullspace(stacked, u.size());
    if (null.size() == u.size()) return u;
    std::vector<std::vector<ParamElem>> next;
    for (const auto& c : null) {
      std::vector<ParamElem> v(n, ParamElem(0));
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (c[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) v[j] = v[j] + c[i] * u[i][j];
      }
      next.push_back(std::move(v));
    }
    u = std::move(next);
  }
  throw PreconditionError("submodule refinement did not converge");
}

/// M/U for the maximal submodule U not meeting the λ-line.
inline TruncatedModule simple_quotient(const TruncatedModule& M) {
  auto u = maximal_submodule(M);
  std::size_t n = M.basis.size();
  if (u.empty()) return M;
  linalg::Matrix<ParamElem> rows = u;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<ParamElem> e(n, ParamElem(0));
    e[i] = ParamElem(1);
    rows.push_back(e);
    if (linalg::rank(rows) == u.size() + keep.size() + 1) {
      keep.push_back(i);
    } else {
      rows.pop_back();
    }
  }
  // Columns: U basis then kept unit vectors; solve for coordinates.
  linalg::Matrix<ParamElem> basis_cols(n, std::vector<ParamElem>(n, ParamElem(0)));
  for (std::size_t c = 0; c < u.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) basis_cols[i][c] = u[c][i];
  }
  for (std::size_t c = 0; c < keep.size(); ++c) basis_cols[keep[c]][u.size() + c] = ParamElem(1);
  TruncatedModule q = M;
  q.basis.clear();
  q.basis_point.clear();
  q.matrices.clear();
  for (auto i : keep) {
    q.basis.push_back(M.basis[i]);
    q.basis_point.push_back(M.basis_point[i]);
  }
  for (const auto& a : M.matrices) {
    linalg::Matrix<ParamElem> mat(keep.size(), std::vector<ParamElem>(keep.size(), ParamElem(0)));
    for (std::size_t j = 0; j < keep.size(); ++j) {
      std::vector<ParamElem> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = a[i][keep[j]];
      auto sol = linalg::solve(basis_cols, col);
      for (std::size_t i = 0; i < keep.size(); ++i) mat[i][j] = (*sol)[u.size() + i];
    }
    q.matrices.push_back(std::move(mat));
  }
  return q;
}

/// The one-dimensional assignment t ↦ λ, X ↦ μ respects Xt − tX = p(t) iff p(λ) = 0.
inline VerificationReport scalar_module_check(const RatFunc& p, const ParamElem& lambda, const ParamElem& mu) {
  VerificationReport r = make_report(
      "scalar_module_check", "a one-dimensional module t -> lambda, X -> mu exists exactly when p(lambda) = 0",
      Json{{"lambda", lambda.to_string()}, {"mu", mu.to_string()}});
  ParamElem v = p.evaluate({lambda});
  ParamElem lhs = mu * lambda - lambda * mu;
  if (lhs != v) {
    r.status = Status::counterexample;
    r.witness = Json{{"p(lambda)", v.to_string()}, {"commutator", lhs.to_string()}};
    return r;
  }
  r.witness = Json{{"p(lambda)", "0"},
                   {"family", "mu is unconstrained, so the modules V(lambda, mu) form an infinite family"}};
  return r;
}

/// Hypothesis (i): generators of filtration degree ≤ r produce M from a weight
/// vector at 𝔪. Hypothesis (ii): the degree-≤-r part of the Hopf algebra is
/// finite-dimensional, which holds for every fixed r here.
inline VerificationReport local_finiteness_check(const TruncatedModule& M, int r, const PointIdeal& m) {
  VerificationReport rep = make_report(
      "local_finiteness_check",
      "if the filtration-degree-r part generates the module from a weight vector and its stabilizer is finite, weight spaces are finite-dimensional",
      Json{{"r", r}, {"point", m.to_string()}, {"jet_order", M.jet_order}});
  auto weight = M.ordinary_weight_space(m);
  if (weight.empty()) {
    rep.status = Status::inconclusive;
    rep.witness = Json{{"hypothesis_i", false}, {"reason", "no weight vector at the point"}};
    return rep;
  }
  std::vector<std::size_t> low;
  for (std::size_t g = 0; g < M.presentation.generators.size(); ++g) {
    if (M.presentation.generators[g].value.filtration_degree() <= r) low.push_back(g);
  }
  std::size_t n = M.basis.size();
  linalg::Matrix<ParamElem> span = {weight.front()};
  std::vector<std::vector<ParamElem>> frontier = {weight.front()};
  while (!frontier.empty()) {
    std::vector<std::vector<ParamElem>> next;
    for (const auto& v : frontier) {
      for (auto g : low) {
        std::vector<ParamElem> w = linalg::apply(M.matrices[g], v);
        span.push_back(w);
        if (linalg::rank(span) == span.size()) {
          next.push_back(w);
        } else {
          span.pop_back();
        }
      }
    }
    frontier = std::move(next);
  }
  bool hyp_i = span.size() == n;
  const Setting& s = *M.presentation.setting;
  long connected = 1;  // dimension of the degree-≤-r span of infinitesimal monomials
  for (int k = 1; k <= s.ninf(); ++k) connected = connected * (r + k) / k;
  auto stab = stab_group(s, enumerate_grouplikes(s, M.orbit_window), m);
  int idx = M.orbit_index(m);
  int block = idx < 0 ? 0 : M.weight_dims()[idx];
  rep.witness = Json{{"hypothesis_i", hyp_i},
                     {"hypothesis_ii", true},
                     {"connected_dimension", connected},
                     {"stabilizer_size", stab.size()},
                     {"weight_dimension", block}};
  if (!hyp_i) rep.status = Status::inconclusive;
  return rep;
}

}  // namespace hgo
