#pragma once

// Reductors mod a point ideal and the grouplike stabilizer.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hgo/point.hpp"
#include "hgo/report.hpp"

namespace hgo {

/// R = Σ r_i ⊗ s_i in Λ ⊗ Λ.
struct Reductor {
  std::vector<std::pair<Poly, Poly>> pairs;

  /// Componentwise product (r ⊗ s)(r' ⊗ s') = rr' ⊗ ss'.
  friend Reductor operator*(const Reductor& a, const Reductor& b) {
    Reductor r;
    for (const auto& [x, y] : a.pairs) {
      for (const auto& [u, v] : b.pairs) r.pairs.emplace_back(x * u, y * v);
    }
    return r;
  }

  Json to_json() const {
    Json j = Json::array();
    for (const auto& [x, y] : pairs) j.push_back(Json::array({x.to_string(), y.to_string()}));
    return j;
  }
};

using GrouplikeSpan = std::vector<GroupPart>;

inline std::string grouplike_label(const Setting& s, const GroupPart& g) {
  if (g.is_identity()) return "1";
  std::string out;
  if (g.w != 0) out = s.group_label(g.w);
  for (int i = 0; i < s.nvars(); ++i) {
    if (g.mu[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += s.shift_names().empty() ? "tau" + std::to_string(i + 1) : s.shift_names()[i];
    if (g.mu[i] != 1) out += "^" + std::to_string(g.mu[i]);
  }
  return out;
}

/// (R2) Σ r_i (x▷s_i) = 0 for x in C and (R1) Σ r_i(λ) s_i(λ) ≠ 0.
inline VerificationReport verify_reductor(const Setting& s, const Reductor& R, const GrouplikeSpan& C,
                                          const PointIdeal& m) {
  VerificationReport r = make_report(
      "verify_reductor", "R kills every grouplike of the span and is invertible modulo the point ideal",
      Json{{"point", m.to_string()}, {"span", C.size()}});
  if (R.pairs.empty()) throw InvalidArgument("reductor must be nonempty");
  const Field& f = s.field();
  for (const auto& x : C) {
    RatFunc total = f.zero();
    for (const auto& [a, b] : R.pairs) total = total + RatFunc(a) * s.act(x, RatFunc(b));
    if (!total.is_zero()) {
      r.status = Status::counterexample;
      r.witness = Json{{"condition", "R2"}, {"grouplike", grouplike_label(s, x)}, {"value", total.to_string()}};
      return r;
    }
  }
  ParamElem eps(0);
  for (const auto& [a, b] : R.pairs) eps = eps + m.evaluate(RatFunc(a)) * m.evaluate(RatFunc(b));
  if (eps.is_zero()) {
    r.status = Status::counterexample;
    r.witness = Json{{"condition", "R1"}, {"value", "0"}};
    return r;
  }
  r.witness = Json{{"R1", eps.to_string()}, {"pairs", R.to_json()}};
  return r;
}

/// Product of R_g = 1 ⊗ a − (g▷a) ⊗ 1 over C, with a separating λ from φ_g(λ);
/// none if some g in C fixes the point.
inline std::optional<Reductor> find_reductor(const Setting& s, const GrouplikeSpan& C, const PointIdeal& m) {
  const Field& f = s.field();
  Reductor total;
  total.pairs.emplace_back(f.one().numerator(), f.one().numerator());
  for (const auto& g : C) {
    PointIdeal moved = m.image(s, g);
    if (moved == m) return std::nullopt;
    int sep = -1;
    for (int i = 0; i < m.size() && sep < 0; ++i) {
      if (moved.coords()[i] != m.coords()[i]) sep = i;
    }
    RatFunc a = f.var(sep);
    RatFunc ga = s.act(g, a);
    if (!is_in_lattice(ga)) throw PreconditionError("grouplike does not preserve the lattice");
    Reductor rg;
    rg.pairs.emplace_back(f.one().numerator(), a.numerator());
    rg.pairs.emplace_back(-ga.numerator(), f.one().numerator());
    total = total * rg;
  }
  return total;
}

/// Grouplikes in W × (shift window) fixing the point. The window is [0, k] per
/// coordinate for N^n and [−k, k] for Z^n.
inline GrouplikeSpan enumerate_grouplikes(const Setting& s, int window) {
  GrouplikeSpan out;
  int n = s.shift_dim();
  int lo = s.shift_invertible() ? -window : 0;
  for (int w = 0; w < s.group().order(); ++w) {
    GroupPart g{w, {}};
    if (n == 0) {
      out.push_back(g);
      continue;
    }
    std::vector<int> mu(n, lo);
    while (true) {
      for (int i = 0; i < n; ++i) g.mu[i] = static_cast<int16_t>(mu[i]);
      out.push_back(g);
      int i = 0;
      while (i < n && mu[i] == window) mu[i++] = lo;
      if (i == n) break;
      ++mu[i];
    }
  }
  return out;
}

inline GrouplikeSpan stab_group(const Setting& s, const GrouplikeSpan& elements, const PointIdeal& m) {
  GrouplikeSpan out;
  for (const auto& g : elements) {
    if (m.image(s, g) == m) out.push_back(g);
  }
  return out;
}

struct FinitenessResult {
  bool finite = false;
  std::string explanation;
};

/// True iff the connected part is trivial; the grouplike stabilizer is then
/// finite and its size on the window is reported.
inline FinitenessResult finiteness_predicate(const Setting& s, const PointIdeal& m, int window = 5) {
  std::vector<std::string> prim, skew;
  for (const auto& g : s.infinitesimals()) (g.kind == GenKind::primitive ? prim : skew).push_back(g.name);
  auto join = [](const std::vector<std::string>& v) {
    std::string o;
    for (const auto& x : v) o += (o.empty() ? "" : ", ") + x;
    return o;
  };
  auto stab = stab_group(s, enumerate_grouplikes(s, window), m);
  std::string stab_note = "grouplike stabilizer of " + m.to_string() + " has " + std::to_string(stab.size()) +
                          " element(s) on shift window " + std::to_string(window);
  if (prim.empty() && skew.empty()) return {true, "connected part trivial; " + stab_note};
  std::string why;
  if (!prim.empty()) why = "connected part S(V) generated by primitives " + join(prim) + " is infinite-dimensional";
  if (!skew.empty()) {
    if (!why.empty()) why += "; ";
    why += "connected part k[" + join(skew) + "] of skew-primitives is infinite-dimensional";
  }
  return {false, why + "; " + stab_note};
}

}  // namespace hgo
