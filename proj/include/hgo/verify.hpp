#pragma once

// Bounded certificates for the order axioms and the structural lemmas built on them.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hgo/catalog.hpp"
#include "hgo/point.hpp"
#include "hgo/report.hpp"

namespace hgo {

/// A candidate order F, given by generators inside L#H.
struct OrderPresentation {
  SettingPtr setting;
  std::vector<NamedElement> generators;

  OrderPresentation() = default;
  OrderPresentation(SettingPtr s, std::vector<NamedElement> gens) : setting(std::move(s)), generators(std::move(gens)) {
    for (const auto& g : generators) {
      if (g.value.setting() != setting) throw RegistryMismatch("generator " + g.name + " belongs to another setting");
    }
  }
  explicit OrderPresentation(const CatalogEntry& e) : OrderPresentation(e.setting, e.presentation) {}
};

inline Monomial monomial_from(const RatFunc& f) {
  if (!f.is_polynomial() || f.numerator().terms().size() != 1) throw InvalidArgument("not a monomial");
  return f.numerator().terms().front().first;
}

inline RatFunc monomial_function(const Field& f, const Monomial& m) {
  RatFunc r = f.one();
  for (int i = 0; i < f.nvars(); ++i) {
    if (m.e[i] != 0) r = r * f.var(i, m.e[i]);
  }
  return r;
}

inline std::string monomial_string(const Field& f, const Monomial& m) {
  return m.is_one() ? "1" : m.to_string(f.vars().get());
}

/// Applies every generator, and every product of two generators, to each
/// monomial of the degree-d window and checks the images stay in Λ.
inline VerificationReport preserves_lattice(const OrderPresentation& F, int d, bool products = true) {
  if (d < 1) throw InvalidArgument("degree bound must be at least 1");
  const Field& f = F.setting->field();
  auto window = f.monomial_window(d);
  VerificationReport r = make_report("preserves_lattice",
                                     "each generator of the order, and each product of two, sends the lattice into itself",
                                     Json{{"degree", d}, {"word_length", products ? 2 : 1}, {"monomials", window.size()}});
  std::vector<std::vector<RatFunc>> images;
  for (const auto& m : window) {
    RatFunc a = monomial_function(f, m);
    images.emplace_back();
    for (const auto& g : F.generators) {
      RatFunc img = g.value.apply(a);
      if (!is_in_lattice(img)) {
        r.status = Status::counterexample;
        r.witness = Json{{"generator", g.name}, {"input", monomial_string(f, m)}, {"image", img.to_string()}};
        return r;
      }
      images.back().push_back(std::move(img));
    }
  }
  if (products) {
    for (std::size_t i = 0; i < window.size(); ++i) {
      for (std::size_t y = 0; y < F.generators.size(); ++y) {
        for (const auto& x : F.generators) {
          RatFunc img = x.value.apply(images[i][y]);
          if (!is_in_lattice(img)) {
            r.status = Status::counterexample;
            r.witness = Json{{"generator", x.name + "*" + F.generators[y].name},
                             {"input", monomial_string(f, window[i])},
                             {"image", img.to_string()}};
            return r;
          }
        }
      }
    }
  }
  r.witness = Json{{"generators", F.generators.size()}};
  return r;
}

/// X = X̂(1) + X₋ with X̂₋(1) = 0.
inline std::pair<RatFunc, SmashElement> split_decompose(const SmashElement& x) {
  RatFunc head = x.apply(x.setting()->field().one());
  return {head, x - SmashElement::function(x.setting(), head)};
}

inline VerificationReport center_membership(const RatFunc& a, const OrderPresentation& F) {
  VerificationReport r = make_report("center_membership",
                                     "a central element of the order lies in the lattice and commutes with the generators");
  if (!is_in_lattice(a)) {
    r.status = Status::counterexample;
    r.witness = Json{{"element", a.to_string()}, {"reason", "not in the lattice"}};
    return r;
  }
  SmashElement as = SmashElement::function(F.setting, a);
  for (const auto& g : F.generators) {
    SmashElement c = commutator(g.value, as);
    if (!c.is_zero()) {
      r.status = Status::counterexample;
      r.witness = Json{{"element", a.to_string()}, {"generator", g.name}, {"commutator", c.to_string()}};
      return r;
    }
  }
  r.witness = Json{{"element", a.to_string()}};
  return r;
}

/// Finds a monomial a with [X, a]^(1) ≠ 0, showing X does not centralize Λ.
inline VerificationReport max_commutative_probe(const SmashElement& x, int d) {
  if (split_decompose(x).second.is_zero()) throw PreconditionError("element lies in the lattice");
  const Field& f = x.setting()->field();
  VerificationReport r = make_report("max_commutative_probe",
                                     "an element outside the lattice fails to commute with some lattice element",
                                     Json{{"degree", d}});
  for (const auto& m : f.monomial_window(d)) {
    if (m.is_one()) continue;
    RatFunc a = monomial_function(f, m);
    RatFunc v = commutator(x, SmashElement::function(x.setting(), a)).apply(f.one());
    if (!v.is_zero()) {
      r.witness = Json{{"a", monomial_string(f, m)}, {"value", v.to_string()}};
      return r;
    }
  }
  r.status = Status::inconclusive;
  return r;
}

struct FoCertificate {
  std::vector<Monomial> monomials;
  linalg::Matrix<RatFunc> matrix;  // matrix[i][j] = X̂_i(a_j)
  RatFunc determinant;
};

/// Greedy scan for a_1..a_n with det(X̂_i(a_j)) ≠ 0, in window order.
inline std::optional<FoCertificate> find_fo_certificate(const std::vector<SmashElement>& xs, int d) {
  if (xs.empty()) throw InvalidArgument("fo_certificate needs at least one element");
  const Field& f = xs.front().setting()->field();
  std::size_t n = xs.size();
  FoCertificate cert;
  linalg::Matrix<RatFunc> cols;  // chosen columns stored as rows
  std::size_t rank = 0;
  for (const auto& m : f.monomial_window(d)) {
    RatFunc a = monomial_function(f, m);
    std::vector<RatFunc> col;
    bool nonzero = false;
    for (const auto& x : xs) {
      col.push_back(x.apply(a));
      nonzero = nonzero || !col.back().is_zero();
    }
    if (!nonzero) continue;
    cols.push_back(col);
    std::size_t rk = linalg::rank(cols);
    if (rk == rank) {
      cols.pop_back();
      continue;
    }
    rank = rk;
    cert.monomials.push_back(m);
    if (rank == n) break;
  }
  if (rank < n) return std::nullopt;
  cert.matrix = linalg::transpose(cols);
  cert.determinant = linalg::determinant(cert.matrix);
  return cert;
}

inline VerificationReport fo_certificate(const std::vector<SmashElement>& xs, int d) {
  VerificationReport r = make_report("fo_certificate",
                                     "lattice elements a_j with det(X_i(a_j)) nonzero certify the finiteness property",
                                     Json{{"degree", d}, {"elements", xs.size()}});
  auto cert = find_fo_certificate(xs, d);
  if (!cert) {
    r.status = Status::inconclusive;
    return r;
  }
  const Field& f = xs.front().setting()->field();
  Json ms = Json::array();
  for (const auto& m : cert->monomials) ms.push_back(monomial_string(f, m));
  r.witness = Json{{"a", ms}, {"determinant", cert->determinant.to_string()}};
  return r;
}

/// ψ_𝔪: X ↦ X̂(1) mod 𝔪 sends 1 to 1, so 𝔪F is a proper left ideal.
inline VerificationReport weight_fiber_witness(const OrderPresentation& F, const PointIdeal& m) {
  VerificationReport r = make_report("weight_fiber_witness",
                                     "X -> X(1) mod m maps the order onto the residue field, so F/mF is nonzero",
                                     Json{{"point", m.to_string()}});
  const Field& f = F.setting->field();
  Json values = Json::object();
  for (const auto& g : F.generators) {
    RatFunc v = g.value.apply(f.one());
    values[g.name] = is_in_lattice(v) ? m.evaluate(v).to_string() : std::string("pole");
  }
  r.witness = Json{{"psi(1)", m.evaluate(f.one()).to_string()}, {"generators", values}};
  return r;
}

namespace detail {

inline std::vector<SmashKey> collect_keys(const std::vector<SmashElement>& xs) {
  std::vector<SmashKey> keys;
  for (const auto& x : xs) {
    for (const auto& [k, c] : x.terms()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
  }
  return keys;
}

inline RatFunc coefficient_of(const SmashElement& x, const SmashKey& k) {
  auto it = x.terms().find(k);
  return it == x.terms().end() ? x.setting()->field().zero() : it->second;
}

}  // namespace detail

/// Writes h = Σ ℓ_i Y_i with ℓ_i ∈ L and Y_i in `span`, if possible.
inline std::optional<std::vector<RatFunc>> left_span_solve(const std::vector<SmashElement>& span, const SmashElement& h) {
  std::vector<SmashElement> all = span;
  all.push_back(h);
  auto keys = detail::collect_keys(all);
  linalg::Matrix<RatFunc> a(keys.size(), std::vector<RatFunc>(span.size()));
  std::vector<RatFunc> b;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    for (std::size_t i = 0; i < span.size(); ++i) a[k][i] = detail::coefficient_of(span[i], keys[k]);
    b.push_back(detail::coefficient_of(h, keys[k]));
  }
  return linalg::solve(a, b);
}

/// Sufficient witness for LF = L#H: every generator of H is an L-combination
/// of 1, the presentation, and W when W's generators are in the presentation.
inline VerificationReport lf_witness(const OrderPresentation& F, int word_length = 1) {
  const Setting& s = *F.setting;
  VerificationReport r = make_report("lf_witness",
                                     "each generator of the Hopf part is an L-multiple combination of elements of F",
                                     Json{{"word_length", word_length}});
  std::vector<SmashElement> span = {SmashElement::one(F.setting)};
  for (const auto& g : F.generators) span.push_back(g.value);
  bool has_w = true;
  for (const auto& [name, idx] : s.group_names()) {
    bool found = false;
    for (const auto& g : F.generators) found = found || g.value == SmashElement::group(F.setting, GroupPart{idx, {}});
    has_w = has_w && found;
  }
  if (has_w && !s.group_names().empty()) {
    for (int w = 1; w < s.group().order(); ++w) span.push_back(SmashElement::group(F.setting, GroupPart{w, {}}));
  }
  if (word_length >= 2) {
    std::size_t base = span.size();
    for (std::size_t i = 1; i < base; ++i) {
      for (std::size_t j = 1; j < base; ++j) span.push_back(span[i] * span[j]);
    }
  }
  std::vector<NamedElement> targets;
  for (const auto& [name, idx] : s.group_names()) targets.push_back({name, SmashElement::group(F.setting, GroupPart{idx, {}})});
  for (int i = 0; i < s.shift_dim(); ++i) {
    GroupPart g;
    g.mu[i] = 1;
    targets.push_back({s.shift_names()[i], SmashElement::group(F.setting, g)});
  }
  for (int j = 0; j < s.ninf(); ++j) targets.push_back({s.infinitesimals()[j].name, SmashElement::infinitesimal(F.setting, j)});
  Json reached = Json::array();
  for (const auto& t : targets) {
    if (!left_span_solve(span, t.value)) {
      r.status = Status::inconclusive;
      r.witness = Json{{"unreached", t.name}, {"reached", reached}};
      return r;
    }
    reached.push_back(t.name);
  }
  r.witness = Json{{"reached", reached}};
  return r;
}

/// 1 together with the presentation members outside Λ; these are independent
/// over L for every catalog presentation.
inline std::vector<SmashElement> fo_generator_set(const OrderPresentation& F) {
  std::vector<SmashElement> out = {SmashElement::one(F.setting)};
  for (const auto& g : F.generators) {
    if (!g.value.is_function()) out.push_back(g.value);
  }
  return out;
}

}  // namespace hgo
