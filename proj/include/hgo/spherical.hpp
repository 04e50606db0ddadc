#pragma once

// Symmetrizing idempotent, the centralizer eFe and Morita witnesses.

#include <string>
#include <utility>
#include <vector>

#include "hgo/verify.hpp"

namespace hgo {

inline SmashElement idempotent(const SettingPtr& s) {
  const Group& g = s->group();
  SmashElement e(s);
  for (int w = 0; w < g.order(); ++w) e = e + SmashElement::group(s, GroupPart{w, {}});
  return e.left_scale(s->field().constant(1) / s->field().constant(g.order()));
}

/// (1/|W|) Σ_w w X w⁻¹.
inline SmashElement symmetrize(const SmashElement& x) {
  const SettingPtr& s = x.setting();
  SmashElement r(s);
  for (int w = 0; w < s->group().order(); ++w) r = r + x.conjugate_by_group(GroupPart{w, {}});
  return r.left_scale(s->field().one() / s->field().constant(s->group().order()));
}

inline bool is_invariant(const SmashElement& x) {
  for (int w : x.setting()->group().generator_indices()) {
    if (x.conjugate_by_group(GroupPart{w, {}}) != x) return false;
  }
  return true;
}

/// ψ(X) = eXe on W-invariant elements.
inline SmashElement psi(const SmashElement& x) {
  if (!is_invariant(x)) throw PreconditionError("psi is defined on W-invariant elements only");
  SmashElement e = idempotent(x.setting());
  return e * x * e;
}

inline RatFunc reynolds(const Setting& s, const RatFunc& f) {
  RatFunc r = s.field().zero();
  for (int w = 0; w < s.group().order(); ++w) r = r + s.act(GroupPart{w, {}}, f);
  return r / s.field().constant(s.group().order());
}

inline bool is_fixed(const Setting& s, const RatFunc& f) {
  for (int w : s.group().generator_indices()) {
    if (s.act(GroupPart{w, {}}, f) != f) return false;
  }
  return true;
}

/// Reynolds images of the monomials of the degree-d window, without repeats or zeros.
inline std::vector<RatFunc> invariant_basis(const Setting& s, int d) {
  std::vector<RatFunc> out;
  const Field& f = s.field();
  for (const auto& m : f.monomial_window(d)) {
    RatFunc r = reynolds(s, monomial_function(f, m));
    if (r.is_zero()) continue;
    bool seen = false;
    for (const auto& o : out) seen = seen || o == r;
    if (!seen) out.push_back(std::move(r));
  }
  return out;
}

inline VerificationReport spherical_axiom_check(const std::vector<NamedElement>& gens, const SettingPtr& s, int d) {
  auto basis = invariant_basis(*s, d);
  VerificationReport r = make_report("spherical_axiom_check",
                                     "each generator sends W-invariant lattice elements to W-invariant lattice elements",
                                     Json{{"degree", d}, {"invariants", basis.size()}});
  for (const auto& g : gens) {
    for (const auto& b : basis) {
      RatFunc img = g.value.apply(b);
      std::string reason;
      if (!is_in_lattice(img)) {
        reason = "image not in the lattice";
      } else if (!is_fixed(*s, img)) {
        reason = "image not W-fixed";
      }
      if (!reason.empty()) {
        r.status = Status::counterexample;
        r.witness = Json{{"generator", g.name}, {"input", b.to_string()}, {"image", img.to_string()}, {"reason", reason}};
        return r;
      }
    }
  }
  r.witness = Json{{"generators", gens.size()}};
  return r;
}

/// Words of length ≤ d in the generators, without repeats.
inline std::vector<NamedElement> words(const OrderPresentation& F, int d) {
  std::vector<NamedElement> out = {{"1", SmashElement::one(F.setting)}};
  std::vector<NamedElement> frontier = out;
  for (int len = 1; len <= d; ++len) {
    std::vector<NamedElement> next;
    for (const auto& w : frontier) {
      for (const auto& g : F.generators) {
        SmashElement v = w.value * g.value;
        bool seen = v.is_zero();
        for (const auto& o : out) seen = seen || o.value == v;
        if (seen) continue;
        NamedElement nw{w.name == "1" ? g.name : w.name + "*" + g.name, v};
        out.push_back(nw);
        next.push_back(nw);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// e·w·e = ψ(σ(w)) for every word w of length ≤ d, so the corner eFe is the ψ-image
/// of the symmetrized order on that slice.
inline VerificationReport corner_check(const OrderPresentation& F, int d) {
  VerificationReport r =
      make_report("corner_check", "the corner eFe equals psi applied to symmetrized elements of F", Json{{"word_length", d}});
  SmashElement e = idempotent(F.setting);
  auto ws = words(F, d);
  for (const auto& w : ws) {
    SmashElement corner = e * w.value * e;
    SmashElement image = psi(symmetrize(w.value));
    if (corner != image) {
      r.status = Status::counterexample;
      r.witness = Json{{"word", w.name}, {"corner", corner.to_string()}, {"psi", image.to_string()}};
      return r;
    }
  }
  r.witness = Json{{"words", ws.size()}};
  return r;
}

/// Solves Σ c_ij A_i e B_j = 1 over the coefficient tower with A_i, B_j words
/// of length ≤ d.
inline VerificationReport morita_witness(const OrderPresentation& F, int d) {
  const SettingPtr& s = F.setting;
  const Field& f = s->field();
  VerificationReport r = make_report("morita_witness",
                                     "1 lies in FeF, so F and eFe are Morita equivalent", Json{{"word_length", d}});
  SmashElement e = idempotent(s);
  auto ws = words(F, d);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<SmashElement> prods;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    SmashElement ae = ws[i].value * e;
    for (std::size_t j = 0; j < ws.size(); ++j) {
      pairs.emplace_back(i, j);
      prods.push_back(ae * ws[j].value);
    }
  }
  SmashElement target = SmashElement::one(s);
  std::vector<SmashElement> all = prods;
  all.push_back(target);
  auto keys = detail::collect_keys(all);
  linalg::Matrix<ParamElem> a;
  std::vector<ParamElem> b;
  for (const auto& k : keys) {
    // Common denominator of the coefficients at this key, then match monomials.
    std::vector<Poly> dens;
    for (const auto& x : all) {
      RatFunc c = detail::coefficient_of(x, k);
      if (c.is_polynomial()) continue;
      Poly dn = c.denominator();
      bool seen = false;
      for (const auto& o : dens) seen = seen || o == dn;
      if (!seen) dens.push_back(dn);
    }
    RatFunc common = f.one();
    for (const auto& dn : dens) common = common * RatFunc(dn);
    std::map<Monomial, std::vector<ParamElem>> rows;
    for (std::size_t col = 0; col < all.size(); ++col) {
      RatFunc c = detail::coefficient_of(all[col], k) * common;
      for (const auto& [m, v] : c.numerator().terms()) {
        auto& row = rows[m];
        row.resize(all.size(), ParamElem(0));
        row[col] = v;
      }
    }
    for (auto& [m, row] : rows) {
      row.resize(all.size(), ParamElem(0));
      b.push_back(row.back());
      row.pop_back();
      a.push_back(std::move(row));
    }
  }
  auto sol = linalg::solve(a, b);
  if (!sol) {
    r.status = Status::inconclusive;
    return r;
  }
  Json terms = Json::array();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if ((*sol)[p].is_zero()) continue;
    terms.push_back(Json{{"coefficient", (*sol)[p].to_string()},
                         {"left", ws[pairs[p].first].name},
                         {"right", ws[pairs[p].second].name}});
  }
  r.witness = Json{{"terms", terms}};
  return r;
}

}  // namespace hgo
