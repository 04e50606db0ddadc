#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "hgo/catalog.hpp"

namespace hgo::test {

/// splitmix64: small, seedable and identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

inline ParamElem random_scalar(const Field& f, Rng& rng) {
  ParamElem c(rng.range(-3, 3));
  if (c.is_zero()) c = ParamElem(1);
  for (int i = 0; i < f.params()->size(); ++i) {
    long k = rng.range(-1, 1);
    if (k != 0) c = c * f.param(f.params()->name(i), static_cast<int>(k));
  }
  if (f.alg() && rng.coin()) c = c + f.zeta();
  return c;
}

inline RatFunc random_polynomial(const Field& f, Rng& rng, int degree, int terms = 3) {
  auto window = f.monomial_window(degree);
  RatFunc r = f.zero();
  for (int i = 0; i < terms; ++i) {
    const Monomial& m = window[rng.range(0, static_cast<long>(window.size()) - 1)];
    RatFunc mono = f.lift(random_scalar(f, rng));
    for (int j = 0; j < f.nvars(); ++j) {
      if (m.e[j] != 0) mono = mono * f.var(j, m.e[j]);
    }
    r = r + mono;
  }
  return r;
}

inline RatFunc random_function(const CatalogEntry& e, Rng& rng, int degree) {
  return random_polynomial(e.setting->field(), rng, degree);
}

/// Sums of f·g·∂^α with random Laurent-polynomial f, random group part and
/// |α| ≤ order; a denominator appears occasionally.
inline SmashElement random_element(const CatalogEntry& e, Rng& rng, int order, bool allow_denominator = true) {
  const Setting& s = *e.setting;
  const Field& f = s.field();
  SmashElement x(e.setting);
  int terms = static_cast<int>(rng.range(1, 3));
  for (int t = 0; t < terms; ++t) {
    RatFunc c = random_polynomial(f, rng, 2, 2);
    if (allow_denominator && rng.range(0, 3) == 0) {
      RatFunc d = random_polynomial(f, rng, 1, 2);
      if (!d.is_zero()) c = c / d;
    }
    GroupPart g;
    g.w = static_cast<int>(rng.range(0, s.group().order() - 1));
    for (int i = 0; i < s.shift_dim(); ++i) {
      g.mu[i] = static_cast<int16_t>(rng.range(s.shift_invertible() ? -1 : 0, 1));
    }
    Monomial alpha;
    int budget = static_cast<int>(rng.range(0, order));
    for (int k = 0; k < budget && s.ninf() > 0; ++k) alpha.e[rng.range(0, s.ninf() - 1)] += 1;
    x.add_term(SmashKey{g, alpha}, c);
  }
  return x;
}

inline Recipe recipe(const std::string& kind, int n = 1, const std::string& group = "trivial") {
  Recipe r;
  r.kind = kind;
  r.n = n;
  r.group.name = group;
  return r;
}

/// One instance of every recipe family, with the variants the checks sweep over.
inline std::vector<CatalogEntry> standard_catalog() {
  std::vector<Recipe> rs = {recipe("rational-differential", 1, "Z2"), recipe("rational-differential", 2, "S2"),
                            recipe("trigonometric-differential", 1, "Z2"), recipe("trigonometric-differential", 2, "S2"),
                            recipe("quantum-borel"), recipe("ore-family"), recipe("ore-family"),
                            recipe("shift-flag", 2, "S2"), recipe("shift-flag", 1), recipe("gkv-hecke"),
                            recipe("gkv-hecke"), recipe("gkv-hecke"), recipe("gkv-hecke"), recipe("cherednik", 1, "Z2"),
                            recipe("cherednik", 2, "S2"), recipe("cherednik", 3, "S3"), recipe("cherednik", 1, "Z3"),
                            recipe("cherednik", 2, "B2")};
  rs[6].p = "t^2";
  rs[8].monoid = "N";
  rs[10].variant = "additive";
  rs[11].cartan = "A2";
  rs[12].cartan = "A2";
  rs[12].variant = "additive";
  std::vector<CatalogEntry> out;
  for (const auto& r : rs) out.push_back(build_setting(r));
  return out;
}

inline std::string label(const CatalogEntry& e) {
  const Recipe& r = e.recipe;
  std::string s = r.kind + "/" + std::to_string(r.n) + "/" + r.group.name;
  if (r.kind == "gkv-hecke") s += "/" + r.cartan + "/" + r.variant;
  if (r.kind == "ore-family") s += "/p=" + r.p;
  if (r.kind == "shift-flag") s += "/" + r.monoid;
  return s;
}

}  // namespace hgo::test

namespace hgo {

inline void PrintTo(const SmashElement& x, std::ostream* os) { *os << x.to_string(); }

template <class C>
void PrintTo(const Fraction<C>& x, std::ostream* os) {
  *os << x.to_string();
}

}  // namespace hgo
