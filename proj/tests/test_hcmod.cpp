#include <gtest/gtest.h>

#include <map>

#include "hgo/hcmod.hpp"
#include "hgo/spherical.hpp"
#include "support.hpp"

using namespace hgo;
using test::recipe;

namespace {

CatalogEntry ore(const std::string& p) {
  Recipe r = recipe("ore-family");
  r.p = p;
  return build_setting(r);
}

Monomial power(int k) {
  Monomial m;
  m.e[0] = static_cast<int16_t>(k);
  return m;
}

long factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

/// δ⁽ᵏ⁾(f) = f⁽ᵏ⁾(0) on f = t^j, computed by differentiating directly.
ParamElem delta_on_power(int k, int j) { return k == j ? ParamElem(factorial(k)) : ParamElem(0); }

using Vec = std::vector<ParamElem>;

std::size_t span_rank(linalg::Matrix<ParamElem> rows) { return rows.empty() ? 0 : linalg::rank(rows); }

/// Dimension of the smallest subspace containing v and stable under every matrix.
std::size_t cyclic_dim(const std::vector<linalg::Matrix<ParamElem>>& mats, const Vec& v) {
  linalg::Matrix<ParamElem> span = {v};
  std::vector<Vec> frontier = {v};
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& u : frontier) {
      for (const auto& a : mats) {
        Vec w = linalg::apply(a, u);
        span.push_back(w);
        if (span_rank(span) == span.size()) {
          next.push_back(w);
        } else {
          span.pop_back();
        }
      }
    }
    frontier = std::move(next);
  }
  return span.size();
}

bool coordinate_subspace_stable(const std::vector<linalg::Matrix<ParamElem>>& mats, const std::vector<std::size_t>& idx,
                                std::size_t n) {
  for (const auto& a : mats) {
    for (auto j : idx) {
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i][j].is_zero()) continue;
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) return false;
      }
    }
  }
  return true;
}

/// Searches coordinate subspaces and cyclic submodules of {-1,0,1}-vectors
/// for a proper nonzero stable subspace.
bool has_proper_submodule(const std::vector<linalg::Matrix<ParamElem>>& mats, std::size_t n) {
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) idx.push_back(i);
    }
    if (coordinate_subspace_stable(mats, idx, n)) return true;
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    Vec v(n, ParamElem(0));
    std::size_t c = code;
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i, c /= 3) {
      v[i] = ParamElem(static_cast<long>(c % 3) - 1);
      zero = zero && v[i].is_zero();
    }
    if (zero) continue;
    if (cyclic_dim(mats, v) < n) return true;
  }
  return false;
}

}  // namespace

TEST(Distribution, TaylorFunctionals) {
  auto e = ore("1");
  const Field& f = e.setting->field();
  auto p = PointIdeal::parse(f, {"2"});
  DistributionVector d;
  d.add(p, power(1), ParamElem(1));
  EXPECT_EQ(d.evaluate(f.parse("t^3")), ParamElem(12));
  d.add(p, power(2), ParamElem(1));
  EXPECT_EQ(d.evaluate(f.parse("t^3")), ParamElem(18));
  EXPECT_EQ(d.order(), 2);
}

TEST(Distribution, WeylActionRules) {
  auto e = ore("1");
  const Field& f = e.setting->field();
  auto origin = PointIdeal::origin(f);
  for (int k = 0; k <= 4; ++k) {
    DistributionVector dk;
    dk.add(origin, power(k), ParamElem(factorial(k)));
    auto td = distribution_action(e.parse("t"), dk, 8);
    auto xd = distribution_action(e.parse("X"), dk, 8);
    DistributionVector down, up;
    if (k > 0) down.add(origin, power(k - 1), ParamElem(k * factorial(k - 1)));
    up.add(origin, power(k + 1), ParamElem(factorial(k + 1)));
    EXPECT_EQ(td.value, down) << k;
    EXPECT_EQ(xd.value, up) << k;
    EXPECT_FALSE(td.leaked || xd.leaked);
  }
  DistributionVector d3;
  d3.add(origin, power(3), ParamElem(6));
  EXPECT_TRUE(distribution_action(e.parse("X"), d3, 3).leaked);
}

TEST(Distribution, EvaluationIsAWeightVector) {
  test::Rng rng(17);
  for (const auto& e : test::standard_catalog()) {
    const Field& f = e.setting->field();
    std::vector<std::string> coords;
    for (int i = 0; i < f.nvars(); ++i) coords.push_back(std::to_string(rng.range(1, 5)));
    auto lambda = PointIdeal::parse(f, coords);
    auto ev = DistributionVector::evaluation(lambda);
    for (int i = 0; i < 3; ++i) {
      RatFunc a = test::random_polynomial(f, rng, 2, 3);
      auto r = distribution_action(SmashElement::function(e.setting, a), ev, 2);
      EXPECT_EQ(r.value, ev.scaled(lambda.evaluate(a))) << test::label(e);
    }
  }
}

TEST(Distribution, SwapTransportsPoints) {
  auto e = build_setting(recipe("rational-differential", 2, "S2"));
  const Field& f = e.setting->field();
  auto p = PointIdeal::parse(f, {"1", "2"});
  auto q = PointIdeal::parse(f, {"2", "1"});
  auto r = distribution_action(e.parse("s"), DistributionVector::evaluation(p), 2);
  EXPECT_EQ(r.value, DistributionVector::evaluation(q));
  Monomial ax, ay;
  ax.e[0] = 1;
  ay.e[1] = 1;
  DistributionVector dx;
  dx.add(p, ax, ParamElem(1));
  DistributionVector dy;
  dy.add(q, ay, ParamElem(1));
  EXPECT_EQ(distribution_action(e.parse("s"), dx, 2).value, dy);
}

TEST(Distribution, ModuleAxiom) {
  test::Rng rng(23);
  for (const auto& e : {build_setting(recipe("rational-differential", 2, "S2")), ore("t^2"),
                        build_setting(recipe("quantum-borel"))}) {
    const Field& f = e.setting->field();
    const auto& gens = e.presentation;
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<std::string> coords;
      for (int i = 0; i < f.nvars(); ++i) coords.push_back(std::to_string(rng.range(1, 4)));
      auto p = PointIdeal::parse(f, coords);
      DistributionVector xi = DistributionVector::evaluation(p);
      xi.add(p, power(1), ParamElem(rng.range(-3, 3)));
      const auto& x = gens[rng.range(0, static_cast<int>(gens.size()) - 1)];
      const auto& y = gens[rng.range(0, static_cast<int>(gens.size()) - 1)];
      auto lhs = distribution_action(y.value * x.value, xi, 10);
      auto rhs = distribution_action(x.value, distribution_action(y.value, xi, 10).value, 10);
      EXPECT_EQ(lhs.value, rhs.value) << test::label(e) << " " << x.name << " " << y.name;
    }
  }
}

TEST(Module, WeylCanonicalModule) {
  auto e = ore("1");
  const Field& f = e.setting->field();
  OrderPresentation F(e);
  auto origin = PointIdeal::origin(f);
  auto m = cyclic_module(F, origin, 3, 3);
  ASSERT_EQ(m.dim(), 4);
  EXPECT_EQ(m.weight_dims(), std::vector<int>{4});
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j <= 5; ++j) {
      EXPECT_EQ(m.basis[k].evaluate(f.var(0, j)), delta_on_power(k, j)) << k << " " << j;
    }
  }
  // Generator images checked functionally: (X·b_k)(a) = b_k(X̂ a).
  for (std::size_t g = 0; g < F.generators.size(); ++g) {
    for (int k = 0; k < 4; ++k) {
      for (int j = 0; j <= 3; ++j) {
        RatFunc a = f.var(0, j);
        ParamElem direct = m.basis[k].evaluate(F.generators[g].value.apply(a));
        ParamElem via(0);
        for (int i = 0; i < 4; ++i) via = via + m.matrices[g][i][k] * m.basis[i].evaluate(a);
        EXPECT_EQ(direct, via) << F.generators[g].name << " " << k << " " << j;
      }
    }
  }
  EXPECT_EQ(m.matrices[0][0][1], ParamElem(1));
  EXPECT_EQ(m.matrices[0][2][3], ParamElem(3));
  EXPECT_EQ(m.matrices[1][3][2], ParamElem(1));
  EXPECT_TRUE(m.leakage[1]);
  EXPECT_EQ(m.ordinary_weight_space(origin).size(), 1u);
  auto q = simple_quotient(m);
  EXPECT_EQ(q.dim(), 4);
  EXPECT_FALSE(has_proper_submodule(q.matrices, 4));
}

TEST(Module, OreSquareIsOneDimensional) {
  auto e = ore("t^2");
  auto origin = PointIdeal::origin(e.setting->field());
  auto m = cyclic_module(OrderPresentation(e), origin, 3, 3);
  EXPECT_EQ(m.dim(), 1);
  EXPECT_EQ(simple_quotient(m).dim(), 1);
  EXPECT_FALSE(m.leaked());
}

TEST(Module, OreAwayFromRootsLooksLikeWeyl) {
  auto e = ore("t^2");
  auto one = PointIdeal::parse(e.setting->field(), {"1"});
  auto m = cyclic_module(OrderPresentation(e), one, 3, 3);
  EXPECT_EQ(m.dim(), 4);
  EXPECT_EQ(m.ordinary_weight_space(one).size(), 1u);
  auto q = simple_quotient(m);
  EXPECT_EQ(q.dim(), 4);
  EXPECT_FALSE(has_proper_submodule(q.matrices, 4));
}

TEST(Module, ZeroJetOrder) {
  auto e = ore("1");
  auto m = cyclic_module(OrderPresentation(e), PointIdeal::origin(e.setting->field()), 0, 3);
  EXPECT_EQ(m.dim(), 1);
  EXPECT_TRUE(m.leaked());
}

TEST(Module, SwapOrbitQuotient) {
  auto e = build_setting(recipe("rational-differential", 2, "S2"));
  OrderPresentation F(e.setting, {{"x", e.parse("x")}, {"y", e.parse("y")}, {"s", e.parse("s")}});
  auto p = PointIdeal::parse(e.setting->field(), {"1", "2"});
  auto m = cyclic_module(F, p, 1, 2);
  EXPECT_EQ(m.dim(), 2);
  EXPECT_EQ(m.weight_dims(), (std::vector<int>{1, 1}));
  auto q = simple_quotient(m);
  EXPECT_EQ(q.dim(), 2);
  EXPECT_FALSE(has_proper_submodule(q.matrices, 2));
}

TEST(Module, SimpleQuotientCutsNonLambdaSubmodule) {
  // At the fixed point of the swap, Λ#W alone has the sign line as a submodule
  // inside the derivative jets.
  auto e = build_setting(recipe("rational-differential", 1, "Z2"));
  OrderPresentation F(e.setting, {{"x", e.parse("x")}, {"s", e.parse("s")}, {"dx", e.parse("dx")}});
  auto origin = PointIdeal::origin(e.setting->field());
  auto m = cyclic_module(F, origin, 3, 3);
  auto q = simple_quotient(m);
  EXPECT_LE(q.dim(), m.dim());
  EXPECT_FALSE(has_proper_submodule(q.matrices, q.dim()));
}

TEST(Module, ScalarModules) {
  auto e = ore("t^2");
  const Field& f = e.setting->field();
  RatFunc p = f.parse("t^2");
  for (int mu = -10; mu < 10; ++mu) EXPECT_TRUE(scalar_module_check(p, ParamElem(0), ParamElem(mu)).verified());
  auto bad = scalar_module_check(p, ParamElem(1), ParamElem(0));
  EXPECT_EQ(bad.status, Status::counterexample);
  EXPECT_EQ(bad.witness["p(lambda)"], "1");
  EXPECT_EQ(scalar_module_check(f.one(), ParamElem(3), ParamElem(5)).status, Status::counterexample);
}

TEST(Module, LocalFiniteness) {
  auto e = ore("1");
  auto origin = PointIdeal::origin(e.setting->field());
  auto m = cyclic_module(OrderPresentation(e), origin, 3, 3);
  auto rep = local_finiteness_check(m, 1, origin);
  EXPECT_TRUE(rep.verified());
  EXPECT_EQ(rep.witness["weight_dimension"], 4);
  EXPECT_EQ(rep.witness["connected_dimension"], 2);
  auto off = local_finiteness_check(m, 1, PointIdeal::parse(e.setting->field(), {"5"}));
  EXPECT_EQ(off.status, Status::inconclusive);
  EXPECT_EQ(off.witness["hypothesis_i"], false);

  auto g = build_setting(recipe("rational-differential", 2, "S2"));
  OrderPresentation F(g.setting, {{"x", g.parse("x")}, {"y", g.parse("y")}, {"s", g.parse("s")}});
  auto p = PointIdeal::parse(g.setting->field(), {"1", "2"});
  auto gm = cyclic_module(F, p, 2, 2);
  auto grep = local_finiteness_check(gm, 0, p);
  EXPECT_TRUE(grep.verified());
  EXPECT_EQ(grep.witness["stabilizer_size"], 1);
}

TEST(Spherical, Idempotent) {
  auto s2 = build_setting(recipe("rational-differential", 2, "S2"));
  SmashElement e = idempotent(s2.setting);
  EXPECT_EQ(e, s2.parse("1/2 + 1/2*s"));
  EXPECT_EQ(e * e, e);
  auto s3 = build_setting(recipe("cherednik", 3, "S3"));
  SmashElement e3 = idempotent(s3.setting);
  EXPECT_EQ(e3.terms().size(), 6u);
  EXPECT_EQ(e3 * e3, e3);
  EXPECT_EQ(e3 * s3.parse("s1"), e3);
  EXPECT_EQ(s3.parse("s2") * e3, e3);
  auto o = ore("1");
  EXPECT_EQ(idempotent(o.setting), SmashElement::one(o.setting));
}

TEST(Spherical, Symmetrize) {
  auto e = build_setting(recipe("rational-differential", 2, "S2"));
  EXPECT_EQ(symmetrize(e.parse("x")), e.parse("1/2*x + 1/2*y"));
  EXPECT_EQ(symmetrize(e.parse("x*dx")), e.parse("1/2*x*dx + 1/2*y*dy"));
  SmashElement inv = e.parse("x*y + dx*dy");
  EXPECT_EQ(symmetrize(inv), inv);
  test::Rng rng(3);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(is_invariant(symmetrize(test::random_element(e, rng, 2))));
}

TEST(Spherical, PsiMultiplicative) {
  test::Rng rng(41);
  for (const auto& e : {build_setting(recipe("rational-differential", 2, "S2")),
                        build_setting(recipe("cherednik", 1, "Z2"))}) {
    EXPECT_EQ(psi(SmashElement::one(e.setting)), idempotent(e.setting));
    for (int i = 0; i < 10; ++i) {
      SmashElement x = symmetrize(test::random_element(e, rng, 1));
      SmashElement y = symmetrize(test::random_element(e, rng, 1));
      EXPECT_EQ(psi(x) * psi(y), psi(x * y)) << test::label(e);
    }
  }
  auto e = build_setting(recipe("rational-differential", 2, "S2"));
  EXPECT_THROW(psi(e.parse("x")), PreconditionError);
  SmashElement xy = e.parse("x + y");
  EXPECT_EQ(psi(xy * xy), psi(xy) * psi(xy));
}

TEST(Spherical, AxiomCheck) {
  auto z2 = build_setting(recipe("cherednik", 1, "Z2"));
  SmashElement d = z2.op("Dx");
  EXPECT_TRUE(is_invariant(d * d));
  EXPECT_TRUE(spherical_axiom_check({{"Dx^2", d * d}}, z2.setting, 6).verified());
  auto s2 = build_setting(recipe("rational-differential", 2, "S2"));
  auto rep = spherical_axiom_check({{"x*dx", s2.parse("x*dx")}}, s2.setting, 2);
  EXPECT_EQ(rep.status, Status::counterexample);
  EXPECT_EQ(rep.witness["reason"], "image not W-fixed");
  auto sym = spherical_axiom_check({{"e(x+y)e", psi(s2.parse("x + y"))}}, s2.setting, 3);
  EXPECT_TRUE(sym.verified());
}

TEST(Spherical, InvariantBasis) {
  auto s2 = build_setting(recipe("rational-differential", 2, "S2"));
  auto b = invariant_basis(*s2.setting, 2);
  EXPECT_EQ(b.size(), 4u);  // 1, x+y, x^2+y^2, xy
  for (const auto& f : b) EXPECT_TRUE(is_fixed(*s2.setting, f));
}

TEST(Spherical, MoritaWitness) {
  auto z2 = build_setting(recipe("rational-differential", 1, "Z2"));
  OrderPresentation F(z2);
  auto rep = morita_witness(F, 2);
  ASSERT_TRUE(rep.verified());
  std::map<std::string, SmashElement> named;
  for (const auto& w : words(F, 2)) named.emplace(w.name, w.value);
  SmashElement e = idempotent(z2.setting);
  SmashElement total(z2.setting);
  const Field& f = z2.setting->field();
  for (const auto& t : rep.witness["terms"]) {
    RatFunc c = f.lift(f.parse_scalar(t["coefficient"].get<std::string>()));
    total = total + (named.at(t["left"]) * e * named.at(t["right"])).left_scale(c);
  }
  EXPECT_EQ(total, SmashElement::one(z2.setting));

  OrderPresentation group_only(z2.setting, {{"x", z2.parse("x")}, {"s", z2.parse("s")}});
  EXPECT_EQ(morita_witness(group_only, 2).status, Status::inconclusive);

  auto o = ore("1");
  EXPECT_TRUE(morita_witness(OrderPresentation(o), 0).verified());
}

TEST(Spherical, CornerCheck) {
  auto s2 = build_setting(recipe("rational-differential", 2, "S2"));
  auto rep = corner_check(OrderPresentation(s2), 2);
  EXPECT_TRUE(rep.verified());
  EXPECT_GT(rep.witness["words"].get<int>(), 20);
  auto z2 = build_setting(recipe("cherednik", 1, "Z2"));
  EXPECT_TRUE(corner_check(OrderPresentation(z2), 2).verified());
}

TEST(Spherical, PsiInjectiveOnInvariants) {
  test::Rng rng(43);
  auto e = build_setting(recipe("rational-differential", 2, "S2"));
  auto basis = invariant_basis(*e.setting, 3);
  for (int i = 0; i < 20; ++i) {
    SmashElement x = symmetrize(test::random_element(e, rng, 1, false));
    bool acts = false;
    for (const auto& f : basis) acts = acts || !x.apply(f).is_zero();
    if (acts) EXPECT_FALSE(psi(x).is_zero());
    if (psi(x).is_zero()) {
      for (const auto& f : basis) EXPECT_TRUE(x.apply(f).is_zero());
    }
  }
}

TEST(Spherical, PsiKeepsLatticePreservation) {
  auto e = build_setting(recipe("cherednik", 2, "S2"));
  const Field& f = e.setting->field();
  for (const char* text : {"Dx + Dy", "Dx*Dx + Dy*Dy", "x + y", "x*Dx + y*Dy"}) {
    SmashElement x = symmetrize(e.parse(text));
    SmashElement p = psi(x);
    for (const auto& m : f.monomial_window(4)) {
      EXPECT_TRUE(is_in_lattice(p.apply(monomial_function(f, m)))) << text;
    }
  }
}
