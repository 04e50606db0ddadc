#include <gtest/gtest.h>

#include "hgo/catalog.hpp"
#include "support.hpp"

using namespace hgo;

namespace {

CatalogEntry make(const std::string& kind, int n = 1, const std::string& group = "trivial") {
  Recipe r;
  r.kind = kind;
  r.n = n;
  r.group.name = group;
  return build_setting(r);
}

}  // namespace

TEST(Smash, QuantumWeylRelation) {
  auto e = make("quantum-borel");
  EXPECT_EQ(e.parse("E*t"), e.parse("1 + q^-1*t*E"));
  EXPECT_EQ(e.parse("E^2*t"), e.parse("(1 + q^-1)*E + q^-2*t*E^2"));
  EXPECT_EQ(e.parse("E").apply(e.setting->field().parse("t^2")), e.setting->field().parse("(1 + q^-1)*t"));
}

TEST(Smash, QuantumRightNormalForm) {
  auto e = make("quantum-borel");
  auto rn = e.parse("t*E").right_normal_form();
  ASSERT_EQ(rn.size(), 2u);
  const Field& f = e.setting->field();
  EXPECT_EQ(SmashElement::from_right_normal_form(e.setting, rn), e.parse("t*E"));
  for (const auto& t : rn) {
    if (t.beta.is_one()) {
      EXPECT_EQ(t.h, f.parse("-q"));
    } else {
      EXPECT_EQ(t.h, f.parse("q*t"));
    }
  }
}

TEST(Smash, WeylAndReflection) {
  auto e = make("rational-differential", 2, "S2");
  EXPECT_EQ(e.parse("dx*x"), e.parse("x*dx + 1"));
  EXPECT_EQ(e.parse("s*x"), e.parse("y*s"));
  EXPECT_EQ(e.parse("s*dx"), e.parse("dy*s"));
  EXPECT_EQ(e.parse("s^2"), e.parse("1"));
  EXPECT_EQ(e.parse("s*dx*s").filtration_degree(), 1);
  EXPECT_EQ(e.parse("dx").conjugate_by_group(GroupPart{e.setting->group_names().at("s"), {}}), e.parse("dy"));
}

TEST(Smash, DunklValues) {
  auto z2 = make("cherednik", 1, "Z2");
  const Field& f = z2.setting->field();
  EXPECT_EQ(z2.op("Dx").apply(f.var(0)), f.parse("t - 2*c"));
  auto s2 = make("cherednik", 2, "S2");
  const Field& g = s2.setting->field();
  EXPECT_EQ(s2.op("Dx").apply(g.var(0)), g.parse("t - c"));
  EXPECT_TRUE(commutator(s2.op("Dx"), s2.op("Dy")).is_zero());
}

TEST(Smash, ShiftMonoid) {
  Recipe r;
  r.kind = "shift-flag";
  r.n = 2;
  r.group.name = "S2";
  auto e = build_setting(r);
  EXPECT_EQ(e.parse("tau1*x"), e.parse("(x + 1)*tau1"));
  EXPECT_EQ(e.parse("s*tau1"), e.parse("tau2*s"));
  EXPECT_EQ(e.parse("tau1*tau1^-1"), e.parse("1"));
  const Field& f = e.setting->field();
  EXPECT_EQ(e.parse("s*tau1").apply(f.parse("x*y^2")), f.parse("(y + 1)*x^2"));
}

TEST(Smash, GroupNames) {
  auto e = make("cherednik", 1, "Z3");
  const Field& f = e.setting->field();
  EXPECT_EQ(e.parse("s").apply(f.var(0)), f.parse("zeta^2*x"));
  EXPECT_EQ(e.parse("s^3"), e.parse("1"));
  EXPECT_EQ(e.setting->field().params()->size(), 3);
}

TEST(Smash, Associativity) {
  for (const char* kind : {"quantum-borel", "cherednik", "trigonometric-differential", "gkv-hecke"}) {
    auto e = make(kind, 1, std::string(kind) == "cherednik" || std::string(kind) == "trigonometric-differential" ? "Z2" : "trivial");
    test::Rng rng(17);
    for (int i = 0; i < 20; ++i) {
      auto a = test::random_element(e, rng, 2), b = test::random_element(e, rng, 2), c = test::random_element(e, rng, 2);
      EXPECT_EQ((a * b) * c, a * (b * c)) << kind;
      auto f = test::random_function(e, rng, 3);
      EXPECT_EQ((a * b).apply(f), a.apply(b.apply(f))) << kind;
      EXPECT_EQ(SmashElement::from_right_normal_form(e.setting, a.right_normal_form()), a) << kind;
    }
  }
}
