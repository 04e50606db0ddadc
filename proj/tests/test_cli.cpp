#include <gtest/gtest.h>

#include "hgo/cli.hpp"
#include "support.hpp"

using namespace hgo;

namespace {

std::string error_path(const std::string& text) {
  try {
    resolve(parse_run_config(Json::parse(text)));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, ErrorsNameTheField) {
  EXPECT_NE(error_path(R"({"recipe": {}})").find("recipe.kind"), std::string::npos);
  EXPECT_NE(error_path(R"({"recipe": {"kind": "nope"}})").find("recipe.kind"), std::string::npos);
  EXPECT_NE(error_path(R"({"recipe": {"kind": "cherednik", "n": "2"}})").find("recipe.n"), std::string::npos);
  EXPECT_NE(error_path(R"({"recipe": {"kind": "ore-family"}, "bounds": {"depth": 2}})").find("bounds.depth"),
            std::string::npos);
  EXPECT_NE(error_path(R"({"recipe": {"kind": "ore-family"}, "bounds": {"degree": 0}})").find("bounds.degree"),
            std::string::npos);
  EXPECT_NE(error_path(R"({"recipe": {"kind": "ore-family"}, "colour": 1})").find("colour"), std::string::npos);
  EXPECT_NE(error_path(R"({"recipe": {"kind": "ore-family"}, "presentation": ["t", {"name": "X"}]})")
                .find("presentation[1].value"),
            std::string::npos);
  EXPECT_NE(error_path(R"({"recipe": {"kind": "ore-family"}, "presentation": ["t", "X +"]})").find("presentation[1]"),
            std::string::npos);
  EXPECT_EQ(error_path(R"({"recipe": {"kind": "ore-family", "p": "t^2"}})"), "");
}

TEST(Config, OverridesAndDefaults) {
  auto c = parse_run_config(Json::parse(R"({"recipe": {"kind": "quantum-borel"}, "bounds": {"jet_order": 5}})"));
  EXPECT_EQ(c.bounds.degree, 4);
  EXPECT_EQ(c.bounds.jet_order, 5);
  EXPECT_FALSE(c.allow_truncation);
  auto w = resolve(c);
  EXPECT_EQ(w.presentation.generators.size(), 2u);
}

TEST(Config, VerifyRunCountsCounterexamples) {
  auto c = parse_run_config(Json::parse(
      R"({"recipe": {"kind": "rational-differential"}, "extra_generators": ["x^-1*dx"], "checks": ["preserves_lattice"]})"));
  auto r = run_verify(resolve(c));
  EXPECT_EQ(r.counterexamples, 1);
  EXPECT_EQ(r.document["reports"][0]["status"], "counterexample");
}
