#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hgo/cli.hpp"

namespace {

enum Exit { ok = 0, counterexample = 1, usage = 2, inconclusive = 3 };

struct Overrides {
  std::string config;
  std::optional<int> degree, jet_order, word_length, orbit_window;
  std::string out;
  bool allow_truncation = false;
  bool strict = false;
};

void add_run_options(CLI::App* sub, Overrides& o) {
  sub->add_option("config", o.config, "JSON run configuration")->required();
  sub->add_option("--degree", o.degree, "monomial window bound d");
  sub->add_option("--jet-order", o.jet_order, "jet truncation order N");
  sub->add_option("--word-length", o.word_length, "word length bound");
  sub->add_option("--orbit-window", o.orbit_window, "orbit/shift window k");
  sub->add_option("--out", o.out, "write the report here instead of stdout");
  sub->add_flag("--allow-truncation", o.allow_truncation, "do not fail on jet or orbit leakage");
  sub->add_flag("--strict", o.strict, "exit 3 when a check is inconclusive at the bound");
}

hgo::RunConfig load(const Overrides& o) {
  std::ifstream in(o.config);
  if (!in) throw hgo::ConfigError("config", "cannot open " + o.config);
  hgo::Json j;
  try {
    j = hgo::Json::parse(in);
  } catch (const hgo::Json::parse_error& e) {
    throw hgo::ConfigError("config", e.what());
  }
  hgo::RunConfig c = hgo::parse_run_config(j);
  if (o.degree) c.bounds.degree = *o.degree;
  if (o.jet_order) c.bounds.jet_order = *o.jet_order;
  if (o.word_length) c.bounds.word_length = *o.word_length;
  if (o.orbit_window) c.bounds.orbit_window = *o.orbit_window;
  if (!o.out.empty()) c.output = o.out;
  c.allow_truncation = c.allow_truncation || o.allow_truncation;
  return c;
}

int emit(const hgo::RunConfig& c, const hgo::RunResult& r, bool strict) {
  std::string text = r.document.dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.output);
    if (!out) throw hgo::ConfigError("output", "cannot write " + c.output);
    out << text;
  }
  if (r.counterexamples > 0) return counterexample;
  if (r.leaked && !c.allow_truncation) {
    std::cerr << "module leaked past the truncation bounds; rerun with --allow-truncation to accept\n";
    return inconclusive;
  }
  if (strict && r.inconclusive > 0) return inconclusive;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hopf Galois order toolkit"};
  app.require_subcommand(1);
  auto* catalog = app.add_subcommand("catalog", "list the available setting recipes");
  Overrides o;
  auto* verify = app.add_subcommand("verify", "run the order-axiom checks");
  auto* module = app.add_subcommand("module", "build a truncated canonical module and its simple quotient");
  auto* stabilizer = app.add_subcommand("stabilizer", "grouplike stabilizer, reductors and the finiteness predicate");
  auto* spherical = app.add_subcommand("spherical", "idempotent, spherical axioms and a Morita witness");
  for (auto* sub : {verify, module, stabilizer, spherical}) add_run_options(sub, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  if (catalog->parsed()) {
    for (const auto& r : hgo::recipe_list()) std::cout << r.name << "\t" << r.summary << "\n";
    return ok;
  }
  try {
    hgo::RunConfig c = load(o);
    hgo::Workspace w = hgo::resolve(c);
    hgo::RunResult r;
    if (verify->parsed()) {
      r = hgo::run_verify(w);
    } else if (module->parsed()) {
      r = hgo::run_module(w);
    } else if (stabilizer->parsed()) {
      r = hgo::run_stabilizer(w);
    } else {
      r = hgo::run_spherical(w);
    }
    return emit(c, r, o.strict);
  } catch (const hgo::ConfigError& e) {
    std::cerr << "usage error at " << e.what() << "\n";
    return usage;
  } catch (const hgo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
}
