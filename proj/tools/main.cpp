#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Invocation {
  std::string area;
  std::string verb;
  std::string scenario;
  std::string suite;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace equitrans;
  using namespace equitrans::cli;

  CLI::App app{"Equivariant transversality toolkit: runs scenario checks and acceptance suites"};
  app.require_subcommand(1);
  FlagOverrides flags;
  std::string output = "json";
  app.add_option("--seed", flags.seed, "Seed for every randomized step");
  app.add_option("--tolerance", flags.tolerance, "Float tolerance for identity checks");
  app.add_option("--cutoff", flags.cutoff, "Novikov truncation cutoff (rational, e.g. 20 or 41/2)");
  app.add_option("--quadrature-order", flags.quadrature_order, "Circle quadrature order N");
  app.add_option("--mode", flags.mode, "Arithmetic for finite groups")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--output", output, "Report format")->check(CLI::IsMember({"json", "text"}));

  Invocation inv;
  for (const auto& [area, verbs] : command_table()) {
    auto* group = app.add_subcommand(area, area + " commands")->require_subcommand(1)->fallthrough();
    for (const auto& verb : verbs) {
      auto* sub = group->add_subcommand(verb)->fallthrough();
      sub->add_option("scenario", inv.scenario, "Scenario JSON file")->required();
      sub->callback([&inv, a = area, v = verb] {
        inv.area = a;
        inv.verb = v;
      });
    }
  }
  auto* suite = app.add_subcommand("suite", "Run an acceptance suite")->fallthrough();
  std::vector<std::string> suite_choices = suites::suite_names();
  suite_choices.push_back("all");
  suite->add_option("name", inv.suite, "Suite name")->required()->check(CLI::IsMember(suite_choices));
  suite->callback([&inv] { inv.area = "suite"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Report report;
    if (inv.area == "suite") {
      report = run_suites(inv.suite, resolve_settings(Json::object(), flags));
    } else {
      const Json scenario = load_scenario(inv.scenario);
      report = run_command(inv.area, inv.verb, scenario, resolve_settings(scenario, flags));
    }
    if (output == "text")
      std::cout << to_text(report);
    else
      std::cout << to_json(report).dump(2) << "\n";
    return report.pass() ? 0 : 1;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const MathFailure& e) {
    std::cerr << "mathematical failure: " << e.what() << "\n";
    return 1;
  }
}
