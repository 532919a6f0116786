#include <iostream>

#include "CLI11.hpp"
#include "optomech/cli.hpp"
#include "optomech/error.hpp"

namespace cli = optomech::cli;

int main(int argc, char** argv) {
  CLI::App app{"Sideband cooling of a parametrically driven mechanical mode"};
  app.require_subcommand(1);

  std::string scenario_file, out_override;
  auto* run = app.add_subcommand("run", "Run a scenario file and write one CSV per engine");
  run->add_option("file", scenario_file, "Scenario file (key = value)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_override, "Output directory (overrides out_dir)");

  std::string level = "fast";
  int cutoff = 12;
  auto* verify = app.add_subcommand("verify", "Run the built-in consistency checks");
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--cutoff", cutoff, "Fock cutoff for the master-equation checks")->check(CLI::Range(4, 64));

  std::string figure, figure_out = ".";
  auto* fig = app.add_subcommand("figure", "Write the CSV and SVG for one figure");
  fig->add_option("name", figure, "fig1, fig2 or fig3")->required()->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  fig->add_option("--out", figure_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const cli::Scenario s = cli::load_scenario(scenario_file);
      for (const auto& p : cli::run_scenario(s, out_override.empty() ? s.out_dir : out_override))
        std::cout << p.string() << "\n";
      return 0;
    }
    if (*verify) {
      const auto lvl = level == "full" ? cli::VerifyLevel::Full : cli::VerifyLevel::Fast;
      return cli::report(cli::verify(lvl, cutoff), std::cout);
    }
    for (const auto& p : cli::run_scenario(cli::preset(figure), figure_out)) std::cout << p.string() << "\n";
    return 0;
  } catch (const optomech::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
