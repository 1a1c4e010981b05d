#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vortexpatch/scenario.hpp"

int main(int argc, char** argv) {
  using namespace vortexpatch;

  CLI::App app{"Vortex patch stability checks and contour-dynamics evolution"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  for (const char* name : {"moments", "lemma1", "lemma2", "prelim", "bound", "evolve", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "scenario config (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  const auto kind = scenario_kind_from(app.get_subcommands().front()->get_name());
  try {
    return run_config_file(*kind, config_path, out_dir, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
