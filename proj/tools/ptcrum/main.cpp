#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace ptcrum::cli;

// long flag name -> help text; every flag is also a config key
const std::vector<std::pair<std::string, std::string>> kFlags = {
    {"model", "pt-oscillator or scarf2"},
    {"alpha", "oscillator alpha"},
    {"eps", "oscillator shift epsilon (> 0)"},
    {"qp", "oscillator quasi-parity, +1 or -1"},
    {"lambda", "Scarf II lambda"},
    {"mu", "Scarf II mu"},
    {"tower", "Scarf II tower: +, - or auto"},
    {"indices", "comma-separated transformation indices, e.g. 1,2"},
    {"grid-l", "box half width L"},
    {"grid-n", "grid points (odd)"},
    {"stencil", "finite-difference order: 2, 4, 6 or 8"},
    {"tol-spectrum", "eigenvalue matching tolerance"},
    {"out", "output file (json) or directory (csv)"},
    {"format", "csv or json (text summary when omitted)"},
    {"refine", "grid refinements for the convergence table"},
    {"levels", "number of source levels to tabulate and check"},
    {"susy-grid-n", "grid points for the operator algebra checks"},
    {"susy-stencil", "stencil order for the operator algebra checks"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order Darboux transformations of PT-symmetric potentials"};
  app.fallthrough();
  app.require_subcommand(1);

  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& [name, help] : kFlags) {
    options[name] = app.add_option("--" + name, values[name], help);
  }
  std::string config_path;
  app.add_option("--config", config_path, "key = value preset file; flags take precedence")
      ->check(CLI::ExistingFile);

  auto* model = app.add_subcommand("model", "inspect a source model");
  model->require_subcommand(1);
  auto* show = model->add_subcommand("show", "parameters, derived constants and levels");
  auto* transform = app.add_subcommand("transform", "build the transformed and intermediate potentials");
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  auto* export_ = app.add_subcommand("export", "write plot-ready samples and spectra");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      for (const auto& [key, value] : read_config_file(config_path)) {
        if (key == "config") throw UsageError("config files cannot include other config files");
        apply_setting(cfg, key, value);
      }
    }
    for (const auto& [name, opt] : options) {
      if (opt->count() > 0) apply_setting(cfg, name, values[name]);
    }

    if (show->parsed()) return cmd_model_show(cfg, std::cout);
    if (transform->parsed()) return cmd_transform(cfg, std::cout);
    if (verify->parsed()) return cmd_verify(cfg, std::cout, std::cerr);
    if (export_->parsed()) return cmd_export(cfg, std::cout);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ptcrum::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return is_parameter_error(e) ? kExitUsage : kExitFail;
  }
}
