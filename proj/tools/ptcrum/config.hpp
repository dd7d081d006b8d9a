#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptcrum/ptcrum.hpp"

namespace ptcrum::cli {

/// Raised for malformed flags or config files; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Csv, Json };

struct RunConfig {
  std::string model = "pt-oscillator";
  double alpha = 0.75;
  double eps = 1.0;
  int qp = 1;
  double lambda = 30.0;
  double mu = 5.0;
  std::optional<ScarfTower> tower;
  std::vector<int> indices;
  std::optional<double> grid_l;
  std::optional<int> grid_n;
  int stencil = 4;
  double tol_spectrum = kSpectrumTolerance;
  std::string out;
  Format format = Format::Text;
  int refine = 0;
  std::optional<int> levels;
  /// Operator grid points and stencil for the susy matrix checks.
  std::optional<int> susy_grid_n;
  std::optional<int> susy_stencil;
};

/// Flat key = value pairs; `[section]` headers only group keys. Keys are
/// the long flag names without the leading dashes.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Parsers shared by flags and config values. Throw UsageError.
std::vector<int> parse_indices(const std::string& text);
int parse_quasi_parity(const std::string& text);
std::optional<ScarfTower> parse_tower(const std::string& text);
Format parse_format(const std::string& text);

/// Sets one RunConfig field from its flag name. Throws UsageError for
/// unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Builds the model; library errors propagate.
ModelPtr build_model(const RunConfig& cfg);
/// Grid from the model default with --grid-l / --grid-n overrides.
Grid build_grid(const RunConfig& cfg, const SolvableModel& model);
/// Number of levels to tabulate or check.
int level_count(const RunConfig& cfg, const SolvableModel& model);

}  // namespace ptcrum::cli
