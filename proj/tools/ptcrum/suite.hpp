#pragma once

#include <string>
#include <vector>

#include "report.hpp"

namespace ptcrum::cli {

struct SuiteOptions {
  Grid grid{8.0, 1601};
  int stencil = 4;
  double tol_spectrum = kSpectrumTolerance;
  int levels = 10;
  int refine = 0;
  /// Grid and stencil for the matrix algebra checks.
  Grid operator_grid{8.0, 3201};
  int operator_stencil = 8;
  /// Bound for the A#A and AA# polynomial identities.
  double algebra_tolerance = 1e-5;
};

/// Grid, stencil and algebra bound for the susy matrix checks. Both models
/// use the 8th-order stencil on a refined box. Scarf II needs a much finer
/// mesh because its transformed superpotential has a pole close to the real
/// axis, and the AA# identity on partner states then bottoms out near 2e-5
/// (double roundoff in a fourth-order operator), so its algebra bound is 1e-4.
void default_operator_discretization(const SolvableModel& model, const Grid& grid,
                                     SuiteOptions& options);

struct LevelSet {
  std::vector<Complex> present;
  std::vector<Complex> deleted;
};

/// Analytic levels expected in the numeric spectrum of the source with the
/// given indices removed. Includes every bound level of the companion
/// tower (oscillator quasi-parity -q, other Scarf sign of q) up to the
/// highest requested level, since those states share the potential.
LevelSet expected_levels(const SolvableModel& model, const std::vector<int>& deleted, int levels);

struct SuiteResult {
  std::vector<Check> checks;
  Json spectra = Json::object();
  Json extras = Json::object();

  bool passed() const;
  const Check* first_failure() const;
};

SuiteResult run_verification(const ModelPtr& model, const std::vector<int>& indices,
                             const SuiteOptions& options);

/// max |a - b| / max |b| over the grid nodes.
double relative_difference(const Expression& a, const Expression& b, const Grid& grid);
/// Same after scaling b by a(x*)/b(x*), x* the node of largest |a|.
double fitted_difference(const Expression& a, const Expression& b, const Grid& grid);
/// max |-f'' + (V - E) f| / max |f|.
double schrodinger_residual(const Expression& v, const Expression& f, Complex e, const Grid& grid);

}  // namespace ptcrum::cli
