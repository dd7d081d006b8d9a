#pragma once

// Finite-difference discretization of -d^2/dx^2 + V on a Dirichlet box and
// the numerical checks built on it.

#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "ptcrum/expr.hpp"
#include "ptcrum/grid.hpp"

namespace ptcrum {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Matching tolerance for unbroken-PT spectra on default grids.
inline constexpr double kSpectrumTolerance = 1e-3;
inline constexpr double kImagGuard = 1e-4;

/// Samples f at the interior nodes. Throws PoleOnGrid on a singular node.
Vector sample_interior(const Expression& f, const Grid& grid);
/// Samples f at every node. Throws PoleOnGrid on a singular node.
Vector sample(const Expression& f, const Grid& grid);

/// -d^2/dx^2 on the interior nodes; ghost values beyond the box are zero.
/// Centered stencils of order 2, 4, 6 or 8; order 2 is (-1, 2, -1)/h^2 and
/// order 4 is (1, -16, 30, -16, 1)/(12 h^2).
SparseMatrix kinetic_matrix(const Grid& grid, int stencil_order);
/// Centered d/dx with the same boundary treatment.
SparseMatrix first_derivative_matrix(const Grid& grid, int stencil_order);
/// Index reversal, i.e. f(x) -> f(-x) on a symmetric grid.
SparseMatrix parity_matrix(Eigen::Index n);
SparseMatrix diagonal_matrix(const Vector& d);

struct DiscreteHamiltonian {
  Grid grid;
  int stencil_order = 4;
  Vector potential;     // V at interior nodes
  SparseMatrix matrix;  // kinetic + diag(potential)

  Eigen::Index size() const { return matrix.rows(); }
  Matrix dense() const { return Matrix(matrix); }
};

DiscreteHamiltonian discretize(const Expression& potential, const Grid& grid, int stencil_order = 4);

/// All eigenvalues, ordered by real part. Throws NoConvergence.
std::vector<Complex> eigenvalues(const Matrix& m);
std::vector<Complex> eigenvalues(const DiscreteHamiltonian& h);

struct EigenPairs {
  std::vector<Complex> values;  // ordered by real part
  Matrix vectors;               // columns follow `values`
};
EigenPairs eigenpairs(const Matrix& m);

/// max over the grid of |conj(V(-x)) - V(x)|.
double pt_residual(const Expression& v, const Grid& grid);

/// |P M P - M^dagger|_max / |M|_max with P the index reversal.
double pseudo_hermiticity_residual(const SparseMatrix& m);
double pseudo_hermiticity_residual(const DiscreteHamiltonian& h);

/// Trapezoid integral of conj(f(-x)) g(x) over the grid. Throws BoundaryLeak
/// unless the integrand has decayed below `decay` of its peak at both ends.
Complex pt_inner_product(const Expression& f, const Expression& g, const Grid& grid,
                         double decay = 1e-10);

struct LevelMatch {
  Complex level;
  Complex eigenvalue;
  double gap = 0.0;   // |Re(eigenvalue) - Re(level)|
  double imag = 0.0;  // |Im(eigenvalue)|
  bool ok = false;
};

struct DeletedLevel {
  Complex level;
  Complex nearest;
  double distance = 0.0;  // |nearest - level|
  bool ok = false;
};

struct SpectralReport {
  std::vector<Complex> numeric;
  std::vector<LevelMatch> matched;
  std::vector<DeletedLevel> missing;
  double tolerance = kSpectrumTolerance;
  double separation_floor = 10 * kSpectrumTolerance;
  double imag_guard = kImagGuard;

  bool passed() const;
  double max_gap() const;
  double max_imag() const;
  double min_deleted_distance() const;
};

/// Greedy nearest matching of analytic levels (in ascending real part) to
/// unused numeric eigenvalues. Deleted levels fail when any eigenvalue lies
/// within 10 * tol of them.
SpectralReport match_spectrum(std::vector<Complex> numeric, std::vector<Complex> analytic_levels,
                              const std::vector<Complex>& deleted_levels,
                              double tol = kSpectrumTolerance, double imag_guard = kImagGuard);

struct RefinementStudy {
  std::vector<Grid> grids;
  std::vector<Complex> levels;
  std::vector<std::vector<double>> errors;  // [level][grid]
  std::vector<std::vector<double>> orders;  // [level][grid - 1], log2 error ratios

  double min_order() const;
};

/// Solves on `grid`, then on grids refined by 2, 4, ... (`refinements`
/// steps), and measures the error of each analytic level against the
/// nearest eigenvalue.
RefinementStudy refinement_study(const Expression& potential, const Grid& grid, int stencil_order,
                                 const std::vector<Complex>& levels, int refinements = 2);

}  // namespace ptcrum
