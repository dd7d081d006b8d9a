#include "ptcrum/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "ptcrum/errors.hpp"

namespace ptcrum {

namespace {

void check_stencil(int order) {
  if (order != 2 && order != 4 && order != 6 && order != 8) {
    throw InvalidGrid("stencil order must be 2, 4, 6 or 8, got " + std::to_string(order));
  }
}

// Centered weights for offsets 0, 1, ..., order/2 (second derivative) and
// 1, ..., order/2 (first derivative, odd continuation).
std::vector<double> second_derivative_weights(int order) {
  switch (order) {
    case 2: return {-2.0, 1.0};
    case 4: return {-5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0};
    case 6: return {-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0};
    default: return {-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
  }
}

std::vector<double> first_derivative_weights(int order) {
  switch (order) {
    case 2: return {1.0 / 2.0};
    case 4: return {2.0 / 3.0, -1.0 / 12.0};
    case 6: return {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
    default: return {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  }
}

SparseMatrix banded(Eigen::Index n, const std::vector<std::pair<int, double>>& bands, double scale) {
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(n) * bands.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& [offset, value] : bands) {
      const Eigen::Index j = i + offset;
      if (j >= 0 && j < n) entries.emplace_back(i, j, value * scale);
    }
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return v;
}

double max_abs(const SparseMatrix& m) {
  double out = 0.0;
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

Vector sample_nodes(const Expression& f, const std::vector<double>& xs) {
  const CompiledExpression tape(f);
  Vector out(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Complex value;
    try {
      value = tape(xs[i]);
    } catch (const PoleAtPoint& e) {
      throw PoleOnGrid(e.what());
    } catch (const BranchViolation& e) {
      throw PoleOnGrid(e.what());
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw PoleOnGrid("non-finite value at x = " + std::to_string(xs[i]));
    }
    out[static_cast<Eigen::Index>(i)] = value;
  }
  return out;
}

}  // namespace

Vector sample_interior(const Expression& f, const Grid& grid) {
  return sample_nodes(f, grid.interior_nodes());
}

Vector sample(const Expression& f, const Grid& grid) { return sample_nodes(f, grid.nodes()); }

SparseMatrix kinetic_matrix(const Grid& grid, int stencil_order) {
  check_stencil(stencil_order);
  const double h = grid.spacing();
  const auto w = second_derivative_weights(stencil_order);
  std::vector<std::pair<int, double>> bands;
  for (int k = -static_cast<int>(w.size()) + 1; k < static_cast<int>(w.size()); ++k) {
    bands.emplace_back(k, -w[static_cast<std::size_t>(std::abs(k))]);
  }
  return banded(grid.interior_points(), bands, 1.0 / (h * h));
}

SparseMatrix first_derivative_matrix(const Grid& grid, int stencil_order) {
  check_stencil(stencil_order);
  const double h = grid.spacing();
  const auto w = first_derivative_weights(stencil_order);
  std::vector<std::pair<int, double>> bands;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const int offset = static_cast<int>(k) + 1;
    bands.emplace_back(-offset, -w[k]);
    bands.emplace_back(offset, w[k]);
  }
  return banded(grid.interior_points(), bands, 1.0 / h);
}

SparseMatrix parity_matrix(Eigen::Index n) {
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) entries.emplace_back(i, n - 1 - i, 1.0);
  SparseMatrix p(n, n);
  p.setFromTriplets(entries.begin(), entries.end());
  return p;
}

SparseMatrix diagonal_matrix(const Vector& d) {
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(d.size()));
  for (Eigen::Index i = 0; i < d.size(); ++i) entries.emplace_back(i, i, d[i]);
  SparseMatrix m(d.size(), d.size());
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

DiscreteHamiltonian discretize(const Expression& potential, const Grid& grid, int stencil_order) {
  DiscreteHamiltonian h{grid, stencil_order, sample_interior(potential, grid), {}};
  h.matrix = kinetic_matrix(grid, stencil_order) + diagonal_matrix(h.potential);
  h.matrix.makeCompressed();
  return h;
}

// ---------------------------------------------------------------------------
// eigensolver

namespace {

EigenPairs run_geev(const Matrix& m, bool vectors) {
  if (m.rows() != m.cols()) throw InvalidGrid("eigensolver needs a square matrix");
  const lapack_int n = static_cast<lapack_int>(m.rows());
  EigenPairs out;
  if (n == 0) return out;
  if (!m.allFinite()) throw NoConvergence("matrix has non-finite entries");
  Matrix a = m;
  std::vector<Complex> w(static_cast<std::size_t>(n));
  Matrix vr;
  if (vectors) vr.resize(n, n);
  Complex dummy;
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', vectors ? 'V' : 'N', n, a.data(), n, w.data(), &dummy,
                    1, vectors ? vr.data() : &dummy, vectors ? n : 1);
  if (info > 0) {
    throw NoConvergence("QR iteration failed: only eigenvalues " + std::to_string(info + 1) +
                        ".." + std::to_string(n) + " converged");
  }
  if (info < 0) throw NoConvergence("zgeev rejected argument " + std::to_string(-info));

  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return w[i].real() < w[j].real() || (w[i].real() == w[j].real() && w[i].imag() < w[j].imag());
  });
  out.values.reserve(w.size());
  for (std::size_t i : order) out.values.push_back(w[i]);
  if (vectors) {
    out.vectors.resize(n, n);
    for (std::size_t k = 0; k < order.size(); ++k) {
      out.vectors.col(static_cast<Eigen::Index>(k)) = vr.col(static_cast<Eigen::Index>(order[k]));
    }
  }
  return out;
}

}  // namespace

std::vector<Complex> eigenvalues(const Matrix& m) { return run_geev(m, false).values; }

std::vector<Complex> eigenvalues(const DiscreteHamiltonian& h) { return eigenvalues(h.dense()); }

EigenPairs eigenpairs(const Matrix& m) { return run_geev(m, true); }

// ---------------------------------------------------------------------------
// symmetry checks

double pt_residual(const Expression& v, const Grid& grid) {
  const Vector values = sample(v, grid);
  const Eigen::Index n = values.size();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(std::conj(values[n - 1 - i]) - values[i]));
  }
  return worst;
}

double pseudo_hermiticity_residual(const SparseMatrix& m) {
  const SparseMatrix p = parity_matrix(m.rows());
  const SparseMatrix adjoint = m.adjoint();
  const SparseMatrix diff = SparseMatrix(p * m * p) - adjoint;
  const double scale = max_abs(m);
  return scale == 0.0 ? 0.0 : max_abs(diff) / scale;
}

double pseudo_hermiticity_residual(const DiscreteHamiltonian& h) {
  return pseudo_hermiticity_residual(h.matrix);
}

Complex pt_inner_product(const Expression& f, const Expression& g, const Grid& grid, double decay) {
  const Vector fv = sample(f, grid);
  const Vector gv = sample(g, grid);
  const Eigen::Index n = fv.size();
  Vector integrand(n);
  for (Eigen::Index i = 0; i < n; ++i) integrand[i] = std::conj(fv[n - 1 - i]) * gv[i];
  const double peak = integrand.cwiseAbs().maxCoeff();
  const double edge = std::max(std::abs(integrand[0]), std::abs(integrand[n - 1]));
  if (peak > 0.0 && edge > decay * peak) {
    throw BoundaryLeak("integrand at the box edge is " + std::to_string(edge / peak) +
                       " of its peak; widen the grid");
  }
  Complex sum = 0.5 * (integrand[0] + integrand[n - 1]);
  for (Eigen::Index i = 1; i + 1 < n; ++i) sum += integrand[i];
  return sum * grid.spacing();
}

// ---------------------------------------------------------------------------
// spectrum matching

bool SpectralReport::passed() const {
  return std::all_of(matched.begin(), matched.end(), [](const auto& m) { return m.ok; }) &&
         std::all_of(missing.begin(), missing.end(), [](const auto& m) { return m.ok; });
}

double SpectralReport::max_gap() const {
  double out = 0.0;
  for (const auto& m : matched) out = std::max(out, m.gap);
  return out;
}

double SpectralReport::max_imag() const {
  double out = 0.0;
  for (const auto& m : matched) out = std::max(out, m.imag);
  return out;
}

double SpectralReport::min_deleted_distance() const {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& m : missing) out = std::min(out, m.distance);
  return out;
}

SpectralReport match_spectrum(std::vector<Complex> numeric, std::vector<Complex> analytic_levels,
                              const std::vector<Complex>& deleted_levels, double tol,
                              double imag_guard) {
  SpectralReport report;
  report.numeric = sorted(std::move(numeric));
  report.tolerance = tol;
  report.separation_floor = 10.0 * tol;
  report.imag_guard = imag_guard;

  std::vector<bool> used(report.numeric.size(), false);
  for (const Complex level : sorted(std::move(analytic_levels))) {
    std::size_t best = report.numeric.size();
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < report.numeric.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(report.numeric[k] - level);
      if (d < best_distance) {
        best_distance = d;
        best = k;
      }
    }
    LevelMatch m{level, Complex{std::numeric_limits<double>::quiet_NaN()},
                 std::numeric_limits<double>::infinity(), 0.0, false};
    if (best < report.numeric.size()) {
      used[best] = true;
      m.eigenvalue = report.numeric[best];
      m.gap = std::abs(m.eigenvalue.real() - level.real());
      m.imag = std::abs(m.eigenvalue.imag());
      m.ok = m.gap <= tol && m.imag <= imag_guard;
    }
    report.matched.push_back(m);
  }

  for (const Complex level : deleted_levels) {
    DeletedLevel d{level, Complex{std::numeric_limits<double>::quiet_NaN()},
                   std::numeric_limits<double>::infinity(), true};
    for (const Complex value : report.numeric) {
      const double dist = std::abs(value - level);
      if (dist < d.distance) {
        d.distance = dist;
        d.nearest = value;
      }
    }
    d.ok = d.distance > report.separation_floor;
    report.missing.push_back(d);
  }
  return report;
}

// ---------------------------------------------------------------------------
// refinement

double RefinementStudy::min_order() const {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& row : orders) {
    for (double o : row) out = std::min(out, o);
  }
  return out;
}

RefinementStudy refinement_study(const Expression& potential, const Grid& grid, int stencil_order,
                                 const std::vector<Complex>& levels, int refinements) {
  RefinementStudy study;
  study.levels = levels;
  study.errors.assign(levels.size(), {});
  study.orders.assign(levels.size(), {});
  for (int step = 0; step <= refinements; ++step) {
    const Grid g = step == 0 ? grid : grid.refined(1 << step);
    study.grids.push_back(g);
    const auto values = eigenvalues(discretize(potential, g, stencil_order));
    for (std::size_t k = 0; k < levels.size(); ++k) {
      double err = std::numeric_limits<double>::infinity();
      for (const Complex v : values) err = std::min(err, std::abs(v - levels[k]));
      study.errors[k].push_back(err);
    }
  }
  for (std::size_t k = 0; k < levels.size(); ++k) {
    for (std::size_t s = 1; s < study.errors[k].size(); ++s) {
      study.orders[k].push_back(std::log2(study.errors[k][s - 1] / study.errors[k][s]));
    }
  }
  return study;
}

}  // namespace ptcrum
