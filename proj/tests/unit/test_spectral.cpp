#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ptcrum/errors.hpp"
#include "ptcrum/models.hpp"
#include "ptcrum/spectral.hpp"

using namespace ptcrum;

namespace {

const Expression X = Expression::variable();

Expression harmonic() { return pow(X, 2.0); }

}  // namespace

TEST(Grid, Construction) {
  const Grid g(8.0, 1601);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.01);
  EXPECT_EQ(g.interior_points(), 1599);
  EXPECT_DOUBLE_EQ(g.node(800), 0.0);
  EXPECT_DOUBLE_EQ(g.node(0), -8.0);
  EXPECT_EQ(g.refined(2).points(), 3201);
  const auto nodes = g.nodes();
  for (int i = 0; i < g.points(); ++i) EXPECT_EQ(nodes[i], -nodes[g.points() - 1 - i]);
  EXPECT_THROW(Grid(8.0, 1600), InvalidGrid);
  EXPECT_THROW(Grid(-1.0, 101), InvalidGrid);
  EXPECT_THROW(Grid(8.0, 3), InvalidGrid);
  EXPECT_THROW(g.refined(0), InvalidGrid);
}

TEST(Stencils, RejectUnsupportedOrders) {
  const Grid g(1.0, 11);
  EXPECT_THROW(kinetic_matrix(g, 3), InvalidGrid);
  EXPECT_THROW(first_derivative_matrix(g, 5), InvalidGrid);
  for (int order : {2, 4, 6, 8}) EXPECT_NO_THROW(kinetic_matrix(g, order));
}

TEST(Stencils, SecondOrderWeights) {
  const Grid g(1.0, 11);
  const Matrix k = Matrix(kinetic_matrix(g, 2));
  const double h2 = g.spacing() * g.spacing();
  EXPECT_NEAR(k(3, 3).real() * h2, 2.0, 1e-12);
  EXPECT_NEAR(k(3, 2).real() * h2, -1.0, 1e-12);
  const Matrix k4 = Matrix(kinetic_matrix(g, 4));
  EXPECT_NEAR(k4(4, 4).real() * 12 * h2, 30.0, 1e-12);
  EXPECT_NEAR(k4(4, 3).real() * 12 * h2, -16.0, 1e-12);
  EXPECT_NEAR(k4(4, 2).real() * 12 * h2, 1.0, 1e-12);
}

TEST(Eigensolver, FreeBox) {
  // -f'' on a box of length pi: k^2
  const Grid g(std::numbers::pi / 2.0, 401);
  const auto values = eigenvalues(discretize(Expression{0.0}, g, 2));
  for (int k = 1; k <= 5; ++k) {
    EXPECT_NEAR(values[k - 1].real(), double(k * k), 1e-3 * k * k);
    EXPECT_NEAR(values[k - 1].imag(), 0.0, 1e-10);
  }
}

TEST(Eigensolver, HarmonicOscillator) {
  const auto values = eigenvalues(discretize(harmonic(), Grid(8.0, 401), 4));
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(values[n].real(), 2.0 * n + 1.0, 1e-4);
}

TEST(Eigensolver, SmallDenseMatrices) {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = Complex{1.0, 2.0};
  d(2, 2) = -1.0;
  const auto dv = eigenvalues(d);
  ASSERT_EQ(dv.size(), 3u);
  EXPECT_NEAR(std::abs(dv[0] + 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dv[1] - Complex{1.0, 2.0}), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dv[2] - 3.0), 0.0, 1e-14);

  Matrix r(2, 2);
  r << 0.0, kI, kI, 0.0;
  const auto rv = eigenvalues(r);
  // +-i, same real part
  EXPECT_NEAR(std::abs(rv[0].imag()), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(rv[1].imag()), 1.0, 1e-14);
  EXPECT_NEAR(rv[0].imag() + rv[1].imag(), 0.0, 1e-14);
}

TEST(Eigensolver, EigenpairsSatisfyTheEigenEquation) {
  const auto m = oscillator_model(0.75, 1.0, 1);
  const Matrix h = discretize(m->potential(), Grid(8.0, 201), 4).dense();
  const EigenPairs pairs = eigenpairs(h);
  const double scale = h.cwiseAbs().maxCoeff();
  for (int k = 0; k < 10; ++k) {
    const Vector v = pairs.vectors.col(k);
    const double residual = (h * v - pairs.values[k] * v).norm() / v.norm();
    EXPECT_LE(residual, 1e-8 * scale);
  }
}

TEST(Eigensolver, RealSymmetricEigenvectorsHaveParity) {
  const Grid g(8.0, 201);
  const EigenPairs pairs = eigenpairs(discretize(harmonic(), g, 4).dense());
  const Matrix p = Matrix(parity_matrix(g.interior_points()));
  for (int k = 0; k < 4; ++k) {
    const Vector v = pairs.vectors.col(k);
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    const Vector pv = p * v;
    EXPECT_LE((pv - sign * v).norm() / v.norm(), 1e-8) << k;
  }
}

TEST(Diagnostics, PtResidualAndPseudoHermiticity) {
  const auto m = oscillator_model(0.75, 1.0, 1);
  const Grid g(8.0, 401);
  EXPECT_LE(pt_residual(m->potential(), g), 1e-12);
  EXPECT_GT(pt_residual(X * Expression{kI} + Expression{kI}, g), 0.5);
  for (int order : {2, 4, 8}) {
    EXPECT_LE(pseudo_hermiticity_residual(discretize(m->potential(), g, order)), 1e-12);
  }
  const auto s = scarf_model(30.0, 5.0, ScarfTower::Plus);
  EXPECT_LE(pseudo_hermiticity_residual(discretize(s->potential(), Grid(18.0, 401), 4)), 1e-12);
  // a potential without PT symmetry is caught
  EXPECT_GT(pseudo_hermiticity_residual(discretize(Expression{kI} * exp(X), g, 4)), 1e-3);
}

TEST(Diagnostics, PtInnerProductOrthogonality) {
  const auto m = oscillator_model(0.75, 1.0, 1);
  const Grid g(8.0, 1601);
  std::vector<Expression> psi;
  for (int n = 0; n < 4; ++n) psi.push_back(m->wavefunction(n));
  for (int a = 0; a < 4; ++a) {
    const double na = std::abs(pt_inner_product(psi[a], psi[a], g));
    EXPECT_GT(na, 1e-3);
    for (int b = a + 1; b < 4; ++b) {
      const double nb = std::abs(pt_inner_product(psi[b], psi[b], g));
      EXPECT_LE(std::abs(pt_inner_product(psi[a], psi[b], g)) / std::sqrt(na * nb), 1e-8);
    }
  }
  EXPECT_THROW(pt_inner_product(psi[0], psi[0], Grid(2.0, 101)), BoundaryLeak);
}

TEST(Diagnostics, SamplingReportsPoles) {
  EXPECT_THROW(sample(Expression{1.0} / X, Grid(1.0, 11)), PoleOnGrid);
  EXPECT_EQ(sample_interior(X, Grid(1.0, 11)).size(), 9);
}

TEST(Matching, AssignsLevelsAndGuardsDeletions) {
  const std::vector<Complex> numeric{Complex{0.5001, 1e-6}, 4.4999, 12.5002, 16.4, 20.5};
  const SpectralReport ok = match_spectrum(numeric, {12.5, 0.5, 4.5}, {8.5});
  EXPECT_TRUE(ok.passed());
  ASSERT_EQ(ok.matched.size(), 3u);
  EXPECT_NEAR(ok.matched[0].level.real(), 0.5, 0.0);
  EXPECT_NEAR(ok.max_gap(), 2e-4, 1e-9);
  EXPECT_NEAR(ok.max_imag(), 1e-6, 1e-12);
  EXPECT_NEAR(ok.min_deleted_distance(), 4.0001, 1e-9);

  const SpectralReport leaked = match_spectrum({0.5, 4.5, 8.505}, {0.5, 4.5}, {8.5});
  EXPECT_FALSE(leaked.passed());
  EXPECT_FALSE(leaked.missing[0].ok);

  const SpectralReport complex_pair = match_spectrum({Complex{0.5, 1e-2}}, {0.5}, {});
  EXPECT_FALSE(complex_pair.passed());

  const SpectralReport off = match_spectrum({0.6}, {0.5}, {});
  EXPECT_FALSE(off.passed());

  const SpectralReport missing = match_spectrum({}, {0.5}, {});
  EXPECT_FALSE(missing.passed());
}

TEST(Refinement, ObservedOrderFollowsStencil) {
  const std::vector<Complex> levels{1.0, 3.0, 5.0};
  const RefinementStudy s2 = refinement_study(harmonic(), Grid(8.0, 161), 2, levels, 2);
  ASSERT_EQ(s2.grids.size(), 3u);
  EXPECT_NEAR(s2.min_order(), 2.0, 0.05);
  const RefinementStudy s4 = refinement_study(harmonic(), Grid(8.0, 161), 4, levels, 2);
  EXPECT_NEAR(s4.min_order(), 4.0, 0.1);
  for (const auto& row : s4.errors) EXPECT_LT(row.back(), row.front());
}
