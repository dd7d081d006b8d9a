#pragma once

// Closed-form solvable PT-symmetric baselines: the shifted radial-type
// oscillator and the Scarf II well. Both expose their potential, eigenstates
// and energies as Expressions so the Darboux machinery can consume them.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptcrum/expr.hpp"
#include "ptcrum/grid.hpp"

namespace ptcrum {

/// Polynomial with ascending coefficients c0 + c1 t + c2 t^2 + ...
struct Polynomial {
  std::vector<Complex> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  Complex operator()(Complex t) const;
  /// Horner form with `argument` substituted for t.
  Expression compose(const Expression& argument) const;
};

/// Generalized Laguerre L_n^a from the three-term recurrence.
Polynomial laguerre(int n, Complex a);

/// Jacobi P_n^{a,b} written as a polynomial in z = (1 - w)/2, i.e. the
/// terminating 2F1(-n, n + a + b + 1; a + 1; z) with prefactor (a+1)_n / n!.
/// Throws ParameterPole when a + 1 is a non-positive integer.
Polynomial jacobi(int n, Complex a, Complex b);

struct Eigenstate {
  int index = 0;
  Complex energy;
  Expression wavefunction;
};

class SolvableModel {
 public:
  virtual ~SolvableModel() = default;

  virtual std::string name() const = 0;
  virtual Expression potential() const = 0;
  virtual Complex energy(int n) const = 0;
  virtual Expression wavefunction(int n) const = 0;
  /// Number of bound levels; nullopt for an unbounded ladder.
  virtual std::optional<int> level_count() const = 0;
  /// Verification grid on which every in-scope eigenfunction has decayed.
  virtual Grid default_grid() const = 0;
  virtual std::vector<std::pair<std::string, double>> parameters() const = 0;

  bool has_level(int n) const;
  Eigenstate eigenstate(int n) const;
  /// First `count` energies (fewer if the model has fewer bound levels).
  std::vector<Complex> energies(int count) const;
};

using ModelPtr = std::shared_ptr<const SolvableModel>;

/// V = (x - i eps)^2 + (alpha^2 - 1/4) / (x - i eps)^2 with the quasi-parity
/// tower q = +-1: E_n = 4n - 2 q alpha + 2.
class OscillatorModel final : public SolvableModel {
 public:
  OscillatorModel(double alpha, double epsilon, int quasi_parity);

  double alpha() const { return alpha_; }
  double epsilon() const { return epsilon_; }
  int quasi_parity() const { return quasi_parity_; }

  /// y = x - i eps. Its imaginary part is -eps on the whole real line.
  Expression shifted_coordinate() const;
  /// Same potential, opposite quasi-parity tower.
  std::shared_ptr<const OscillatorModel> companion_tower() const;

  std::string name() const override { return "pt-oscillator"; }
  Expression potential() const override;
  Complex energy(int n) const override;
  Expression wavefunction(int n) const override;
  std::optional<int> level_count() const override { return std::nullopt; }
  Grid default_grid() const override { return Grid{8.0, 1601}; }
  std::vector<std::pair<std::string, double>> parameters() const override;

 private:
  double alpha_;
  double epsilon_;
  int quasi_parity_;
};

enum class ScarfTower { Plus, Minus };

/// V = -lambda sech^2 x - i mu sech x tanh x in the unbroken regime
/// |mu| <= lambda + 1/4, with E_n = -(n - p - q)^2.
class ScarfModel final : public SolvableModel {
 public:
  ScarfModel(double lambda, double mu, ScarfTower tower, bool normalized = true);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  ScarfTower tower() const { return tower_; }
  double p() const { return p_; }
  double q() const { return q_; }
  double s() const { return s_; }
  double t() const { return t_; }
  int bound_count() const { return bound_count_; }
  bool normalized() const { return normalized_; }

  /// z = (1 - i sinh x) / 2; Re z = 1/2 on the real line.
  Expression z() const;
  Polynomial jacobi_factor(int n) const;

  std::string name() const override { return "scarf2"; }
  Expression potential() const override;
  Complex energy(int n) const override;
  Expression wavefunction(int n) const override;
  std::optional<int> level_count() const override { return bound_count_; }
  Grid default_grid() const override { return Grid{18.0, 2401}; }
  std::vector<std::pair<std::string, double>> parameters() const override;

  static int count_bound_levels(double p, double q);

 private:
  double lambda_;
  double mu_;
  ScarfTower tower_;
  bool normalized_;
  double p_ = 0.0;
  double q_ = 0.0;
  double s_ = 0.0;
  double t_ = 0.0;
  int bound_count_ = 0;
};

/// Throws InvalidShift for eps <= 0 and InvalidParameter for q not +-1.
std::shared_ptr<const OscillatorModel> oscillator_model(double alpha, double epsilon,
                                                        int quasi_parity);

/// Throws InvalidParameter, BrokenPTRegime or NoBoundStates. Without an
/// explicit tower the one with more bound levels is chosen (Plus on ties).
std::shared_ptr<const ScarfModel> scarf_model(double lambda, double mu,
                                              std::optional<ScarfTower> tower = std::nullopt,
                                              bool normalized = true);

}  // namespace ptcrum
