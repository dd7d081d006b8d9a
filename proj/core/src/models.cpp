#include "ptcrum/models.hpp"

#include <cmath>
#include <string>

#include "ptcrum/errors.hpp"

namespace ptcrum {

// ---------------------------------------------------------------------------
// polynomials

Complex Polynomial::operator()(Complex t) const {
  Complex acc{};
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Expression Polynomial::compose(const Expression& argument) const {
  if (coefficients.empty()) return Expression{};
  Expression acc{coefficients.back()};
  for (int k = degree() - 1; k >= 0; --k) acc = Expression{coefficients[k]} + argument * acc;
  return acc;
}

Polynomial laguerre(int n, Complex a) {
  if (n < 0) throw InvalidParameter("Laguerre degree must be non-negative");
  // (k+1) L_{k+1} = (2k + 1 + a - t) L_k - (k + a) L_{k-1}
  std::vector<Complex> prev{1.0};
  if (n == 0) return {prev};
  std::vector<Complex> cur{1.0 + a, -1.0};
  for (int k = 1; k < n; ++k) {
    std::vector<Complex> next(k + 2);
    const double kk = k;
    for (int j = 0; j <= k; ++j) {
      next[j] += (2.0 * kk + 1.0 + a) * cur[j];
      next[j + 1] -= cur[j];
    }
    for (int j = 0; j < k; ++j) next[j] -= (kk + a) * prev[j];
    for (auto& c : next) c /= kk + 1.0;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {cur};
}

Polynomial jacobi(int n, Complex a, Complex b) {
  if (n < 0) throw InvalidParameter("Jacobi degree must be non-negative");
  const Complex ap1 = a + 1.0;
  if (ap1.imag() == 0.0 && ap1.real() <= 0.0 && std::floor(ap1.real()) == ap1.real()) {
    throw ParameterPole("Jacobi parameter a + 1 is a non-positive integer");
  }
  // (a+1)_n / n!
  Complex prefactor{1.0};
  for (int k = 0; k < n; ++k) prefactor *= (ap1 + static_cast<double>(k)) / static_cast<double>(k + 1);
  std::vector<Complex> coeffs(n + 1);
  Complex term{1.0};  // (-n)_k (n+a+b+1)_k / ((a+1)_k k!)
  const Complex c = static_cast<double>(n) + a + b + 1.0;
  for (int k = 0; k <= n; ++k) {
    coeffs[k] = prefactor * term;
    const double kk = k;
    term *= (kk - n) * (c + kk) / ((ap1 + kk) * (kk + 1.0));
  }
  return {coeffs};
}

// ---------------------------------------------------------------------------
// SolvableModel

bool SolvableModel::has_level(int n) const {
  if (n < 0) return false;
  const auto count = level_count();
  return !count || n < *count;
}

Eigenstate SolvableModel::eigenstate(int n) const {
  return Eigenstate{n, energy(n), wavefunction(n)};
}

std::vector<Complex> SolvableModel::energies(int count) const {
  std::vector<Complex> out;
  for (int n = 0; n < count && has_level(n); ++n) out.push_back(energy(n));
  return out;
}

// ---------------------------------------------------------------------------
// oscillator

OscillatorModel::OscillatorModel(double alpha, double epsilon, int quasi_parity)
    : alpha_(alpha), epsilon_(epsilon), quasi_parity_(quasi_parity) {
  if (!(epsilon > 0.0)) throw InvalidShift("oscillator shift eps must be positive");
  if (quasi_parity != 1 && quasi_parity != -1) {
    throw InvalidParameter("quasi-parity must be +1 or -1");
  }
  if (!std::isfinite(alpha)) throw InvalidParameter("alpha must be finite");
}

Expression OscillatorModel::shifted_coordinate() const {
  return Expression::variable() + Expression{Complex{0.0, -epsilon_}};
}

std::shared_ptr<const OscillatorModel> OscillatorModel::companion_tower() const {
  return std::make_shared<const OscillatorModel>(alpha_, epsilon_, -quasi_parity_);
}

Expression OscillatorModel::potential() const {
  const Expression y = shifted_coordinate();
  return pow(y, 2.0) + Expression{alpha_ * alpha_ - 0.25} * pow(y, -2.0);
}

Complex OscillatorModel::energy(int n) const {
  if (n < 0) throw IndexOutOfRange("negative level index");
  return 4.0 * n - 2.0 * quasi_parity_ * alpha_ + 2.0;
}

Expression OscillatorModel::wavefunction(int n) const {
  if (n < 0) throw IndexOutOfRange("negative level index");
  const double qa = quasi_parity_ * alpha_;
  const Expression y = shifted_coordinate();
  const Expression y2 = pow(y, 2.0);
  return exp(Expression{-0.5} * y2) * pow(y, -qa + 0.5) * laguerre(n, -qa).compose(y2);
}

std::vector<std::pair<std::string, double>> OscillatorModel::parameters() const {
  return {{"alpha", alpha_}, {"eps", epsilon_}, {"qp", static_cast<double>(quasi_parity_)}};
}

std::shared_ptr<const OscillatorModel> oscillator_model(double alpha, double epsilon,
                                                        int quasi_parity) {
  return std::make_shared<const OscillatorModel>(alpha, epsilon, quasi_parity);
}

// ---------------------------------------------------------------------------
// Scarf II

int ScarfModel::count_bound_levels(double p, double q) {
  // normalizable iff n < p + q
  const double limit = p + q;
  if (limit <= 0.0) return 0;
  int count = static_cast<int>(std::ceil(limit));
  return count;
}

ScarfModel::ScarfModel(double lambda, double mu, ScarfTower tower, bool normalized)
    : lambda_(lambda), mu_(mu), tower_(tower), normalized_(normalized) {
  if (!(lambda > 0.0)) throw InvalidParameter("Scarf lambda must be positive");
  if (mu == 0.0 || !std::isfinite(mu)) throw InvalidParameter("Scarf mu must be non-zero");
  if (std::abs(mu) > lambda + 0.25) {
    throw BrokenPTRegime("|mu| = " + std::to_string(std::abs(mu)) + " exceeds lambda + 1/4 = " +
                         std::to_string(lambda + 0.25) + ": PT symmetry is spontaneously broken");
  }
  t_ = std::sqrt(0.25 + lambda + mu);
  s_ = std::sqrt(0.25 + lambda - mu);
  p_ = -0.25 + 0.5 * t_;
  q_ = tower == ScarfTower::Plus ? -0.25 + 0.5 * s_ : -0.25 - 0.5 * s_;
  bound_count_ = count_bound_levels(p_, q_);
  if (bound_count_ == 0) throw NoBoundStates("selected Scarf tower has no bound states");
}

Expression ScarfModel::z() const {
  return Expression{0.5} + Expression{Complex{0.0, -0.5}} * sinh(Expression::variable());
}

Polynomial ScarfModel::jacobi_factor(int n) const {
  return jacobi(n, -2.0 * p_ - 0.5, -2.0 * q_ - 0.5);
}

Expression ScarfModel::potential() const {
  const Expression x = Expression::variable();
  return Expression{-lambda_} * pow(cosh(x), -2.0) +
         Expression{Complex{0.0, -mu_}} * sinh(x) * pow(cosh(x), -2.0);
}

Complex ScarfModel::energy(int n) const {
  if (!has_level(n)) throw IndexOutOfRange("Scarf level " + std::to_string(n) + " is not bound");
  const double d = n - p_ - q_;
  return -d * d;
}

Expression ScarfModel::wavefunction(int n) const {
  if (!has_level(n)) throw IndexOutOfRange("Scarf level " + std::to_string(n) + " is not bound");
  const Expression zz = z();
  const Expression zc = Expression{0.5} + Expression{Complex{0.0, 0.5}} * sinh(Expression::variable());
  Expression psi = pow(zz, -p_) * pow(zc, -q_) * jacobi_factor(n).compose(zz);
  if (normalized_) {
    // Gamma(n - 2p + 1/2) / (n! Gamma(1/2 - 2p)) as a Pochhammer ratio
    double norm = 1.0;
    for (int k = 0; k < n; ++k) norm *= (0.5 - 2.0 * p_ + k) / (k + 1.0);
    psi = Expression{norm} * psi;
  }
  return psi;
}

std::vector<std::pair<std::string, double>> ScarfModel::parameters() const {
  return {{"lambda", lambda_}, {"mu", mu_}, {"tower", tower_ == ScarfTower::Plus ? 1.0 : -1.0},
          {"p", p_}, {"q", q_}, {"s", s_}, {"t", t_}, {"bound_count", static_cast<double>(bound_count_)}};
}

std::shared_ptr<const ScarfModel> scarf_model(double lambda, double mu,
                                              std::optional<ScarfTower> tower, bool normalized) {
  if (tower) return std::make_shared<const ScarfModel>(lambda, mu, *tower, normalized);
  // validate parameters once through the Plus tower, then pick the larger one
  const ScarfModel plus_probe{lambda, mu, ScarfTower::Plus, normalized};
  const double minus_q = -0.25 - 0.5 * plus_probe.s();
  const int minus_count = ScarfModel::count_bound_levels(plus_probe.p(), minus_q);
  if (minus_count > plus_probe.bound_count()) {
    return std::make_shared<const ScarfModel>(lambda, mu, ScarfTower::Minus, normalized);
  }
  return std::make_shared<const ScarfModel>(plus_probe);
}

}  // namespace ptcrum
