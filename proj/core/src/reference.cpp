#include "ptcrum/reference.hpp"

namespace ptcrum::reference {

namespace {

double qa_of(const OscillatorModel& m) { return m.quasi_parity() * m.alpha(); }

Expression centrifugal(const Expression& y, double a, double b) {
  return Expression{a * b} * pow(y, -2.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// oscillator (1, 2)

Expression osc12_g(const OscillatorModel& m) {
  const double qa = qa_of(m);
  const Expression y2 = pow(m.shifted_coordinate(), 2.0);
  return Expression{(1.0 - qa) * (2.0 - qa)} - Expression{2.0 * (1.0 - qa)} * y2 + pow(y2, 2.0);
}

Expression osc12_wronskian(const OscillatorModel& m) {
  const Expression y = m.shifted_coordinate();
  return exp(-pow(y, 2.0)) * pow(y, 2.0 - 2.0 * qa_of(m)) * osc12_g(m);
}

Expression osc12_potential(const OscillatorModel& m) {
  const double qa = qa_of(m);
  const Expression y = m.shifted_coordinate();
  const Expression g = osc12_g(m);
  const Expression ratio1 = differentiate(g) / g;
  const Expression ratio2 = differentiate(g, 2) / g;
  return pow(y, 2.0) + centrifugal(y, -qa + 1.5, -qa + 2.5) - Expression{2.0} * ratio2 +
         Expression{2.0} * ratio1 * ratio1 + Expression{4.0};
}

Expression osc12_intermediate_published(const OscillatorModel& m) {
  const double qa = qa_of(m);
  const Expression y = m.shifted_coordinate();
  const Expression d = Expression{1.0 - qa} - pow(y, 2.0);
  return pow(y, 2.0) + centrifugal(y, -qa + 0.5, -qa + 1.5) + Expression{12.0} / d -
         Expression{8.0 * (1.0 - qa)} / pow(d, 2.0) + Expression{4.0};
}

Expression osc12_intermediate(const OscillatorModel& m) {
  const double qa = qa_of(m);
  const Expression y = m.shifted_coordinate();
  const Expression d = Expression{1.0 - qa} - pow(y, 2.0);
  return pow(y, 2.0) + centrifugal(y, -qa + 0.5, -qa + 1.5) - Expression{4.0} / d +
         Expression{8.0 * (1.0 - qa)} / pow(d, 2.0) + Expression{2.0};
}

Expression osc12_intermediate_ground(const OscillatorModel& m) {
  const double qa = qa_of(m);
  const Expression y = m.shifted_coordinate();
  const Expression d = Expression{1.0 - qa} - pow(y, 2.0);
  return exp(Expression{-0.5} * pow(y, 2.0)) * pow(y, -qa + 1.5) / d;
}

Expression osc12_a_sharp(const OscillatorModel& m, const Expression& f) {
  const double qa = qa_of(m);
  const Expression y = m.shifted_coordinate();
  const Expression g = osc12_g(m);
  const Expression gp = differentiate(g) / g;
  const Expression gpp = differentiate(g, 2) / g;
  const Expression d = Expression{1.0 - qa} - pow(y, 2.0);
  const Expression first = Expression{-2.0} * y + Expression{2.0 * (1.0 - qa)} / y + gp;
  const Expression bracket = -y + Expression{-qa + 0.5} / y - Expression{2.0} * y / d;
  const Expression zeroth = pow(y, 2.0) + centrifugal(y, -qa + 1.5, -qa - 0.5) +
                            Expression{2.0 * qa - 3.0} + bracket * gp + gpp - gp * gp;
  return differentiate(f, 2) + first * differentiate(f) + zeroth * f;
}

std::array<double, 3> osc12_mother_published(double qa) {
  return {1.0, -4.0 * (4.0 - qa), (6.0 - 2.0 * qa) * (10.0 - 2.0 * qa)};
}

// ---------------------------------------------------------------------------
// oscillator (0, 2)

Expression osc02_wronskian(const OscillatorModel& m) {
  const double qa = qa_of(m);
  const Expression y = m.shifted_coordinate();
  return exp(-pow(y, 2.0)) * pow(y, 2.0 - 2.0 * qa) *
         (pow(y, 2.0) / Expression{2.0 - qa} - Expression{1.0});
}

Expression osc02_potential(const OscillatorModel& m) {
  const double qa = qa_of(m);
  const double sigma = -qa + 2.5;
  const Expression y = m.shifted_coordinate();
  const Expression d = pow(y, 2.0) - Expression{2.0 - qa};
  return pow(y, 2.0) + centrifugal(y, sigma, sigma - 1.0) + Expression{4.0} / d +
         Expression{8.0 * (2.0 - qa)} / pow(d, 2.0) + Expression{4.0};
}

Expression osc02_intermediate(const OscillatorModel& m) {
  const double qa = qa_of(m);
  const Expression y = m.shifted_coordinate();
  return pow(y, 2.0) + centrifugal(y, -qa + 0.5, -qa + 1.5) + Expression{2.0};
}

Expression osc02_intermediate_ground(const OscillatorModel& m) {
  const Expression y = m.shifted_coordinate();
  return exp(Expression{-0.5} * pow(y, 2.0)) * pow(y, -qa_of(m) + 1.5);
}

std::array<double, 3> osc02_mother_published(double qa) {
  return {1.0, -4.0 * (3.0 - qa), (2.0 - qa) * (10.0 - 2.0 * qa)};
}

std::array<double, 3> osc02_mother(double qa) {
  return {1.0, -4.0 * (3.0 - qa), (2.0 - 2.0 * qa) * (10.0 - 2.0 * qa)};
}

// ---------------------------------------------------------------------------
// Scarf II (0, 2)

ScarfPartnerParameters scarf02_parameters(const ScarfModel& m) {
  const double p = m.p();
  const double q = m.q();
  return {m.lambda() - 4.0 * p - 4.0 * q + 2.0, m.mu() - 4.0 * p + 4.0 * q, p - q, -p - q + 1.5};
}

Expression scarf02_wronskian(const ScarfModel& m) {
  const double p = m.p();
  const double q = m.q();
  const Expression x = Expression::variable();
  const Expression sh = sinh(x);
  const Expression is = Expression{kI} * sh;
  return pow(Expression{1.0} - is, -2.0 * p) * pow(Expression{1.0} + is, -2.0 * q) * cosh(x) *
         (Expression{Complex{0.0, -(p - q)}} + Expression{p + q - 1.5} * sh);
}

Expression scarf02_potential(const ScarfModel& m) {
  const auto k = scarf02_parameters(m);
  const Expression x = Expression::variable();
  const Expression se = sech(x);
  const Expression th = tanh(x);
  const Expression denominator = Expression{k.rho} * se - Expression{Complex{0.0, k.sigma}} * th;
  const Expression numerator = Expression{k.sigma * k.sigma} * se * se -
                               Expression{Complex{0.0, k.rho * k.sigma}} * se * th;
  return Expression{-k.lambda} * se * se - Expression{Complex{0.0, k.mu}} * se * th -
         Expression{2.0} * numerator / pow(denominator, 2.0);
}

Expression scarf02_intermediate(const ScarfModel& m) {
  const double v1 = m.lambda() - 2.0 * (m.p() + m.q());
  const double v2 = m.mu() - 2.0 * (m.p() - m.q());
  const Expression x = Expression::variable();
  const Expression se = sech(x);
  return Expression{-v1} * se * se - Expression{Complex{0.0, v2}} * se * tanh(x);
}

std::array<double, 3> scarf02_mother_published(const ScarfModel& m) {
  const double s = m.p() + m.q();
  return {1.0, 2.0 - 2.0 * s, s * (s - 2.0)};
}

}  // namespace ptcrum::reference
