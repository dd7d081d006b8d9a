#pragma once

// Closed forms from the literature for the two worked oscillator deletions
// and the Scarf II (0, 2) deletion. They are independent of the Wronskian
// machinery and serve as regression targets. Functions whose name ends in
// `_published` reproduce the expression exactly as it is printed, including
// known misprints; the unsuffixed variants are the corrected forms.

#include <array>

#include "ptcrum/expr.hpp"
#include "ptcrum/models.hpp"

namespace ptcrum::reference {

// --- oscillator, deletion of levels (1, 2) ---

/// g = (1 - qa)(2 - qa) - 2 (1 - qa) y^2 + y^4, y = x - i eps.
Expression osc12_g(const OscillatorModel& m);
/// e^{-y^2} y^{2 - 2qa} g (Wronskian up to a constant).
Expression osc12_wronskian(const OscillatorModel& m);
Expression osc12_potential(const OscillatorModel& m);
/// Intermediate potential as published: +12/d - 8(1-qa)/d^2 + 4 with
/// d = 1 - qa - y^2. Does not equal V - 2 (ln psi_1)''.
Expression osc12_intermediate_published(const OscillatorModel& m);
/// Corrected intermediate potential: -4/d + 8(1-qa)/d^2 + 2, with the same
/// centrifugal term (-qa + 1/2)(-qa + 3/2)/y^2.
Expression osc12_intermediate(const OscillatorModel& m);
/// Ground state y^{-qa + 3/2} e^{-y^2/2} / d of the intermediate Hamiltonian.
Expression osc12_intermediate_ground(const OscillatorModel& m);
/// Explicit second-order pseudo-adjoint A^# applied to f.
Expression osc12_a_sharp(const OscillatorModel& m, const Expression& f);
/// Printed mother polynomial coefficients {1, -4(4 - qa), (6 - 2qa)(10 - 2qa)}.
std::array<double, 3> osc12_mother_published(double qa);

// --- oscillator, deletion of levels (0, 2) ---

/// e^{-y^2} y^{2 - 2qa} (y^2 / (2 - qa) - 1).
Expression osc02_wronskian(const OscillatorModel& m);
/// sigma = -qa + 5/2 centrifugal term plus 4/D + 8(2 - qa)/D^2 + 4 with
/// D = y^2 - (2 - qa).
Expression osc02_potential(const OscillatorModel& m);
/// y^2 + (-qa + 1/2)(-qa + 3/2)/y^2 + 2.
Expression osc02_intermediate(const OscillatorModel& m);
/// e^{-y^2/2} y^{-qa + 3/2}, energy 6 - 2qa.
Expression osc02_intermediate_ground(const OscillatorModel& m);
/// Printed coefficients {1, -4(3 - qa), (2 - qa)(10 - 2qa)}.
std::array<double, 3> osc02_mother_published(double qa);
/// Coefficients from the deleted energies: {1, -4(3 - qa), (2 - 2qa)(10 - 2qa)}.
std::array<double, 3> osc02_mother(double qa);

// --- Scarf II, deletion of levels (0, 2) ---

struct ScarfPartnerParameters {
  double lambda;  // lambda - 4p - 4q + 2
  double mu;      // mu - 4p + 4q
  double rho;     // p - q
  double sigma;   // -p - q + 3/2
};

ScarfPartnerParameters scarf02_parameters(const ScarfModel& m);
/// (1 - i sinh x)^{-2p} (1 + i sinh x)^{-2q} cosh x (-i (p - q) + (p + q - 3/2) sinh x).
Expression scarf02_wronskian(const ScarfModel& m);
Expression scarf02_potential(const ScarfModel& m);
/// -(lambda - 2(p+q)) sech^2 - i (mu - 2(p-q)) sech tanh.
Expression scarf02_intermediate(const ScarfModel& m);
/// Printed coefficients {1, 2 - 2p - 2q, (p+q)(p+q-2)}.
std::array<double, 3> scarf02_mother_published(const ScarfModel& m);

}  // namespace ptcrum::reference
