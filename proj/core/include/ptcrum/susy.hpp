#pragma once

// Matrix-level checks of the pseudo-supersymmetric algebra generated by a
// Darboux chain: intertwining, the polynomial identity A^# A = P(h_0), and
// nilpotency of the 2x2 block supercharges.
//
// Block convention: Q = [[0, A], [0, 0]] and H = diag(h_N, h_0), so that
// [Q, H] = 0 restates A h_0 = h_N A and {Q, Q^#} = diag(A A^#, A^# A).

#include <vector>

#include "ptcrum/darboux.hpp"
#include "ptcrum/spectral.hpp"

namespace ptcrum {

inline constexpr int kDefaultTrim = 10;

struct DiscreteOperator {
  Grid grid;
  SparseMatrix matrix;
};

/// L_N ... L_1 with each factor -D + diag(w_k), D the centered first
/// derivative of the given stencil order.
DiscreteOperator discretize_chain(const ChainOperator& chain, const Grid& grid, int stencil_order = 4);

/// P M^dagger P.
SparseMatrix pseudo_adjoint(const SparseMatrix& m);
DiscreteOperator pseudo_adjoint(const DiscreteOperator& op);

/// |A H_0 - H_N A|_max on the block [trim, n - trim)^2, divided by
/// |A|_max |H_0|_max.
double intertwining_residual(const DiscreteOperator& a, const DiscreteHamiltonian& h0,
                             const DiscreteHamiltonian& hn, int trim = kDefaultTrim);

/// Monic polynomial with the factorization energies as roots; coefficients
/// in descending powers.
struct MotherPolynomial {
  std::vector<Complex> roots;
  std::vector<Complex> coefficients;

  Complex operator()(Complex e) const;
};

MotherPolynomial mother_polynomial(std::vector<Complex> roots);
MotherPolynomial mother_polynomial(const TransformationSet& t);

/// Sign s with A^# A = s prod (h_0 - alpha_k) for the parity pseudo-adjoint
/// of a PT-symmetric chain: s = (-1)^N.
int pseudo_adjoint_sign(int order);

struct AlgebraResult {
  Complex factor;         // s prod (E_n - alpha_k)
  double residual = 0.0;  // |A^# A psi - factor psi| / |psi|, interior
  double image = 0.0;     // |A psi| / |psi|, interior
};

/// Discretized objects of one transformation, built once and reused by the
/// individual checks.
class PseudoSusy {
 public:
  PseudoSusy(const TransformationSet& t, const Grid& grid, int stencil_order = 4,
             int trim = kDefaultTrim);

  const TransformationSet& transformation() const { return t_; }
  const Chain& chain() const { return chain_; }
  const Grid& grid() const { return grid_; }
  int trim() const { return trim_; }
  const DiscreteOperator& a() const { return a_; }
  const DiscreteOperator& a_sharp() const { return a_sharp_; }
  const DiscreteHamiltonian& h0() const { return h0_; }
  const DiscreteHamiltonian& hn() const { return hn_; }
  const MotherPolynomial& polynomial() const { return polynomial_; }
  int sign() const { return pseudo_adjoint_sign(t_.order()); }

  /// A h_0 = h_N A.
  double intertwining() const;
  /// A^# h_N = h_0 A^#.
  double adjoint_intertwining() const;
  /// A^# A psi_n = s P(E_n) psi_n on a source eigenstate.
  AlgebraResult algebra(int n) const;
  /// A A^# psi~_n = s P(E_n) psi~_n on a transformed eigenstate.
  AlgebraResult partner_algebra(int n) const;
  /// |A psi - (A psi)_symbolic| / |psi| on the interior.
  double chain_consistency(int n) const;

  /// |Q Q|_max and |Q^# Q^#|_max.
  double nilpotency() const;
  double nilpotency_adjoint() const;
  /// Trimmed |[Q, H]|_max and |[Q^#, H]|_max, normalized like intertwining.
  double commutator() const;
  double commutator_adjoint() const;
  /// Off-diagonal blocks of {Q, Q^#} (structurally zero) and the deviation
  /// of its diagonal blocks from A A^# and A^# A.
  double anticommutator_block_error() const;

 private:
  double interior_norm(const Vector& v) const;

  TransformationSet t_;
  Grid grid_;
  int stencil_order_;
  int trim_;
  Chain chain_;
  DiscreteOperator a_;
  DiscreteOperator a_sharp_;
  DiscreteHamiltonian h0_;
  DiscreteHamiltonian hn_;
  MotherPolynomial polynomial_;
};

/// |Q Q|_max for Q = [[0, A], [0, 0]].
double nilpotency_check(const DiscreteOperator& a);

}  // namespace ptcrum
