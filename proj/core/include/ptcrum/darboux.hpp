#pragma once

#include <optional>
#include <vector>

#include "ptcrum/expr.hpp"
#include "ptcrum/grid.hpp"
#include "ptcrum/models.hpp"

namespace ptcrum {

/// Relative nodelessness floor for Wronskians on a verification grid.
inline constexpr double kNodeTolerance = 1e-10;

/// Eigenstates of a source model chosen as transformation functions.
/// Indices are sorted on construction; duplicates and unbound levels are
/// rejected. The empty set is the identity transformation.
class TransformationSet {
 public:
  TransformationSet(ModelPtr model, std::vector<int> indices);

  const ModelPtr& model() const { return model_; }
  const SolvableModel& source() const { return *model_; }
  const std::vector<int>& indices() const { return indices_; }
  const std::vector<Expression>& functions() const { return functions_; }
  const std::vector<Complex>& energies() const { return energies_; }
  int order() const { return static_cast<int>(indices_.size()); }
  bool contains(int n) const;

 private:
  ModelPtr model_;
  std::vector<int> indices_;
  std::vector<Expression> functions_;
  std::vector<Complex> energies_;
};

struct WronskianValue {
  Complex w;
  Complex dw;
  Complex d2w;
};

/// W(f_1, ..., f_N) with its first two derivatives. W' and W'' are sums of
/// determinants in which one jet row is differentiated; the only surviving
/// terms are those whose derivative orders stay distinct.
class WronskianEvaluator {
 public:
  explicit WronskianEvaluator(std::vector<Expression> functions);

  int order() const { return static_cast<int>(functions_.size()); }
  const std::vector<Expression>& functions() const { return functions_; }

  WronskianValue operator()(double x) const;
  Complex value(double x) const { return (*this)(x).w; }

  /// |W(x)| divided by the Hadamard bound prod_j |(f_j, f_j', ..., f_j^(N))|.
  /// Scale-free and close to zero only near a node of W.
  double node_measure(double x) const;
  /// Minimum of node_measure over the grid, with the node where it occurs.
  std::pair<double, double> min_node_measure(const Grid& grid) const;

  /// Symbolic W, W', W'' (cofactor expansion over the jet expressions).
  Expression expression() const { return symbolic_[0]; }
  Expression derivative_expression() const { return symbolic_[1]; }
  Expression second_derivative_expression() const { return symbolic_[2]; }

 private:
  std::vector<Expression> functions_;
  std::vector<JetEvaluator> jets_;
  // each entry: list of row-order vectors whose determinants are summed
  std::vector<std::vector<std::vector<int>>> terms_;
  std::vector<Expression> symbolic_;
};

WronskianEvaluator wronskian(std::vector<Expression> functions);

/// V - 2 (ln W)'' written as V - 2 (W''/W - (W'/W)^2).
Expression log_derivative_shift(const Expression& potential, const WronskianEvaluator& w);

struct SurvivingLevel {
  int index = 0;
  Complex energy;
};

struct TransformedModel {
  ModelPtr source;
  TransformationSet transformation;
  Expression potential;
  Expression wronskian;
  std::vector<SurvivingLevel> surviving_levels;  // first `levels` source levels minus deleted ones
  double node_measure = 1.0;
};

/// Crum transform on the source's default grid (or `grid`). Throws
/// SingularTransform when the Wronskian has a node on the grid.
TransformedModel crum_potential(const TransformationSet& t, int levels = 10,
                                std::optional<Grid> grid = std::nullopt);

/// W(u_1..u_N, psi_n) / W(u_1..u_N). Throws AnnihilatedState when n is a
/// transformation index, IndexOutOfRange when n is not a bound level.
Expression transform_eigenstate(const TransformationSet& t, int n);

/// One Darboux step L = -d/dx + (ln u)'.
struct FirstOrderTransform {
  Expression seed;
  Expression superpotential;
  Expression source_potential;
  Expression target_potential;
};

struct ChainOperator {
  Expression source_potential;
  std::vector<FirstOrderTransform> factors;  // L_1 first
  std::vector<Complex> energies;

  int order() const { return static_cast<int>(factors.size()); }
  Expression final_potential() const;
};

struct Chain {
  ChainOperator op;
  /// V_1 .. V_{N-1}.
  std::vector<Expression> intermediates;
  /// Node measures of W(u_1..u_k), k = 1..N.
  std::vector<double> node_measures;
};

/// Factorizes the Crum transform into first-order steps. Throws
/// SingularIntermediate if W(u_1..u_k) has a node for some k < N and
/// SingularTransform if the full Wronskian does.
Chain first_order_chain(const TransformationSet& t, std::optional<Grid> grid = std::nullopt);

/// L_N ... L_1 f with each factor acting as -f' + w f.
Expression apply_chain(const ChainOperator& c, const Expression& f);

/// Formal transpose L_1^T ... L_N^T f with L^T f = f' + w f, so that
/// A^T A = prod (h_0 - alpha_k). For PT-symmetric seeds the parity
/// pseudo-adjoint is A^# = (-1)^N A^T.
Expression apply_chain_transpose(const ChainOperator& c, const Expression& f);

}  // namespace ptcrum
