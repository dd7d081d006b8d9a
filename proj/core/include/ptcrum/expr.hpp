#pragma once

// Closed-grammar expressions for complex-valued functions of one real
// coordinate x, with exact symbolic differentiation and the PT map.
//
// Expressions are immutable DAGs of shared nodes. Builders apply only cheap
// local rewrites (constant folding, dropping zero summands and unit factors,
// flattening); two expressions are never compared structurally, only by
// pointwise evaluation.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ptcrum {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// |denominator| at or below this fraction of |numerator| counts as a pole.
inline constexpr double kPoleTolerance = 1e-12;

class Expression {
 public:
  enum class Kind : std::uint8_t {
    Constant,
    Variable,
    Sum,
    Product,
    Quotient,
    Power,
    Exp,
    Sinh,
    Cosh,
  };

  struct Node;

  Expression();  // the constant 0
  Expression(Complex c);  // NOLINT(google-explicit-constructor)
  Expression(double c);   // NOLINT(google-explicit-constructor)

  static Expression variable();
  static Expression constant(Complex c);
  static Expression sum(std::vector<Expression> terms);
  static Expression product(std::vector<Expression> factors);
  static Expression quotient(Expression numerator, Expression denominator);
  /// Principal-branch power base^exponent.
  static Expression power(Expression base, Complex exponent);
  static Expression exp(Expression argument);
  static Expression sinh(Expression argument);
  static Expression cosh(Expression argument);

  Kind kind() const;
  /// Constant value, or the exponent of a Power node.
  Complex value() const;
  std::span<const Expression> children() const;

  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_zero() const;
  bool is_one() const;

  /// Node identity; stable for the lifetime of the expression.
  const Node* id() const { return node_.get(); }

  std::string to_string() const;

 private:
  explicit Expression(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);
Expression operator-(const Expression& a);

Expression pow(const Expression& base, Complex exponent);
Expression exp(const Expression& e);
Expression sinh(const Expression& e);
Expression cosh(const Expression& e);
Expression sech(const Expression& e);
Expression tanh(const Expression& e);

/// Exact value at x. Throws PoleAtPoint or BranchViolation.
Complex evaluate(const Expression& e, double x);

Expression differentiate(const Expression& e);
Expression differentiate(const Expression& e, int order);

/// PT image: x -> -x and every complex constant (and exponent) conjugated.
Expression pt_reflect(const Expression& e);

/// Function value and derivatives of orders 1..k at a point.
struct Jet {
  double point = 0.0;
  std::vector<Complex> values;

  std::size_t order() const { return values.empty() ? 0 : values.size() - 1; }
};

Jet jet(const Expression& e, double x, int order);

/// Flattened evaluation tape over one or more expressions. Shared
/// sub-expressions are evaluated once per point.
class CompiledExpression {
 public:
  explicit CompiledExpression(const Expression& e);
  explicit CompiledExpression(std::span<const Expression> outputs);

  std::size_t output_count() const { return outputs_.size(); }
  std::size_t size() const { return ops_.size(); }

  /// Writes every output at x into `out` (size output_count()).
  void evaluate(double x, std::span<Complex> out) const;
  /// First output at x.
  Complex operator()(double x) const;
  /// First output at every point of `xs`.
  std::vector<Complex> sample(std::span<const double> xs) const;

 private:
  struct Op {
    Expression::Kind kind;
    Complex value;
    std::uint32_t first;  // child slots start (into args_)
    std::uint32_t count;
  };

  // intermediate values carry extended precision where the platform has it
  using Slot = std::complex<long double>;
  void run(double x, std::vector<Slot>& slots) const;

  std::vector<Op> ops_;
  std::vector<std::uint32_t> args_;
  std::vector<std::uint32_t> outputs_;
};

/// Symbolic derivatives 0..k of one expression compiled into one tape.
class JetEvaluator {
 public:
  JetEvaluator(const Expression& e, int order);

  int order() const { return static_cast<int>(derivatives_.size()) - 1; }
  const Expression& derivative(int j) const { return derivatives_.at(j); }
  Jet operator()(double x) const;

 private:
  std::vector<Expression> derivatives_;
  CompiledExpression tape_;
};

}  // namespace ptcrum
