#include "ptcrum/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "ptcrum/errors.hpp"

namespace ptcrum {

namespace {

using OrderTerms = std::map<std::vector<int>, int>;

// d/dx of sum_k c_k det(rows with orders o_k): differentiate one row at a
// time and drop determinants with a repeated row.
OrderTerms differentiate_terms(const OrderTerms& terms) {
  OrderTerms out;
  for (const auto& [orders, coeff] : terms) {
    for (std::size_t r = 0; r < orders.size(); ++r) {
      std::vector<int> next = orders;
      ++next[r];
      if (r + 1 < next.size() && next[r] == next[r + 1]) continue;
      out[next] += coeff;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Complex determinant(std::vector<Complex> m, std::size_t n) {
  Complex det{1.0};
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r * n + c]) > std::abs(m[pivot * n + c])) pivot = r;
    }
    if (m[pivot * n + c] == Complex{}) return {};
    if (pivot != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[c * n + k], m[pivot * n + k]);
      det = -det;
    }
    const Complex d = m[c * n + c];
    det *= d;
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = m[r * n + c] / d;
      if (f == Complex{}) continue;
      for (std::size_t k = c + 1; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return det;
}

Expression symbolic_determinant(const std::vector<std::vector<Expression>>& m,
                                std::vector<int> rows, std::vector<int> cols) {
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  // expand along the first row
  std::vector<Expression> terms;
  const int r0 = rows.front();
  std::vector<int> rest(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::vector<int> minor_cols;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (k != j) minor_cols.push_back(cols[k]);
    }
    Expression term = m[r0][cols[j]] * symbolic_determinant(m, rest, minor_cols);
    terms.push_back(j % 2 == 0 ? term : -term);
  }
  return Expression::sum(std::move(terms));
}

std::string at(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// TransformationSet

TransformationSet::TransformationSet(ModelPtr model, std::vector<int> indices)
    : model_(std::move(model)), indices_(std::move(indices)) {
  if (!model_) throw InvalidTransformation("transformation set needs a source model");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidTransformation("duplicate transformation index");
  }
  for (int i : indices_) {
    if (!model_->has_level(i)) {
      throw IndexOutOfRange("transformation index " + std::to_string(i) +
                            " is not a bound level of " + model_->name());
    }
    functions_.push_back(model_->wavefunction(i));
    energies_.push_back(model_->energy(i));
  }
}

bool TransformationSet::contains(int n) const {
  return std::binary_search(indices_.begin(), indices_.end(), n);
}

// ---------------------------------------------------------------------------
// Wronskian

WronskianEvaluator::WronskianEvaluator(std::vector<Expression> functions)
    : functions_(std::move(functions)) {
  const int n = order();
  if (n == 0) throw InvalidTransformation("Wronskian of no functions");
  jets_.reserve(n);
  for (const auto& f : functions_) jets_.emplace_back(f, n + 1);

  std::vector<int> base(n);
  for (int r = 0; r < n; ++r) base[r] = r;
  OrderTerms terms{{base, 1}};
  for (int d = 0; d < 3; ++d) {
    std::vector<std::vector<int>> flat;
    for (const auto& [orders, coeff] : terms) {
      for (int k = 0; k < std::abs(coeff); ++k) flat.push_back(orders);
      // coefficients stay positive: differentiating a sorted order vector
      // never needs a row swap
    }
    terms_.push_back(std::move(flat));
    terms = differentiate_terms(terms);
  }

  std::vector<std::vector<Expression>> m(n + 2, std::vector<Expression>(n));
  for (int r = 0; r < n + 2; ++r) {
    for (int c = 0; c < n; ++c) m[r][c] = jets_[c].derivative(r);
  }
  std::vector<int> cols(n);
  for (int c = 0; c < n; ++c) cols[c] = c;
  for (const auto& list : terms_) {
    std::vector<Expression> parts;
    for (const auto& orders : list) parts.push_back(symbolic_determinant(m, orders, cols));
    symbolic_.push_back(Expression::sum(std::move(parts)));
  }
}

WronskianValue WronskianEvaluator::operator()(double x) const {
  const std::size_t n = functions_.size();
  std::vector<Jet> jets;
  jets.reserve(n);
  for (const auto& j : jets_) jets.push_back(j(x));
  Complex out[3];
  std::vector<Complex> m(n * n);
  for (int d = 0; d < 3; ++d) {
    for (const auto& orders : terms_[d]) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) m[r * n + c] = jets[c].values[orders[r]];
      }
      out[d] += determinant(m, n);
    }
  }
  return {out[0], out[1], out[2]};
}

double WronskianEvaluator::node_measure(double x) const {
  const std::size_t n = functions_.size();
  std::vector<Complex> m(n * n);
  double bound = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    const Jet j = jets_[c](x);
    double norm2 = 0.0;
    for (std::size_t k = 0; k <= n; ++k) norm2 += std::norm(j.values[k]);
    bound *= std::sqrt(norm2);
    for (std::size_t r = 0; r < n; ++r) m[r * n + c] = j.values[r];
  }
  if (bound == 0.0) return 0.0;
  return std::abs(determinant(m, n)) / bound;
}

std::pair<double, double> WronskianEvaluator::min_node_measure(const Grid& grid) const {
  double best = std::numeric_limits<double>::infinity();
  double where = 0.0;
  for (int i = 0; i < grid.points(); ++i) {
    const double x = grid.node(i);
    double m = 0.0;
    try {
      m = node_measure(x);
    } catch (const PoleAtPoint&) {
      m = 0.0;
    }
    if (!(m >= best)) {
      best = m;
      where = x;
    }
  }
  return {best, where};
}

WronskianEvaluator wronskian(std::vector<Expression> functions) {
  return WronskianEvaluator(std::move(functions));
}

Expression log_derivative_shift(const Expression& potential, const WronskianEvaluator& w) {
  const Expression ratio1 = w.derivative_expression() / w.expression();
  const Expression ratio2 = w.second_derivative_expression() / w.expression();
  return potential - Expression{2.0} * (ratio2 - ratio1 * ratio1);
}

// ---------------------------------------------------------------------------
// Crum transform

TransformedModel crum_potential(const TransformationSet& t, int levels, std::optional<Grid> grid) {
  const SolvableModel& source = t.source();
  TransformedModel out{t.model(), t, source.potential(), Expression{1.0}, {}, 1.0};
  if (t.order() > 0) {
    const WronskianEvaluator w(t.functions());
    const Grid g = grid.value_or(source.default_grid());
    const auto [measure, where] = w.min_node_measure(g);
    out.node_measure = measure;
    if (measure < kNodeTolerance) {
      throw SingularTransform("Wronskian has a node near x = " + at(where) +
                              " (relative size " + at(measure) + ")");
    }
    out.potential = log_derivative_shift(source.potential(), w);
    out.wronskian = w.expression();
  }
  for (int n = 0; n < levels && source.has_level(n); ++n) {
    if (!t.contains(n)) out.surviving_levels.push_back({n, source.energy(n)});
  }
  return out;
}

Expression transform_eigenstate(const TransformationSet& t, int n) {
  if (t.contains(n)) {
    throw AnnihilatedState("level " + std::to_string(n) +
                           " is a transformation function and is mapped to zero");
  }
  if (!t.source().has_level(n)) {
    throw IndexOutOfRange("level " + std::to_string(n) + " is not a bound level");
  }
  const Expression psi = t.source().wavefunction(n);
  if (t.order() == 0) return psi;
  std::vector<Expression> extended = t.functions();
  extended.push_back(psi);
  const WronskianEvaluator top(std::move(extended));
  const WronskianEvaluator bottom(t.functions());
  return top.expression() / bottom.expression();
}

// ---------------------------------------------------------------------------
// first-order chain

Expression ChainOperator::final_potential() const {
  return factors.empty() ? source_potential : factors.back().target_potential;
}

Chain first_order_chain(const TransformationSet& t, std::optional<Grid> grid) {
  const Grid g = grid.value_or(t.source().default_grid());
  Chain chain;
  chain.op.source_potential = t.source().potential();
  chain.op.energies = t.energies();
  Expression current = chain.op.source_potential;
  const int n = t.order();
  for (int k = 0; k < n; ++k) {
    const std::vector<Expression> prefix(t.functions().begin(), t.functions().begin() + k + 1);
    const auto [measure, where] = WronskianEvaluator(prefix).min_node_measure(g);
    chain.node_measures.push_back(measure);
    if (measure < kNodeTolerance) {
      const std::string msg = "W(u_1..u_" + std::to_string(k + 1) + ") has a node near x = " +
                              at(where) + " (relative size " + at(measure) + ")";
      if (k + 1 < n) throw SingularIntermediate(msg);
      throw SingularTransform(msg);
    }
    const Expression seed = apply_chain(chain.op, t.functions()[k]);
    const Expression w = differentiate(seed) / seed;
    const Expression target = current - Expression{2.0} * differentiate(w);
    chain.op.factors.push_back({seed, w, current, target});
    if (k + 1 < n) chain.intermediates.push_back(target);
    current = target;
  }
  return chain;
}

Expression apply_chain(const ChainOperator& c, const Expression& f) {
  Expression g = f;
  for (const auto& factor : c.factors) g = factor.superpotential * g - differentiate(g);
  return g;
}

Expression apply_chain_transpose(const ChainOperator& c, const Expression& f) {
  Expression g = f;
  for (auto it = c.factors.rbegin(); it != c.factors.rend(); ++it) {
    g = differentiate(g) + it->superpotential * g;
  }
  return g;
}

}  // namespace ptcrum
