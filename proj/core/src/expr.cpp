#include "ptcrum/expr.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "ptcrum/errors.hpp"

namespace ptcrum {

struct Expression::Node {
  Kind kind;
  Complex value;
  std::vector<Expression> children;
};

namespace {

bool is_integral(Complex c, long& n) {
  if (c.imag() != 0.0) return false;
  const double r = c.real();
  if (std::abs(r) > 64.0 || std::floor(r) != r) return false;
  n = static_cast<long>(r);
  return true;
}

template <class C>
C integer_power(C base, long n) {
  bool invert = n < 0;
  unsigned long k = static_cast<unsigned long>(invert ? -n : n);
  C result{1, 0};
  while (k != 0) {
    if (k & 1UL) result *= base;
    base *= base;
    k >>= 1;
  }
  return invert ? C{1, 0} / result : result;
}

std::string describe_point(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

template <class C>
C checked_power(C base, Complex exponent, double x) {
  long n = 0;
  if (is_integral(exponent, n)) {
    if (base == C{} && n < 0) {
      throw PoleAtPoint("zero base raised to negative power at x = " + describe_point(x));
    }
    return integer_power(base, n);
  }
  if (base == C{}) {
    if (exponent.real() > 0.0) return {};
    throw PoleAtPoint("zero base raised to power with non-positive real part at x = " +
                      describe_point(x));
  }
  if (base.real() < 0 && std::abs(base.imag()) <= 1e-14L * std::abs(base)) {
    throw BranchViolation("power base on the principal branch cut at x = " + describe_point(x));
  }
  return std::exp(C(exponent) * std::log(base));
}

template <class C>
C checked_quotient(C num, C den, double x) {
  if (den == C{} || std::abs(den) <= kPoleTolerance * std::abs(num)) {
    throw PoleAtPoint("vanishing denominator at x = " + describe_point(x));
  }
  return num / den;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

Expression::Expression() : Expression(Complex{}) {}
Expression::Expression(double c) : Expression(Complex{c, 0.0}) {}
Expression::Expression(Complex c)
    : node_(std::make_shared<const Node>(Node{Kind::Constant, c, {}})) {}
Expression::Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expression Expression::variable() {
  static const Expression x{std::make_shared<const Node>(Node{Kind::Variable, {}, {}})};
  return x;
}

Expression Expression::constant(Complex c) { return Expression{c}; }

Expression::Kind Expression::kind() const { return node_->kind; }
Complex Expression::value() const { return node_->value; }
std::span<const Expression> Expression::children() const { return node_->children; }
bool Expression::is_zero() const { return is_constant() && value() == Complex{}; }
bool Expression::is_one() const { return is_constant() && value() == Complex{1.0, 0.0}; }

Expression Expression::sum(std::vector<Expression> terms) {
  std::vector<Expression> flat;
  flat.reserve(terms.size());
  Complex folded{};
  for (auto& t : terms) {
    if (t.kind() == Kind::Sum) {
      for (const auto& c : t.children()) {
        if (c.is_constant()) folded += c.value();
        else flat.push_back(c);
      }
    } else if (t.is_constant()) {
      folded += t.value();
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (folded != Complex{}) flat.insert(flat.begin(), Expression{folded});
  if (flat.empty()) return Expression{};
  if (flat.size() == 1) return flat.front();
  return Expression{std::make_shared<const Node>(Node{Kind::Sum, {}, std::move(flat)})};
}

Expression Expression::product(std::vector<Expression> factors) {
  std::vector<Expression> flat;
  flat.reserve(factors.size());
  Complex folded{1.0, 0.0};
  for (auto& f : factors) {
    if (f.kind() == Kind::Product) {
      for (const auto& c : f.children()) {
        if (c.is_constant()) folded *= c.value();
        else flat.push_back(c);
      }
    } else if (f.is_constant()) {
      folded *= f.value();
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (folded == Complex{}) return Expression{};
  if (flat.empty()) return Expression{folded};
  if (folded != Complex{1.0, 0.0}) flat.insert(flat.begin(), Expression{folded});
  if (flat.size() == 1) return flat.front();
  return Expression{std::make_shared<const Node>(Node{Kind::Product, {}, std::move(flat)})};
}

Expression Expression::quotient(Expression numerator, Expression denominator) {
  if (denominator.is_constant() && denominator.value() != Complex{}) {
    return product({Expression{1.0 / denominator.value()}, std::move(numerator)});
  }
  if (numerator.is_zero() && !denominator.is_constant()) return Expression{};
  return Expression{std::make_shared<const Node>(
      Node{Kind::Quotient, {}, {std::move(numerator), std::move(denominator)}})};
}

Expression Expression::power(Expression base, Complex exponent) {
  if (exponent == Complex{}) return Expression{1.0};
  if (exponent == Complex{1.0, 0.0}) return base;
  if (base.is_constant()) {
    const Complex b = base.value();
    long n = 0;
    if (is_integral(exponent, n) && !(b == Complex{} && n < 0)) return Expression{integer_power(b, n)};
    if (b.real() > 0.0 || b.imag() != 0.0) return Expression{std::exp(exponent * std::log(b))};
  }
  return Expression{
      std::make_shared<const Node>(Node{Kind::Power, exponent, {std::move(base)}})};
}

Expression Expression::exp(Expression argument) {
  if (argument.is_constant()) return Expression{std::exp(argument.value())};
  return Expression{std::make_shared<const Node>(Node{Kind::Exp, {}, {std::move(argument)}})};
}

Expression Expression::sinh(Expression argument) {
  if (argument.is_constant()) return Expression{std::sinh(argument.value())};
  return Expression{std::make_shared<const Node>(Node{Kind::Sinh, {}, {std::move(argument)}})};
}

Expression Expression::cosh(Expression argument) {
  if (argument.is_constant()) return Expression{std::cosh(argument.value())};
  return Expression{std::make_shared<const Node>(Node{Kind::Cosh, {}, {std::move(argument)}})};
}

std::string Expression::to_string() const {
  std::ostringstream os;
  auto constant = [&os](Complex c) {
    if (c.imag() == 0.0) os << c.real();
    else os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  };
  switch (kind()) {
    case Kind::Constant: constant(value()); break;
    case Kind::Variable: os << 'x'; break;
    case Kind::Sum:
    case Kind::Product: {
      os << '(';
      const char* sep = kind() == Kind::Sum ? " + " : "*";
      bool first = true;
      for (const auto& c : children()) {
        if (!first) os << sep;
        os << c.to_string();
        first = false;
      }
      os << ')';
      break;
    }
    case Kind::Quotient:
      os << '(' << children()[0].to_string() << ")/(" << children()[1].to_string() << ')';
      break;
    case Kind::Power:
      os << '(' << children()[0].to_string() << ")^";
      constant(value());
      break;
    case Kind::Exp: os << "exp(" << children()[0].to_string() << ')'; break;
    case Kind::Sinh: os << "sinh(" << children()[0].to_string() << ')'; break;
    case Kind::Cosh: os << "cosh(" << children()[0].to_string() << ')'; break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// arithmetic sugar

Expression operator+(const Expression& a, const Expression& b) { return Expression::sum({a, b}); }
Expression operator-(const Expression& a, const Expression& b) {
  return Expression::sum({a, Expression::product({Expression{-1.0}, b})});
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression::product({a, b});
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression::quotient(a, b);
}
Expression operator-(const Expression& a) { return Expression::product({Expression{-1.0}, a}); }

Expression pow(const Expression& base, Complex exponent) { return Expression::power(base, exponent); }
Expression exp(const Expression& e) { return Expression::exp(e); }
Expression sinh(const Expression& e) { return Expression::sinh(e); }
Expression cosh(const Expression& e) { return Expression::cosh(e); }
Expression sech(const Expression& e) { return Expression::power(Expression::cosh(e), -1.0); }
Expression tanh(const Expression& e) { return Expression::quotient(Expression::sinh(e), Expression::cosh(e)); }

// ---------------------------------------------------------------------------
// differentiation

namespace {

class Differentiator {
 public:
  Expression operator()(const Expression& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expression d = derive(e);
    memo_.emplace(e.id(), d);
    return d;
  }

 private:
  Expression derive(const Expression& e) {
    using K = Expression::Kind;
    const auto ch = e.children();
    switch (e.kind()) {
      case K::Constant: return Expression{};
      case K::Variable: return Expression{1.0};
      case K::Sum: {
        std::vector<Expression> terms;
        terms.reserve(ch.size());
        for (const auto& c : ch) terms.push_back((*this)(c));
        return Expression::sum(std::move(terms));
      }
      case K::Product: {
        std::vector<Expression> terms;
        for (std::size_t i = 0; i < ch.size(); ++i) {
          Expression di = (*this)(ch[i]);
          if (di.is_zero()) continue;
          std::vector<Expression> factors;
          factors.reserve(ch.size());
          for (std::size_t j = 0; j < ch.size(); ++j) factors.push_back(j == i ? di : ch[j]);
          terms.push_back(Expression::product(std::move(factors)));
        }
        return Expression::sum(std::move(terms));
      }
      case K::Quotient: {
        // (n/d)' = n'/d - (n/d)(d'/d); avoids powers of d that underflow in tails
        const Expression& n = ch[0];
        const Expression& d = ch[1];
        Expression dn = (*this)(n);
        Expression dd = (*this)(d);
        Expression first = Expression::quotient(dn, d);
        if (dd.is_zero()) return first;
        return first - e * Expression::quotient(dd, d);
      }
      case K::Power: {
        const Complex c = e.value();
        return Expression::product({Expression{c}, Expression::power(ch[0], c - 1.0), (*this)(ch[0])});
      }
      case K::Exp: return e * (*this)(ch[0]);
      case K::Sinh: return Expression::cosh(ch[0]) * (*this)(ch[0]);
      case K::Cosh: return Expression::sinh(ch[0]) * (*this)(ch[0]);
    }
    return Expression{};
  }

  std::unordered_map<const Expression::Node*, Expression> memo_;
};

class Reflector {
 public:
  Expression operator()(const Expression& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expression r = reflect(e);
    memo_.emplace(e.id(), r);
    return r;
  }

 private:
  Expression reflect(const Expression& e) {
    using K = Expression::Kind;
    const auto ch = e.children();
    auto mapped = [&] {
      std::vector<Expression> out;
      out.reserve(ch.size());
      for (const auto& c : ch) out.push_back((*this)(c));
      return out;
    };
    switch (e.kind()) {
      case K::Constant: return Expression{std::conj(e.value())};
      case K::Variable: return -Expression::variable();
      case K::Sum: return Expression::sum(mapped());
      case K::Product: return Expression::product(mapped());
      case K::Quotient: return Expression::quotient((*this)(ch[0]), (*this)(ch[1]));
      case K::Power: return Expression::power((*this)(ch[0]), std::conj(e.value()));
      case K::Exp: return Expression::exp((*this)(ch[0]));
      case K::Sinh: return Expression::sinh((*this)(ch[0]));
      case K::Cosh: return Expression::cosh((*this)(ch[0]));
    }
    return e;
  }

  std::unordered_map<const Expression::Node*, Expression> memo_;
};

}  // namespace

Expression differentiate(const Expression& e) { return Differentiator{}(e); }

Expression differentiate(const Expression& e, int order) {
  Expression d = e;
  for (int k = 0; k < order; ++k) d = differentiate(d);
  return d;
}

Expression pt_reflect(const Expression& e) { return Reflector{}(e); }

// ---------------------------------------------------------------------------
// evaluation

CompiledExpression::CompiledExpression(const Expression& e)
    : CompiledExpression(std::span<const Expression>(&e, 1)) {}

CompiledExpression::CompiledExpression(std::span<const Expression> outputs) {
  std::unordered_map<const Expression::Node*, std::uint32_t> slot_of;
  // iterative post-order so deep trees cannot exhaust the stack
  for (const auto& root : outputs) {
    std::vector<std::pair<Expression, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [e, expanded] = stack.back();
      stack.pop_back();
      if (slot_of.contains(e.id())) continue;
      if (!expanded) {
        stack.push_back({e, true});
        for (const auto& c : e.children()) {
          if (!slot_of.contains(c.id())) stack.push_back({c, false});
        }
        continue;
      }
      Op op{e.kind(), e.value(), static_cast<std::uint32_t>(args_.size()),
            static_cast<std::uint32_t>(e.children().size())};
      for (const auto& c : e.children()) args_.push_back(slot_of.at(c.id()));
      slot_of.emplace(e.id(), static_cast<std::uint32_t>(ops_.size()));
      ops_.push_back(op);
    }
    outputs_.push_back(slot_of.at(root.id()));
  }
}

void CompiledExpression::run(double x, std::vector<Slot>& slots) const {
  using K = Expression::Kind;
  slots.resize(ops_.size());
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    const std::uint32_t* a = args_.data() + op.first;
    Slot v;
    switch (op.kind) {
      case K::Constant: v = Slot(op.value); break;
      case K::Variable: v = Slot{x, 0.0L}; break;
      case K::Sum:
        v = slots[a[0]];
        for (std::uint32_t k = 1; k < op.count; ++k) v += slots[a[k]];
        break;
      case K::Product:
        v = slots[a[0]];
        for (std::uint32_t k = 1; k < op.count; ++k) v *= slots[a[k]];
        break;
      case K::Quotient: v = checked_quotient(slots[a[0]], slots[a[1]], x); break;
      case K::Power: v = checked_power(slots[a[0]], op.value, x); break;
      case K::Exp: v = std::exp(slots[a[0]]); break;
      case K::Sinh: v = std::sinh(slots[a[0]]); break;
      case K::Cosh: v = std::cosh(slots[a[0]]); break;
    }
    slots[i] = v;
  }
}

void CompiledExpression::evaluate(double x, std::span<Complex> out) const {
  std::vector<Slot> slots;
  run(x, slots);
  for (std::size_t k = 0; k < outputs_.size() && k < out.size(); ++k) {
    out[k] = Complex(slots[outputs_[k]]);
  }
}

Complex CompiledExpression::operator()(double x) const {
  std::vector<Slot> slots;
  run(x, slots);
  return Complex(slots[outputs_.front()]);
}

std::vector<Complex> CompiledExpression::sample(std::span<const double> xs) const {
  std::vector<Slot> slots;
  std::vector<Complex> out;
  out.reserve(xs.size());
  for (double x : xs) {
    run(x, slots);
    out.push_back(Complex(slots[outputs_.front()]));
  }
  return out;
}

Complex evaluate(const Expression& e, double x) { return CompiledExpression{e}(x); }

namespace {
std::vector<Expression> derivative_tower(const Expression& e, int order) {
  std::vector<Expression> out{e};
  for (int k = 1; k <= order; ++k) out.push_back(differentiate(out.back()));
  return out;
}
}  // namespace

JetEvaluator::JetEvaluator(const Expression& e, int order)
    : derivatives_(derivative_tower(e, order < 0 ? 0 : order)), tape_(derivatives_) {}

Jet JetEvaluator::operator()(double x) const {
  Jet j{x, std::vector<Complex>(derivatives_.size())};
  tape_.evaluate(x, j.values);
  return j;
}

Jet jet(const Expression& e, double x, int order) { return JetEvaluator{e, order}(x); }

}  // namespace ptcrum
