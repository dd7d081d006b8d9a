#include "ptcrum/susy.hpp"

#include <algorithm>
#include <cmath>

#include "ptcrum/errors.hpp"

namespace ptcrum {

namespace {

double max_abs(const SparseMatrix& m) {
  double out = 0.0;
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

// max |m(i, j)| over entries whose block-local indices both lie in
// [trim, block - trim)
double trimmed_max_abs(const SparseMatrix& m, Eigen::Index block, int trim) {
  double out = 0.0;
  auto inside = [&](Eigen::Index i) {
    const Eigen::Index local = i % block;
    return local >= trim && local < block - trim;
  };
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (inside(it.row()) && inside(it.col())) out = std::max(out, std::abs(it.value()));
    }
  }
  return out;
}

// [[tl, tr], [bl, br]] from n x n blocks; empty blocks are zero
SparseMatrix block2(Eigen::Index n, const SparseMatrix* tl, const SparseMatrix* tr,
                    const SparseMatrix* bl, const SparseMatrix* br) {
  std::vector<Eigen::Triplet<Complex>> entries;
  auto put = [&](const SparseMatrix* m, Eigen::Index r0, Eigen::Index c0) {
    if (m == nullptr) return;
    for (Eigen::Index k = 0; k < m->outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(*m, k); it; ++it) {
        entries.emplace_back(r0 + it.row(), c0 + it.col(), it.value());
      }
    }
  };
  put(tl, 0, 0);
  put(tr, 0, n);
  put(bl, n, 0);
  put(br, n, n);
  SparseMatrix out(2 * n, 2 * n);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

}  // namespace

DiscreteOperator discretize_chain(const ChainOperator& chain, const Grid& grid, int stencil_order) {
  const SparseMatrix d = first_derivative_matrix(grid, stencil_order);
  const Eigen::Index n = d.rows();
  SparseMatrix a(n, n);
  a.setIdentity();
  for (const auto& factor : chain.factors) {
    const SparseMatrix l = diagonal_matrix(sample_interior(factor.superpotential, grid)) - d;
    a = SparseMatrix(l * a);
  }
  a.makeCompressed();
  return {grid, a};
}

SparseMatrix pseudo_adjoint(const SparseMatrix& m) {
  const SparseMatrix p = parity_matrix(m.rows());
  const SparseMatrix adjoint = m.adjoint();
  SparseMatrix out = p * adjoint * p;
  out.makeCompressed();
  return out;
}

DiscreteOperator pseudo_adjoint(const DiscreteOperator& op) {
  return {op.grid, pseudo_adjoint(op.matrix)};
}

double intertwining_residual(const DiscreteOperator& a, const DiscreteHamiltonian& h0,
                             const DiscreteHamiltonian& hn, int trim) {
  if (a.matrix.rows() != h0.size() || h0.size() != hn.size()) {
    throw InvalidGrid("intertwining check needs operators on one grid");
  }
  const SparseMatrix r = SparseMatrix(a.matrix * h0.matrix) - SparseMatrix(hn.matrix * a.matrix);
  const double scale = max_abs(a.matrix) * max_abs(h0.matrix);
  return scale == 0.0 ? 0.0 : trimmed_max_abs(r, r.rows(), trim) / scale;
}

// ---------------------------------------------------------------------------
// mother polynomial

Complex MotherPolynomial::operator()(Complex e) const {
  Complex acc{};
  for (const Complex c : coefficients) acc = acc * e + c;
  return acc;
}

MotherPolynomial mother_polynomial(std::vector<Complex> roots) {
  MotherPolynomial out{std::move(roots), {Complex{1.0}}};
  for (const Complex r : out.roots) {
    // multiply by (E - r)
    out.coefficients.push_back(Complex{});
    for (std::size_t k = out.coefficients.size() - 1; k > 0; --k) {
      out.coefficients[k] -= r * out.coefficients[k - 1];
    }
  }
  return out;
}

MotherPolynomial mother_polynomial(const TransformationSet& t) {
  return mother_polynomial(t.energies());
}

int pseudo_adjoint_sign(int order) { return order % 2 == 0 ? 1 : -1; }

// ---------------------------------------------------------------------------
// PseudoSusy

PseudoSusy::PseudoSusy(const TransformationSet& t, const Grid& grid, int stencil_order, int trim)
    : t_(t),
      grid_(grid),
      stencil_order_(stencil_order),
      trim_(trim),
      chain_(first_order_chain(t, grid)),
      a_(discretize_chain(chain_.op, grid, stencil_order)),
      a_sharp_(pseudo_adjoint(a_)),
      h0_(discretize(t.source().potential(), grid, stencil_order)),
      hn_(discretize(chain_.op.final_potential(), grid, stencil_order)),
      polynomial_(mother_polynomial(t)) {
  if (2 * trim >= grid.interior_points()) throw InvalidGrid("trim margin exceeds the grid");
}

double PseudoSusy::interior_norm(const Vector& v) const {
  return v.segment(trim_, v.size() - 2 * trim_).norm();
}

double PseudoSusy::intertwining() const { return intertwining_residual(a_, h0_, hn_, trim_); }

double PseudoSusy::adjoint_intertwining() const {
  const SparseMatrix r =
      SparseMatrix(a_sharp_.matrix * hn_.matrix) - SparseMatrix(h0_.matrix * a_sharp_.matrix);
  const double scale = max_abs(a_sharp_.matrix) * max_abs(hn_.matrix);
  return scale == 0.0 ? 0.0 : trimmed_max_abs(r, r.rows(), trim_) / scale;
}

AlgebraResult PseudoSusy::algebra(int n) const {
  const Vector psi = sample_interior(t_.source().wavefunction(n), grid_);
  const Vector image = a_.matrix * psi;
  AlgebraResult out;
  out.factor = static_cast<double>(sign()) * polynomial_(t_.source().energy(n));
  const double norm = interior_norm(psi);
  out.residual = interior_norm(a_sharp_.matrix * image - out.factor * psi) / norm;
  out.image = interior_norm(image) / norm;
  return out;
}

AlgebraResult PseudoSusy::partner_algebra(int n) const {
  const Vector psi = sample_interior(transform_eigenstate(t_, n), grid_);
  const Vector image = a_sharp_.matrix * psi;
  AlgebraResult out;
  out.factor = static_cast<double>(sign()) * polynomial_(t_.source().energy(n));
  const double norm = interior_norm(psi);
  out.residual = interior_norm(a_.matrix * image - out.factor * psi) / norm;
  out.image = interior_norm(image) / norm;
  return out;
}

double PseudoSusy::chain_consistency(int n) const {
  const Expression psi = t_.source().wavefunction(n);
  const Vector samples = sample_interior(psi, grid_);
  const Vector symbolic = sample_interior(apply_chain(chain_.op, psi), grid_);
  return interior_norm(a_.matrix * samples - symbolic) / interior_norm(samples);
}

double PseudoSusy::nilpotency() const { return nilpotency_check(a_); }

double PseudoSusy::nilpotency_adjoint() const {
  const Eigen::Index n = a_.matrix.rows();
  const SparseMatrix q = block2(n, nullptr, nullptr, &a_sharp_.matrix, nullptr);
  return max_abs(SparseMatrix(q * q));
}

double PseudoSusy::commutator() const {
  const Eigen::Index n = a_.matrix.rows();
  const SparseMatrix q = block2(n, nullptr, &a_.matrix, nullptr, nullptr);
  const SparseMatrix h = block2(n, &hn_.matrix, nullptr, nullptr, &h0_.matrix);
  const SparseMatrix c = SparseMatrix(q * h) - SparseMatrix(h * q);
  const double scale = max_abs(q) * max_abs(h);
  return scale == 0.0 ? 0.0 : trimmed_max_abs(c, n, trim_) / scale;
}

double PseudoSusy::commutator_adjoint() const {
  const Eigen::Index n = a_.matrix.rows();
  const SparseMatrix q = block2(n, nullptr, nullptr, &a_sharp_.matrix, nullptr);
  const SparseMatrix h = block2(n, &hn_.matrix, nullptr, nullptr, &h0_.matrix);
  const SparseMatrix c = SparseMatrix(q * h) - SparseMatrix(h * q);
  const double scale = max_abs(q) * max_abs(h);
  return scale == 0.0 ? 0.0 : trimmed_max_abs(c, n, trim_) / scale;
}

double PseudoSusy::anticommutator_block_error() const {
  const Eigen::Index n = a_.matrix.rows();
  const SparseMatrix q = block2(n, nullptr, &a_.matrix, nullptr, nullptr);
  const SparseMatrix qs = block2(n, nullptr, nullptr, &a_sharp_.matrix, nullptr);
  const SparseMatrix anti = SparseMatrix(q * qs) + SparseMatrix(qs * q);
  const SparseMatrix top = a_.matrix * a_sharp_.matrix;
  const SparseMatrix bottom = a_sharp_.matrix * a_.matrix;
  const SparseMatrix expected = block2(n, &top, nullptr, nullptr, &bottom);
  return max_abs(SparseMatrix(anti - expected));
}

double nilpotency_check(const DiscreteOperator& a) {
  const Eigen::Index n = a.matrix.rows();
  const SparseMatrix q = block2(n, nullptr, &a.matrix, nullptr, nullptr);
  return max_abs(SparseMatrix(q * q));
}

}  // namespace ptcrum
