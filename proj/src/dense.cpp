// Copyright 2026 The tqft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tqft/dense.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "tqft/errors.hpp"

namespace tqft {

namespace {

// Reorders a qubit-indexed mask into basis-index bit positions.
std::uint64_t index_mask(std::uint64_t qubit_mask, std::size_t n_qubits) {
  std::uint64_t out = 0;
  for (std::uint64_t m = qubit_mask; m != 0; m &= m - 1) {
    const auto q = static_cast<std::size_t>(std::countr_zero(m));
    out |= std::uint64_t{1} << (n_qubits - 1 - q);
  }
  return out;
}

Complex i_power(int k) {
  static const Complex kPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPowers[((k % 4) + 4) % 4];
}

std::size_t checked_dim(std::size_t n_qubits, std::size_t cap) {
  if (n_qubits > cap) {
    throw CapacityError("register of " + std::to_string(n_qubits) +
                        " qubits exceeds the dense cap of " + std::to_string(cap));
  }
  return std::size_t{1} << n_qubits;
}

struct IndexedPauli {
  std::uint64_t x;
  std::uint64_t z;
  Complex phase;  // i^{n_y}
};

IndexedPauli index_form(const PauliString& p) {
  return {index_mask(p.x_mask(), p.size()), index_mask(p.z_mask(), p.size()),
          i_power(p.y_count())};
}

double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

}  // namespace

StateVector::StateVector(std::size_t n_qubits, ComplexVector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits >= 63 ||
      static_cast<std::size_t>(amplitudes_.size()) != (std::size_t{1} << n_qubits)) {
    throw DimensionError("state of " + std::to_string(amplitudes_.size()) +
                         " amplitudes does not fit " + std::to_string(n_qubits) +
                         " qubits");
  }
}

StateVector StateVector::basis_state(std::size_t n_qubits, std::size_t index) {
  const std::size_t dim = checked_dim(n_qubits, 62);
  if (index >= dim) throw IndexError("basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(n_qubits, std::move(v));
}

StateVector StateVector::normalized_from(std::size_t n_qubits,
                                         ComplexVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw NumericalError("cannot normalize a zero or non-finite state");
  }
  amplitudes /= n;
  return StateVector(n_qubits, std::move(amplitudes));
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(amplitudes_.squaredNorm() - 1.0) <= tol;
}

DenseOperator to_dense(const QubitOperator& op, std::size_t max_qubits) {
  const std::size_t n = op.n_qubits();
  const std::size_t dim = checked_dim(n, max_qubits);
  DenseOperator m = DenseOperator::Zero(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim));
  for (const auto& [p, c] : op.terms()) {
    const IndexedPauli ip = index_form(p);
    const Complex scale = c * ip.phase;
    for (std::uint64_t j = 0; j < dim; ++j) {
      m(static_cast<Eigen::Index>(j ^ ip.x), static_cast<Eigen::Index>(j)) +=
          scale * parity_sign(j & ip.z);
    }
  }
  return m;
}

ComplexVector apply(const PauliTerm& term, const ComplexVector& v) {
  const std::size_t n = term.letters.size();
  if (static_cast<std::size_t>(v.size()) != (std::size_t{1} << n)) {
    throw DimensionError("vector dimension does not match the Pauli register");
  }
  const IndexedPauli ip = index_form(term.letters);
  const Complex scale = term.coefficient * ip.phase;
  ComplexVector out(v.size());
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(v.size()); ++j) {
    out(static_cast<Eigen::Index>(j ^ ip.x)) =
        scale * parity_sign(j & ip.z) * v(static_cast<Eigen::Index>(j));
  }
  return out;
}

ComplexVector apply(const QubitOperator& op, const ComplexVector& v) {
  const std::size_t n = op.n_qubits();
  if (static_cast<std::size_t>(v.size()) != (std::size_t{1} << n)) {
    throw DimensionError("vector dimension does not match the operator register");
  }
  ComplexVector out = ComplexVector::Zero(v.size());
  for (const auto& [p, c] : op.terms()) {
    const IndexedPauli ip = index_form(p);
    const Complex scale = c * ip.phase;
    for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(v.size()); ++j) {
      out(static_cast<Eigen::Index>(j ^ ip.x)) +=
          scale * parity_sign(j & ip.z) * v(static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

Complex expectation(const StateVector& state, const QubitOperator& op) {
  if (state.n_qubits() != op.n_qubits()) {
    throw DimensionError("expectation: state has " +
                         std::to_string(state.n_qubits()) + " qubits, operator " +
                         std::to_string(op.n_qubits()));
  }
  return state.amplitudes().dot(tqft::apply(op, state.amplitudes()));
}

Complex expectation(const StateVector& state, const DenseOperator& op) {
  if (op.rows() != op.cols() ||
      static_cast<std::size_t>(op.rows()) != state.dim()) {
    throw DimensionError("expectation: operator dimension does not match state");
  }
  return state.amplitudes().dot(op * state.amplitudes());
}

void apply_pauli_exponential(const PauliString& p, double coeff, double tau,
                             ComplexVector& v) {
  const std::size_t n = p.size();
  if (static_cast<std::size_t>(v.size()) != (std::size_t{1} << n)) {
    throw DimensionError("vector dimension does not match the Pauli register");
  }
  const double theta = tau * coeff;
  if (p.is_identity()) {
    v *= std::exp(-theta);
    return;
  }
  const double ch = std::cosh(theta);
  const double sh = std::sinh(theta);
  const IndexedPauli ip = index_form(p);
  const auto dim = static_cast<std::uint64_t>(v.size());
  if (ip.x == 0) {
    // Diagonal string: eigenvalue +-1 per basis state.
    const double plus = std::exp(-theta);
    const double minus = std::exp(theta);
    const double ph = ip.phase.real();  // no Y letters, phase is 1
    for (std::uint64_t j = 0; j < dim; ++j) {
      v(static_cast<Eigen::Index>(j)) *= (ph * parity_sign(j & ip.z) > 0) ? plus : minus;
    }
    return;
  }
  // Pairs (j, j^x) mix; visit each pair once from its smaller index.
  const std::uint64_t pivot = std::uint64_t{1} << (63 - std::countl_zero(ip.x));
  for (std::uint64_t j = 0; j < dim; ++j) {
    if (j & pivot) continue;
    const std::uint64_t k = j ^ ip.x;
    const auto je = static_cast<Eigen::Index>(j);
    const auto ke = static_cast<Eigen::Index>(k);
    // P|j> = s_j |k>, P|k> = s_k |j>
    const Complex s_j = ip.phase * parity_sign(j & ip.z);
    const Complex s_k = ip.phase * parity_sign(k & ip.z);
    const Complex vj = v(je);
    const Complex vk = v(ke);
    v(je) = ch * vj - sh * s_k * vk;
    v(ke) = ch * vk - sh * s_j * vj;
  }
}

double max_entry_norm(const DenseOperator& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const DenseOperator& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  return max_entry_norm(m - m.adjoint());
}

Eigensystem eigendecompose(const DenseOperator& h, double tol) {
  const double defect = hermiticity_defect(h);
  if (defect > tol) {
    throw ValidationError("eigendecompose: matrix is not hermitian (defect " +
                          std::to_string(defect) + ")");
  }
  const DenseOperator sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecompose: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
  return a * b - b * a;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DenseOperator embed_site_operator(const DenseOperator& site_op, std::size_t site,
                                  std::size_t n_sites) {
  if (site >= n_sites) throw IndexError("site index out of range");
  const Eigen::Index d = site_op.rows();
  DenseOperator out = DenseOperator::Identity(1, 1);
  for (std::size_t s = 0; s < n_sites; ++s) {
    out = kron(out, s == site ? site_op : DenseOperator::Identity(d, d));
  }
  return out;
}

}  // namespace tqft
