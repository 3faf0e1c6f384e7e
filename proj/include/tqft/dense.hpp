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

#ifndef TQFT_DENSE_HPP
#define TQFT_DENSE_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "tqft/pauli.hpp"

namespace tqft {

using DenseOperator = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Default register cap for dense realization. A 2^14 square complex matrix
// is 4 GiB.
inline constexpr std::size_t kDenseQubitCap = 14;

// Amplitudes over the computational basis. Basis index bit (n-1-q) holds
// qubit q, so qubit 0 is the most significant bit and the leftmost
// Kronecker factor.
class StateVector {
 public:
  StateVector() = default;
  StateVector(std::size_t n_qubits, ComplexVector amplitudes);

  static StateVector basis_state(std::size_t n_qubits, std::size_t index);
  // Normalizes the given amplitudes. Throws NumericalError on a zero vector.
  static StateVector normalized_from(std::size_t n_qubits, ComplexVector amplitudes);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = 1e-12) const;

 private:
  std::size_t n_qubits_ = 0;
  ComplexVector amplitudes_;
};

// Kronecker-product realization of op, qubit 0 leftmost.
DenseOperator to_dense(const QubitOperator& op,
                       std::size_t max_qubits = kDenseQubitCap);

// op |v> for a vector of dimension 2^n without forming a matrix.
ComplexVector apply(const QubitOperator& op, const ComplexVector& v);
// c P |v>
ComplexVector apply(const PauliTerm& term, const ComplexVector& v);

Complex expectation(const StateVector& state, const QubitOperator& op);
Complex expectation(const StateVector& state, const DenseOperator& op);

// exp(-tau * c * P) |v> for real c, using P^2 = I:
// cosh(tau c) v - sinh(tau c) P v.
void apply_pauli_exponential(const PauliString& p, double coeff, double tau,
                             ComplexVector& v);

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  DenseOperator vectors;   // columns are eigenvectors
};

// Hermitian eigendecomposition. Throws ValidationError when h deviates from
// its conjugate transpose by more than tol in any entry.
Eigensystem eigendecompose(const DenseOperator& h, double tol = 1e-10);

double max_entry_norm(const DenseOperator& m);
double hermiticity_defect(const DenseOperator& m);
DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

// Places `site_op` (dimension d) on factor `site` of an n_sites-fold product
// of d-dimensional spaces, identity elsewhere. Site 0 is leftmost.
DenseOperator embed_site_operator(const DenseOperator& site_op, std::size_t site,
                                  std::size_t n_sites);

// f(h) = V f(lambda) V^dagger for hermitian h given its eigensystem.
template <typename F>
DenseOperator spectral_function(const Eigensystem& es, F&& f) {
  Eigen::VectorXcd fl(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) fl(i) = f(es.values(i));
  return es.vectors * fl.asDiagonal() * es.vectors.adjoint();
}

}  // namespace tqft

#endif  // TQFT_DENSE_HPP
