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

// Independent dense oracles for the test suites. Nothing here calls into the
// library's own dense realization.

#ifndef TQFT_TESTS_ORACLE_HPP
#define TQFT_TESTS_ORACLE_HPP

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "tqft/pauli.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix letter_matrix(char c) {
  const Complex i(0.0, 1.0);
  Matrix m(2, 2);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

inline Matrix identity(std::size_t dim) {
  return Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

// Qubit 0 is the leftmost factor.
inline Matrix label_matrix(const std::string& letters) {
  Matrix m = identity(1);
  for (char c : letters) m = kron(m, letter_matrix(c));
  return m;
}

inline Matrix dense(const tqft::QubitOperator& op) {
  const std::size_t dim = std::size_t{1} << op.n_qubits();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [p, c] : op.terms()) m += c * label_matrix(p.letters());
  return m;
}

// a = |0><1| on `site` with a Z string below it; a^dagger when dagger is set.
inline Matrix ladder(std::size_t site, std::size_t n, bool dagger) {
  Matrix lower(2, 2);
  lower << 0, 1, 0, 0;
  Matrix m = identity(1);
  for (std::size_t q = 0; q < n; ++q) {
    if (q < site) {
      m = kron(m, letter_matrix('Z'));
    } else if (q == site) {
      m = kron(m, dagger ? Matrix(lower.adjoint()) : lower);
    } else {
      m = kron(m, identity(2));
    }
  }
  return m;
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix hermitian_function(const Matrix& h, double (*f)(double, double), double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXcd d(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < d.size(); ++k) d(k) = f(es.eigenvalues()(k), t);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

// exp(-t h) for hermitian h.
inline Matrix exp_minus(const Matrix& h, double t) {
  return hermitian_function(h, [](double x, double s) { return std::exp(-s * x); }, t);
}

// Tr[e^{-beta h} o] / Tr[e^{-beta h}] by direct matrix exponential.
inline double gibbs(const Matrix& h, const Matrix& o, double beta) {
  const Matrix rho = exp_minus(h, beta);
  return (rho * o).trace().real() / rho.trace().real();
}

inline Eigen::VectorXd spectrum(const Matrix& h) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

inline std::string random_label(std::size_t n, std::mt19937_64& rng) {
  static const char kLetters[] = "IXYZ";
  std::uniform_int_distribution<int> pick(0, 3);
  std::string s;
  for (std::size_t q = 0; q < n; ++q) s += kLetters[pick(rng)];
  return s;
}

inline tqft::QubitOperator random_operator(std::size_t n, std::size_t n_terms,
                                           std::mt19937_64& rng, bool hermitian) {
  std::normal_distribution<double> nd;
  tqft::QubitOperator op(n);
  for (std::size_t t = 0; t < n_terms; ++t) {
    const Complex c = hermitian ? Complex(nd(rng), 0.0) : Complex(nd(rng), nd(rng));
    op += tqft::QubitOperator::from_label(random_label(n, rng), c);
  }
  return op;
}

// Every Pauli string on n qubits except the identity, each with a Gaussian
// coefficient.
inline tqft::QubitOperator dense_random_hamiltonian(std::size_t n, std::mt19937_64& rng) {
  static const char kLetters[] = "IXYZ";
  std::normal_distribution<double> nd;
  tqft::QubitOperator op(n);
  const std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t code = 1; code < total; ++code) {
    std::string s;
    for (std::size_t q = 0; q < n; ++q) s += kLetters[(code >> (2 * q)) & 3u];
    op += tqft::QubitOperator::from_label(s, nd(rng));
  }
  return op;
}

inline Eigen::VectorXcd random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(nd(rng), nd(rng));
  return v / v.norm();
}

}  // namespace oracle

#endif  // TQFT_TESTS_ORACLE_HPP
