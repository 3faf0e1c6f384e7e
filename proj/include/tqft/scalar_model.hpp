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

#ifndef TQFT_SCALAR_MODEL_HPP
#define TQFT_SCALAR_MODEL_HPP

#include <cstddef>
#include <vector>

#include "tqft/dense.hpp"
#include "tqft/lattice.hpp"

namespace tqft {

// Digitized phi^4 theory in 1+1 dimensions. Each site is a register of
// qubits_per_site qubits; |phi_alpha> is the binary encoding of alpha,
// most significant bit first.
struct ScalarParams {
  std::size_t n_sites = 1;
  std::size_t qubits_per_site = 2;  // n_Q
  std::size_t boson_cutoff = 0;     // N_b; 0 selects site_dim() / 2
  double dimless_mass = 1.0;        // m a
  double coupling_lambda = 0.0;
  Boundary boundary = Boundary::kPeriodic;

  std::size_t site_dim() const { return std::size_t{1} << qubits_per_site; }
  std::size_t cutoff() const { return boson_cutoff == 0 ? site_dim() / 2 : boson_cutoff; }
  std::size_t total_qubits() const { return n_sites * qubits_per_site; }

  void validate() const;
};

struct SiteDigitization {
  std::vector<double> field_grid;  // phi_alpha
  std::vector<double> conj_grid;   // kappa_beta
  double delta_phi = 0.0;
  double delta_kappa = 0.0;
  // F_{alpha beta} = exp(i 2 pi (alpha - c)(beta - c) / N) / sqrt(N),
  // c = (N - 1) / 2.
  DenseOperator dft;
};

SiteDigitization make_site_digitization(std::size_t site_dim, double dimless_mass);
SiteDigitization make_site_digitization(const ScalarParams& params);

struct SiteOperators {
  DenseOperator phi;  // diag(phi_alpha)
  DenseOperator pi;   // m F Phi F^dagger
};

SiteOperators build_site_operators(const SiteDigitization& dig, double dimless_mass);

// Entry j is || ([Phi, Pi] - i) |e_j> || over the field basis.
std::vector<double> commutator_residual(const SiteDigitization& dig, double dimless_mass);

// The same residual on the lowest `n_states` eigenstates of the single-site
// oscillator Pi^2/2 + m^2 Phi^2/2.
std::vector<double> harmonic_commutator_residual(const SiteDigitization& dig,
                                                 double dimless_mass,
                                                 std::size_t n_states);

// H = sum_n [ Pi_n^2/2 + m^2 Phi_n^2/2 + (Phi_{n+1} - Phi_n)^2/2 + lambda/4! Phi_n^4 ]
DenseOperator build_scalar_hamiltonian(const ScalarParams& params);

// Kinetic (sum Pi^2/2) and potential (everything else, diagonal) parts.
struct ScalarHamiltonianTerms {
  DenseOperator kinetic;
  DenseOperator potential;
};
ScalarHamiltonianTerms scalar_hamiltonian_terms(const ScalarParams& params);

// Normal modes of the free quadratic form sum Pi^2/2 + Phi^T K Phi / 2.
struct ScalarModes {
  std::vector<double> frequencies;  // omega_k, ascending
  Eigen::MatrixXd vectors;          // columns: mode shapes over sites
  std::vector<double> momenta;      // |p_k| of the dominant Fourier component
};
ScalarModes scalar_modes(const ScalarParams& params);

// a_k = (omega_k Q_k + i P_k) / sqrt(2 omega_k) in the digitized basis.
DenseOperator scalar_mode_annihilator(const ScalarParams& params, std::size_t mode);

// a_k^dagger a_k with a_k = (omega_k Q_k + i P_k) / sqrt(2 omega_k), built
// from the digitized field operators. Positive semidefinite by construction.
DenseOperator scalar_mode_number_operator(const ScalarParams& params, std::size_t mode);

// 1 / (exp(beta E) - 1); throws NumericalError unless beta E > 0.
double bose_einstein_reference(double energy, double beta);

}  // namespace tqft

#endif  // TQFT_SCALAR_MODEL_HPP
