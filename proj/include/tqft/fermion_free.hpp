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

#ifndef TQFT_FERMION_FREE_HPP
#define TQFT_FERMION_FREE_HPP

#include <optional>
#include <vector>

#include "tqft/lattice.hpp"
#include "tqft/pauli.hpp"
#include "tqft/thermal_engine.hpp"

namespace tqft {

// Free Majorana lattice with a Wilson term. One qubit per site.
struct FermionLatticeParams {
  std::size_t n_sites = 4;
  double spacing = 1.0;   // a
  double mass = 0.0;      // m
  double wilson_r = 1.0;  // r in (0, 1]
  Boundary boundary = Boundary::kPeriodic;

  // Throws ValidationError naming the violated constraint.
  void validate() const;
};

// Quasiparticle modes of a quadratic fermion Hamiltonian:
// H = vacuum_energy + sum_k energies[k] * n_k.
struct ModeBasis {
  std::vector<double> energies;  // ascending, >= 0
  std::vector<QubitOperator> mode_number_ops;
  std::vector<QubitOperator> annihilators;
  double vacuum_energy = 0.0;
  // Lattice momentum in (-pi/a, pi/a]; unset for open boundaries.
  std::vector<std::optional<double>> momenta;
};

// H_0 = sum_n [ -i (a_n a_{n+1} + a_n^dag a_{n+1}^dag) / 2a
//              + m (a_n^dag a_n - 1/2)
//              - (r/2a) (a_n^dag (a_{n+1} - 2 a_n + a_{n-1}) + 1) ]
// mapped through Jordan-Wigner. The Wilson part is symmetrized as (W + W^dag)/2.
QubitOperator build_free_hamiltonian(const FermionLatticeParams& params);

// Bogoliubov diagonalization via the Majorana form H = c + (i/4) sum M_pq g_p g_q.
// Throws UnsupportedModelError when h is not quadratic. Momenta are assigned
// for periodic boundaries, after rotating degenerate modes into translation
// eigenstates.
ModeBasis diagonalize_modes(const QubitOperator& h, Boundary boundary,
                            double spacing = 1.0);
ModeBasis diagonalize_modes(const QubitOperator& h,
                            const FermionLatticeParams& params);

// 1 / (1 + exp(beta E)); returns 0 once beta E exceeds 700.
double fermi_dirac_reference(double energy, double beta);

// <n_k>_beta for every mode.
std::vector<double> mode_occupation(const ThermalEvaluator& thermal,
                                    const ModeBasis& basis, double beta);

}  // namespace tqft

#endif  // TQFT_FERMION_FREE_HPP
