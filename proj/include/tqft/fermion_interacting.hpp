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

#ifndef TQFT_FERMION_INTERACTING_HPP
#define TQFT_FERMION_INTERACTING_HPP

#include <vector>

#include "tqft/fermion_free.hpp"
#include "tqft/pauli.hpp"

namespace tqft {

// Lattice Majorana field coupled to a homogeneous background Majorana mode
// psi_B held on one extra qubit (index n_sites). Sector 0 is the background
// unoccupied (qubit |0>), sector 1 occupied.
struct InteractingParams {
  FermionLatticeParams lattice;  // lattice.mass holds the bare m_0
  double coupling_g = 0.0;
  double background_mass = 0.0;  // M

  void validate() const;
  std::size_t n_qubits() const { return lattice.n_sites + 1; }
};

// psi = ((c + c^dag)/sqrt2, i(c - c^dag)/sqrt2) for a ladder pair (c, c^dag);
// returns psibar psi = psi^T gamma^0 psi with gamma^0 = sigma_y, which
// equals 2 c^dag c - 1.
QubitOperator majorana_scalar_bilinear(const QubitOperator& annihilator,
                                       const QubitOperator& creator);

// H = H_0 + (M/2) psibar_B psi_B + (g/4) sum_n (psibar psi)_n (psibar_B psi_B)
// on n_sites + 1 qubits.
QubitOperator build_interacting_hamiltonian(const InteractingParams& params);

// Restriction of a Hamiltonian that is diagonal on its last qubit to the
// sector where that qubit reads `occupied`. Throws UnsupportedModelError if
// any term flips the last qubit.
QubitOperator restrict_to_sector(const QubitOperator& h, bool occupied);

struct SectorSpectrum {
  double vacuum_energy = 0.0;         // E_Omega, global ground energy
  double first_mass_eigenstate = 0.0;  // E_0
  double effective_mass = 0.0;        // m~ = E_0 - E_Omega
  double sector0_vacuum = 0.0;
  double sector1_vacuum = 0.0;
  std::vector<double> sector0_energies;  // E_p(m~)
  std::vector<double> sector1_energies;  // E_p(m~ + g)
  ModeBasis sector0_modes;
  ModeBasis sector1_modes;
};

SectorSpectrum sector_spectrum(const InteractingParams& params);
SectorSpectrum sector_spectrum(const QubitOperator& h, const InteractingParams& params);

struct PartitionFunctions {
  double z0 = 0.0;
  double z1 = 0.0;
  double z = 0.0;
  double log_z0 = 0.0;
  double log_z1 = 0.0;
  double log_z = 0.0;
};

// Z^s = exp(-beta E^s_Omega) prod_p (1 + exp(-beta E^s_p)), evaluated in log
// space; Z = Z^0 + Z^1.
PartitionFunctions sector_partition_functions(const SectorSpectrum& spec, double beta);

struct QuasiDistributions {
  std::vector<double> f0;
  std::vector<double> f1;
  double z0 = 0.0;
  double z1 = 0.0;
  double z = 0.0;
};

// f^s_p = (Z^s / Z) / (1 + exp(beta E^s_p)).
QuasiDistributions quasiparticle_reference(const SectorSpectrum& spec, double beta);

struct SectorNumberOperators {
  std::vector<QubitOperator> ops0;
  std::vector<QubitOperator> ops1;
  // b_p P_s, so that ops_s[p] = factors_s[p]^dagger factors_s[p].
  std::vector<QubitOperator> factors0;
  std::vector<QubitOperator> factors1;
};

// n^s_p projected onto background sector s, on n_sites + 1 qubits.
SectorNumberOperators quasiparticle_number_operators(const InteractingParams& params);
SectorNumberOperators quasiparticle_number_operators(const SectorSpectrum& spec,
                                                     std::size_t n_sites);

// Appends identity letters up to `n_qubits`.
QubitOperator extend_register(const QubitOperator& op, std::size_t n_qubits);

}  // namespace tqft

#endif  // TQFT_FERMION_INTERACTING_HPP
