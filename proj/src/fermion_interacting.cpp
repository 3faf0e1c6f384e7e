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

#include "tqft/fermion_interacting.hpp"

#include <algorithm>
#include <cmath>

#include "tqft/errors.hpp"

namespace tqft {

namespace {

double log_add_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// 1 / (1 + exp(x)) without overflow.
double logistic_complement(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double sector_log_partition(double vacuum, const std::vector<double>& energies,
                            double beta) {
  double log_z = -beta * vacuum;
  for (double e : energies) log_z += std::log1p(std::exp(-beta * e));
  return log_z;
}

QubitOperator background_projector(std::size_t n_qubits, bool occupied) {
  const QubitOperator z = QubitOperator::single(n_qubits, n_qubits - 1, Pauli::Z, 0.5);
  const QubitOperator half = QubitOperator::identity(n_qubits, 0.5);
  return occupied ? half - z : half + z;
}

}  // namespace

void InteractingParams::validate() const {
  lattice.validate();
  if (lattice.n_sites + 1 > kMaxQubits) {
    throw ValidationError("n_sites + 1 background qubit must be <= 64");
  }
  if (!std::isfinite(coupling_g)) throw ValidationError("coupling_g must be finite");
  if (!std::isfinite(background_mass)) {
    throw ValidationError("background_mass M must be finite");
  }
}

QubitOperator extend_register(const QubitOperator& op, std::size_t n_qubits) {
  if (n_qubits < op.n_qubits()) {
    throw DimensionError("extend_register cannot shrink a register");
  }
  QubitOperator out(n_qubits);
  for (const auto& [p, c] : op.terms()) {
    out.accumulate(PauliString(n_qubits, p.x_mask(), p.z_mask()), c);
  }
  return out;
}

QubitOperator majorana_scalar_bilinear(const QubitOperator& annihilator,
                                       const QubitOperator& creator) {
  const double s = 1.0 / std::sqrt(2.0);
  const QubitOperator psi1 = (annihilator + creator) * s;
  const QubitOperator psi2 = (annihilator - creator) * Complex(0.0, s);
  // psi^T sigma_y psi = -i (psi1 psi2 - psi2 psi1)
  return ((psi1 * psi2 - psi2 * psi1) * Complex(0.0, -1.0)).hermitian_part();
}

QubitOperator build_interacting_hamiltonian(const InteractingParams& params) {
  params.validate();
  const std::size_t n_sites = params.lattice.n_sites;
  const std::size_t n = params.n_qubits();
  const QubitOperator background =
      majorana_scalar_bilinear(jordan_wigner_ladder(n_sites, n, false),
                               jordan_wigner_ladder(n_sites, n, true));

  QubitOperator h = extend_register(build_free_hamiltonian(params.lattice), n);
  h += background * (0.5 * params.background_mass);
  QubitOperator field(n);
  for (std::size_t s = 0; s < n_sites; ++s) {
    field += majorana_scalar_bilinear(jordan_wigner_ladder(s, n, false),
                                      jordan_wigner_ladder(s, n, true));
  }
  h += (field * background) * (0.25 * params.coupling_g);
  return canonicalize(h);
}

QubitOperator restrict_to_sector(const QubitOperator& h, bool occupied) {
  const std::size_t n = h.n_qubits();
  if (n < 2) throw DimensionError("sector restriction needs at least two qubits");
  const std::size_t last = n - 1;
  const std::uint64_t keep = (std::uint64_t{1} << last) - 1;
  QubitOperator out(last);
  for (const auto& [p, c] : h.terms()) {
    const Pauli l = p.letter(last);
    if (l == Pauli::X || l == Pauli::Y) {
      throw UnsupportedModelError("term " + p.letters() +
                                  " mixes background sectors");
    }
    const double sign = (l == Pauli::Z && occupied) ? -1.0 : 1.0;
    out.accumulate(PauliString(last, p.x_mask() & keep, p.z_mask() & keep), sign * c);
  }
  return canonicalize(out);
}

SectorSpectrum sector_spectrum(const InteractingParams& params) {
  return sector_spectrum(build_interacting_hamiltonian(params), params);
}

SectorSpectrum sector_spectrum(const QubitOperator& h, const InteractingParams& params) {
  if (h.n_qubits() != params.n_qubits()) {
    throw DimensionError("Hamiltonian register does not match n_sites + 1");
  }
  SectorSpectrum spec;
  spec.sector0_modes = diagonalize_modes(restrict_to_sector(h, false), params.lattice);
  spec.sector1_modes = diagonalize_modes(restrict_to_sector(h, true), params.lattice);
  spec.sector0_vacuum = spec.sector0_modes.vacuum_energy;
  spec.sector1_vacuum = spec.sector1_modes.vacuum_energy;
  spec.sector0_energies = spec.sector0_modes.energies;
  spec.sector1_energies = spec.sector1_modes.energies;
  spec.vacuum_energy = std::min(spec.sector0_vacuum, spec.sector1_vacuum);
  spec.first_mass_eigenstate =
      spec.sector0_vacuum +
      *std::min_element(spec.sector0_energies.begin(), spec.sector0_energies.end());
  spec.effective_mass = spec.first_mass_eigenstate - spec.vacuum_energy;
  return spec;
}

PartitionFunctions sector_partition_functions(const SectorSpectrum& spec, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ValidationError("beta must be finite and >= 0");
  }
  PartitionFunctions pf;
  pf.log_z0 = sector_log_partition(spec.sector0_vacuum, spec.sector0_energies, beta);
  pf.log_z1 = sector_log_partition(spec.sector1_vacuum, spec.sector1_energies, beta);
  pf.log_z = log_add_exp(pf.log_z0, pf.log_z1);
  pf.z0 = std::exp(pf.log_z0);
  pf.z1 = std::exp(pf.log_z1);
  pf.z = pf.z0 + pf.z1;
  return pf;
}

QuasiDistributions quasiparticle_reference(const SectorSpectrum& spec, double beta) {
  const PartitionFunctions pf = sector_partition_functions(spec, beta);
  const double w0 = logistic_complement(pf.log_z1 - pf.log_z0);
  const double w1 = logistic_complement(pf.log_z0 - pf.log_z1);
  QuasiDistributions out;
  out.z0 = pf.z0;
  out.z1 = pf.z1;
  out.z = pf.z;
  for (double e : spec.sector0_energies) out.f0.push_back(w0 * fermi_dirac_reference(e, beta));
  for (double e : spec.sector1_energies) out.f1.push_back(w1 * fermi_dirac_reference(e, beta));
  return out;
}

SectorNumberOperators quasiparticle_number_operators(const InteractingParams& params) {
  return quasiparticle_number_operators(sector_spectrum(params), params.lattice.n_sites);
}

SectorNumberOperators quasiparticle_number_operators(const SectorSpectrum& spec,
                                                     std::size_t n_sites) {
  const std::size_t n = n_sites + 1;
  const QubitOperator p0 = background_projector(n, false);
  const QubitOperator p1 = background_projector(n, true);
  SectorNumberOperators out;
  for (const auto& op : spec.sector0_modes.mode_number_ops) {
    out.ops0.push_back(extend_register(op, n) * p0);
  }
  for (const auto& op : spec.sector1_modes.mode_number_ops) {
    out.ops1.push_back(extend_register(op, n) * p1);
  }
  for (const auto& b : spec.sector0_modes.annihilators) {
    out.factors0.push_back(extend_register(b, n) * p0);
  }
  for (const auto& b : spec.sector1_modes.annihilators) {
    out.factors1.push_back(extend_register(b, n) * p1);
  }
  return out;
}

}  // namespace tqft
