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

#include "tqft/scalar_model.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "tqft/errors.hpp"

namespace tqft {

namespace {

// Laplacian of sum_bonds (Phi_i - Phi_j)^2 / 2 as a symmetric matrix.
Eigen::MatrixXd bond_laplacian(std::size_t n_sites, Boundary boundary) {
  const auto n = static_cast<Eigen::Index>(n_sites);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t s = 0; s < n_sites; ++s) {
    const auto next = neighbor(s, +1, n_sites, boundary);
    if (!next || *next == s) continue;
    const auto i = static_cast<Eigen::Index>(s);
    const auto j = static_cast<Eigen::Index>(*next);
    lap(i, i) += 1.0;
    lap(j, j) += 1.0;
    lap(i, j) -= 1.0;
    lap(j, i) -= 1.0;
  }
  return lap;
}

void check_capacity(const ScalarParams& params) {
  if (params.total_qubits() > kDenseQubitCap) {
    throw CapacityError("scalar register of " + std::to_string(params.total_qubits()) +
                        " qubits exceeds the dense cap of " +
                        std::to_string(kDenseQubitCap));
  }
}

std::vector<DenseOperator> embedded(const DenseOperator& site_op, std::size_t n_sites) {
  std::vector<DenseOperator> out;
  out.reserve(n_sites);
  for (std::size_t s = 0; s < n_sites; ++s) out.push_back(embed_site_operator(site_op, s, n_sites));
  return out;
}

}  // namespace

void ScalarParams::validate() const {
  if (n_sites < 1) throw ValidationError("n_sites must be >= 1");
  if (qubits_per_site < 1 || qubits_per_site > kDenseQubitCap) {
    throw ValidationError("n_Q must lie in [1, 14]");
  }
  if (!(cutoff() < site_dim())) {
    throw ValidationError("boson_cutoff N_b must satisfy N_phi > N_b (N_phi = 2^n_Q = " +
                          std::to_string(site_dim()) + ")");
  }
  if (!(dimless_mass > 0.0) || !std::isfinite(dimless_mass)) {
    throw ValidationError("dimless_mass m*a must be > 0");
  }
  if (!(coupling_lambda >= 0.0) || !std::isfinite(coupling_lambda)) {
    throw ValidationError("coupling_lambda must be >= 0");
  }
}

SiteDigitization make_site_digitization(const ScalarParams& params) {
  params.validate();
  return make_site_digitization(params.site_dim(), params.dimless_mass);
}

SiteDigitization make_site_digitization(std::size_t site_dim, double dimless_mass) {
  if (site_dim < 2 || !std::has_single_bit(site_dim)) {
    throw ValidationError("site dimension N_phi must be a power of two >= 2");
  }
  if (!(dimless_mass > 0.0)) throw ValidationError("dimless_mass m*a must be > 0");
  const double n = static_cast<double>(site_dim);
  const double center = 0.5 * (n - 1.0);
  SiteDigitization dig;
  dig.delta_phi = std::sqrt(2.0 * std::numbers::pi / (n * dimless_mass));
  dig.delta_kappa = std::sqrt(2.0 * std::numbers::pi * dimless_mass / n);
  for (std::size_t k = 0; k < site_dim; ++k) {
    dig.field_grid.push_back(dig.delta_phi * (double(k) - center));
    dig.conj_grid.push_back(dig.delta_kappa * (double(k) - center));
  }
  const auto d = static_cast<Eigen::Index>(site_dim);
  dig.dft.resize(d, d);
  const double norm = 1.0 / std::sqrt(n);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const double angle =
          2.0 * std::numbers::pi * (double(a) - center) * (double(b) - center) / n;
      dig.dft(a, b) = std::polar(norm, angle);
    }
  }
  return dig;
}

SiteOperators build_site_operators(const SiteDigitization& dig, double dimless_mass) {
  const auto d = static_cast<Eigen::Index>(dig.field_grid.size());
  SiteOperators ops;
  ops.phi = DenseOperator::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) ops.phi(k, k) = dig.field_grid[k];
  ops.pi = dimless_mass * dig.dft * ops.phi * dig.dft.adjoint();
  return ops;
}

std::vector<double> commutator_residual(const SiteDigitization& dig,
                                        double dimless_mass) {
  const SiteOperators ops = build_site_operators(dig, dimless_mass);
  const auto d = ops.phi.rows();
  const DenseOperator defect =
      commutator(ops.phi, ops.pi) - Complex(0.0, 1.0) * DenseOperator::Identity(d, d);
  std::vector<double> out;
  for (Eigen::Index j = 0; j < d; ++j) out.push_back(defect.col(j).norm());
  return out;
}

std::vector<double> harmonic_commutator_residual(const SiteDigitization& dig,
                                                 double dimless_mass,
                                                 std::size_t n_states) {
  const SiteOperators ops = build_site_operators(dig, dimless_mass);
  const auto d = ops.phi.rows();
  if (n_states > static_cast<std::size_t>(d)) {
    throw IndexError("more harmonic states requested than the site dimension");
  }
  const DenseOperator h_site =
      0.5 * ops.pi * ops.pi + 0.5 * dimless_mass * dimless_mass * ops.phi * ops.phi;
  const Eigensystem es = eigendecompose(h_site);
  const DenseOperator defect =
      commutator(ops.phi, ops.pi) - Complex(0.0, 1.0) * DenseOperator::Identity(d, d);
  std::vector<double> out;
  for (std::size_t k = 0; k < n_states; ++k) {
    out.push_back((defect * es.vectors.col(static_cast<Eigen::Index>(k))).norm());
  }
  return out;
}

ScalarHamiltonianTerms scalar_hamiltonian_terms(const ScalarParams& params) {
  params.validate();
  check_capacity(params);
  const SiteOperators site =
      build_site_operators(make_site_digitization(params), params.dimless_mass);
  const std::size_t n = params.n_sites;
  const double m2 = params.dimless_mass * params.dimless_mass;
  const std::vector<DenseOperator> phi = embedded(site.phi, n);

  const DenseOperator phi2 = site.phi * site.phi;
  const DenseOperator onsite =
      0.5 * m2 * phi2 + (params.coupling_lambda / 24.0) * phi2 * phi2;
  const DenseOperator kinetic_site = 0.5 * site.pi * site.pi;

  ScalarHamiltonianTerms terms;
  const auto dim = phi.front().rows();
  terms.kinetic = DenseOperator::Zero(dim, dim);
  terms.potential = DenseOperator::Zero(dim, dim);
  for (std::size_t s = 0; s < n; ++s) {
    terms.kinetic += embed_site_operator(kinetic_site, s, n);
    terms.potential += embed_site_operator(onsite, s, n);
    const auto next = neighbor(s, +1, n, params.boundary);
    if (next && *next != s) {
      const DenseOperator diff = phi[*next] - phi[s];
      terms.potential += 0.5 * diff * diff;
    }
  }
  return terms;
}

DenseOperator build_scalar_hamiltonian(const ScalarParams& params) {
  const ScalarHamiltonianTerms t = scalar_hamiltonian_terms(params);
  return t.kinetic + t.potential;
}

ScalarModes scalar_modes(const ScalarParams& params) {
  params.validate();
  const auto n = static_cast<Eigen::Index>(params.n_sites);
  Eigen::MatrixXd k = bond_laplacian(params.n_sites, params.boundary);
  k.diagonal().array() += params.dimless_mass * params.dimless_mass;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k);
  ScalarModes modes;
  modes.vectors = solver.eigenvectors();
  for (Eigen::Index i = 0; i < n; ++i) {
    modes.frequencies.push_back(std::sqrt(solver.eigenvalues()(i)));
    double best = -1.0;
    Eigen::Index best_q = 0;
    for (Eigen::Index q = 0; q < n; ++q) {
      Complex f = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        f += std::polar(1.0, 2.0 * std::numbers::pi * double(q * j) / double(n)) *
             modes.vectors(j, i);
      }
      if (std::norm(f) > best + 1e-9) {
        best = std::norm(f);
        best_q = q;
      }
    }
    const Eigen::Index folded = std::min(best_q, n - best_q);
    modes.momenta.push_back(2.0 * std::numbers::pi * double(folded) / double(n));
  }
  return modes;
}

DenseOperator scalar_mode_number_operator(const ScalarParams& params, std::size_t mode) {
  const DenseOperator a = scalar_mode_annihilator(params, mode);
  return a.adjoint() * a;
}

DenseOperator scalar_mode_annihilator(const ScalarParams& params, std::size_t mode) {
  params.validate();
  check_capacity(params);
  if (mode >= params.n_sites) {
    throw IndexError("mode index " + std::to_string(mode) + " >= n_sites");
  }
  const ScalarModes modes = scalar_modes(params);
  const SiteOperators site =
      build_site_operators(make_site_digitization(params), params.dimless_mass);
  const auto k = static_cast<Eigen::Index>(mode);
  const double omega = modes.frequencies[mode];
  const std::size_t n = params.n_sites;
  DenseOperator q;
  DenseOperator p;
  for (std::size_t s = 0; s < n; ++s) {
    const double w = modes.vectors(static_cast<Eigen::Index>(s), k);
    DenseOperator phi_s = embed_site_operator(site.phi, s, n);
    DenseOperator pi_s = embed_site_operator(site.pi, s, n);
    if (s == 0) {
      q = w * phi_s;
      p = w * pi_s;
    } else {
      q += w * phi_s;
      p += w * pi_s;
    }
  }
  return (omega * q + Complex(0.0, 1.0) * p) / std::sqrt(2.0 * omega);
}

double bose_einstein_reference(double energy, double beta) {
  const double x = beta * energy;
  if (!(x > 0.0)) {
    throw NumericalError("Bose-Einstein occupation diverges for beta*E <= 0");
  }
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

}  // namespace tqft
