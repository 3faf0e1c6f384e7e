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

#include "tqft/fermion_free.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "tqft/errors.hpp"

namespace tqft {

namespace {

struct MajoranaPair {
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  double energy;
};

void orthogonalize(Eigen::VectorXd& x, const std::vector<Eigen::VectorXd>& basis) {
  // Two passes of Gram-Schmidt keep the residual overlap at rounding level.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) x -= b.dot(x) * b;
  }
}

// Splits a real antisymmetric M into 2x2 blocks: M u_k = -e_k v_k,
// M v_k = e_k u_k with e_k >= 0 and {u_k, v_k} orthonormal.
std::vector<MajoranaPair> antisymmetric_blocks(const Eigen::MatrixXd& m) {
  const Eigen::Index dim = m.rows();
  const Eigen::MatrixXd gram = m.transpose() * m;  // = -M^2
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double zero_tol = 1e-9 * scale;

  std::vector<Eigen::VectorXd> accepted;
  std::vector<MajoranaPair> pairs;
  std::vector<Eigen::VectorXd> zero_space;
  for (Eigen::Index i = dim - 1; i >= 0; --i) {
    Eigen::VectorXd u = solver.eigenvectors().col(i);
    orthogonalize(u, accepted);
    orthogonalize(u, zero_space);
    if (u.norm() < 0.5) continue;
    u.normalize();
    const Eigen::VectorXd mu = m * u;
    const double e = mu.norm();
    if (e <= zero_tol) {
      zero_space.push_back(u);
      continue;
    }
    Eigen::VectorXd v = -mu / e;
    orthogonalize(v, accepted);
    v.normalize();
    accepted.push_back(u);
    accepted.push_back(v);
    pairs.push_back({u, v, u.dot(m * v)});
  }
  // Kernel vectors carry zero energy; any pairing is valid.
  for (std::size_t k = 0; k + 1 < zero_space.size(); k += 2) {
    pairs.push_back({zero_space[k], zero_space[k + 1], 0.0});
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const MajoranaPair& a, const MajoranaPair& b) {
                     return a.energy < b.energy;
                   });
  return pairs;
}

// Mode amplitudes on (a_0..a_{N-1}, a_0^dag..a_{N-1}^dag).
Eigen::VectorXcd ladder_amplitudes(const MajoranaPair& pair, std::size_t n_sites) {
  const Complex i(0.0, 1.0);
  Eigen::VectorXcd phi(2 * static_cast<Eigen::Index>(n_sites));
  for (std::size_t j = 0; j < n_sites; ++j) {
    const Complex w_even = 0.5 * Complex(pair.u(2 * j), pair.v(2 * j));
    const Complex w_odd = 0.5 * Complex(pair.u(2 * j + 1), pair.v(2 * j + 1));
    phi(static_cast<Eigen::Index>(j)) = w_even - i * w_odd;
    phi(static_cast<Eigen::Index>(n_sites + j)) = w_even + i * w_odd;
  }
  return phi;
}

Eigen::VectorXcd translate(const Eigen::VectorXcd& phi, std::size_t n_sites) {
  Eigen::VectorXcd out(phi.size());
  const auto n = static_cast<Eigen::Index>(n_sites);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = (j + n - 1) % n;
    out(j) = phi(src);
    out(n + j) = phi(n + src);
  }
  return out;
}

// Rotates a degenerate group into simultaneous eigenvectors of translation.
void diagonalize_translation(std::vector<Eigen::VectorXcd>& group, std::size_t n_sites) {
  const auto g = static_cast<Eigen::Index>(group.size());
  Eigen::MatrixXcd t(g, g);
  for (Eigen::Index k = 0; k < g; ++k) {
    for (Eigen::Index l = 0; l < g; ++l) {
      t(k, l) = group[k].dot(translate(group[l], n_sites));
    }
  }
  // cos(theta) + c sin(theta) separates theta from -theta for generic c.
  const Complex i(0.0, 1.0);
  const double c = 0.6180339887;
  const Eigen::MatrixXcd mix =
      0.5 * (t + t.adjoint()) + c * (t - t.adjoint()) / (2.0 * i);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mix);
  std::vector<Eigen::VectorXcd> rotated(group.size(),
                                        Eigen::VectorXcd::Zero(group[0].size()));
  for (Eigen::Index k = 0; k < g; ++k) {
    for (Eigen::Index l = 0; l < g; ++l) {
      rotated[k] += solver.eigenvectors()(l, k) * group[l];
    }
  }
  group = std::move(rotated);
}

double dominant_momentum(const Eigen::VectorXcd& phi, std::size_t n_sites,
                         double spacing) {
  const auto n = static_cast<Eigen::Index>(n_sites);
  double best = -1.0;
  Eigen::Index best_q = 0;
  for (Eigen::Index q = 0; q < n; ++q) {
    Complex fa = 0.0;
    Complex fb = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * double(q * j) / double(n));
      fa += phase * phi(j);
      fb += phase * phi(n + j);
    }
    const double power = std::norm(fa) + std::norm(fb);
    if (power > best + 1e-9) {
      best = power;
      best_q = q;
    }
  }
  const Eigen::Index signed_q = 2 * best_q <= n ? best_q : best_q - n;
  return 2.0 * std::numbers::pi * double(signed_q) / (double(n) * spacing);
}

}  // namespace

void FermionLatticeParams::validate() const {
  if (n_sites < 2) throw ValidationError("n_sites must be >= 2");
  if (n_sites > kMaxQubits) throw ValidationError("n_sites must be <= 64");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw ValidationError("spacing a must be > 0");
  }
  if (!(mass >= 0.0) || !std::isfinite(mass)) {
    throw ValidationError("mass m must be >= 0");
  }
  if (!(wilson_r > 0.0 && wilson_r <= 1.0)) {
    throw ValidationError("wilson_r must lie in (0, 1]");
  }
}

QubitOperator build_free_hamiltonian(const FermionLatticeParams& params) {
  params.validate();
  const std::size_t n = params.n_sites;
  const double a = params.spacing;
  std::vector<QubitOperator> ann;
  std::vector<QubitOperator> cre;
  for (std::size_t s = 0; s < n; ++s) {
    ann.push_back(jordan_wigner_ladder(s, n, false));
    cre.push_back(jordan_wigner_ladder(s, n, true));
  }
  const QubitOperator id = QubitOperator::identity(n);

  QubitOperator hopping(n);
  QubitOperator mass(n);
  QubitOperator wilson(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto next = neighbor(s, +1, n, params.boundary);
    const auto prev = neighbor(s, -1, n, params.boundary);
    if (next) {
      hopping += (ann[s] * ann[*next] + cre[s] * cre[*next]) * Complex(0.0, -0.5 / a);
    }
    mass += (cre[s] * ann[s] - 0.5 * id) * params.mass;

    QubitOperator lap = -2.0 * ann[s];
    if (next) lap += ann[*next];
    if (prev) lap += ann[*prev];
    wilson += (cre[s] * lap + id) * (-params.wilson_r / (2.0 * a));
  }
  wilson = (wilson + wilson.adjoint()) * 0.5;
  return canonicalize(hopping + mass + wilson);
}

ModeBasis diagonalize_modes(const QubitOperator& h,
                            const FermionLatticeParams& params) {
  return diagonalize_modes(h, params.boundary, params.spacing);
}

ModeBasis diagonalize_modes(const QubitOperator& h, Boundary boundary,
                            double spacing) {
  const std::size_t n = h.n_qubits();
  if (n == 0) throw UnsupportedModelError("empty register");
  const std::size_t n_maj = 2 * n;

  // gamma_p gamma_q = phase * S_pq for p < q.
  struct PairSlot {
    std::size_t p;
    std::size_t q;
    Complex phase;
  };
  std::map<PauliString, PairSlot> slots;
  std::vector<QubitOperator> majoranas;
  for (std::size_t p = 0; p < n_maj; ++p) majoranas.push_back(jordan_wigner_majorana(p, n));
  for (std::size_t p = 0; p < n_maj; ++p) {
    const PauliTerm gp = majoranas[p].term_list().front();
    for (std::size_t q = p + 1; q < n_maj; ++q) {
      const PauliTerm prod = pauli_multiply(gp, majoranas[q].term_list().front());
      slots.emplace(prod.letters, PairSlot{p, q, prod.coefficient});
    }
  }

  double constant = 0.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_maj),
                                            static_cast<Eigen::Index>(n_maj));
  for (const auto& [p, c] : h.terms()) {
    if (p.is_identity()) {
      if (std::abs(c.imag()) > 1e-10) {
        throw UnsupportedModelError("Hamiltonian constant is not real");
      }
      constant = c.real();
      continue;
    }
    const auto it = slots.find(p);
    if (it == slots.end()) {
      if (std::abs(c) <= 1e-12) continue;
      throw UnsupportedModelError("term " + p.letters() +
                                  " is not quadratic in the ladder operators");
    }
    // c S = (i/2) M_pq gamma_p gamma_q  =>  M_pq = -2i c / phase
    const Complex mpq = Complex(0.0, -2.0) * c / it->second.phase;
    if (std::abs(mpq.imag()) > 1e-10 * (1.0 + std::abs(mpq))) {
      throw UnsupportedModelError("quadratic form is not hermitian at term " +
                                  p.letters());
    }
    const auto pi = static_cast<Eigen::Index>(it->second.p);
    const auto qi = static_cast<Eigen::Index>(it->second.q);
    m(pi, qi) = mpq.real();
    m(qi, pi) = -mpq.real();
  }

  const std::vector<MajoranaPair> pairs = antisymmetric_blocks(m);
  std::vector<Eigen::VectorXcd> amplitudes;
  ModeBasis basis;
  basis.vacuum_energy = constant;
  for (const auto& pr : pairs) {
    basis.energies.push_back(pr.energy);
    basis.vacuum_energy -= 0.5 * pr.energy;
    amplitudes.push_back(ladder_amplitudes(pr, n));
  }

  if (boundary == Boundary::kPeriodic) {
    const double scale = std::max(1.0, basis.energies.empty() ? 1.0 : basis.energies.back());
    std::size_t start = 0;
    while (start < amplitudes.size()) {
      std::size_t end = start + 1;
      while (end < amplitudes.size() &&
             std::abs(basis.energies[end] - basis.energies[start]) <= 1e-8 * scale) {
        ++end;
      }
      if (end - start > 1 && basis.energies[start] > 1e-9 * scale) {
        std::vector<Eigen::VectorXcd> group(amplitudes.begin() + start,
                                            amplitudes.begin() + end);
        diagonalize_translation(group, n);
        std::copy(group.begin(), group.end(), amplitudes.begin() + start);
      }
      start = end;
    }
  }

  for (const auto& phi : amplitudes) {
    QubitOperator b(n);
    for (std::size_t j = 0; j < n; ++j) {
      b += jordan_wigner_ladder(j, n, false) * phi(static_cast<Eigen::Index>(j));
      b += jordan_wigner_ladder(j, n, true) * phi(static_cast<Eigen::Index>(n + j));
    }
    basis.mode_number_ops.push_back((b.adjoint() * b).hermitian_part());
    basis.annihilators.push_back(std::move(b));
    if (boundary == Boundary::kPeriodic) {
      basis.momenta.emplace_back(dominant_momentum(phi, n, spacing));
    } else {
      basis.momenta.emplace_back(std::nullopt);
    }
  }
  return basis;
}

double fermi_dirac_reference(double energy, double beta) {
  const double x = beta * energy;
  if (x > 700.0) return 0.0;
  if (x < -700.0) return 1.0;
  return 1.0 / (1.0 + std::exp(x));
}

std::vector<double> mode_occupation(const ThermalEvaluator& thermal,
                                    const ModeBasis& basis, double beta) {
  std::vector<Observable> obs;
  obs.reserve(basis.annihilators.size());
  for (const auto& b : basis.annihilators) {
    if ((std::size_t{1} << b.n_qubits()) != thermal.dim) {
      throw DimensionError("mode operators and Hamiltonian live on different registers");
    }
    obs.emplace_back(GramObservable{b});
  }
  return thermal.evaluate(obs, beta).values;
}

}  // namespace tqft
