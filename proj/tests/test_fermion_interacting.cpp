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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "tqft/dense.hpp"
#include "tqft/errors.hpp"
#include "tqft/fermion_interacting.hpp"

using tqft::Boundary;
using tqft::InteractingParams;
using tqft::QubitOperator;

namespace {

InteractingParams model(std::size_t n, double m0, double g, double big_m,
                        Boundary b = Boundary::kPeriodic) {
  InteractingParams p;
  p.lattice.n_sites = n;
  p.lattice.mass = m0;
  p.lattice.boundary = b;
  p.coupling_g = g;
  p.background_mass = big_m;
  return p;
}

// psi = ((c + c^dag)/sqrt2, i(c - c^dag)/sqrt2); psibar psi = psi^T sigma_y psi.
oracle::Matrix scalar_bilinear_oracle(const oracle::Matrix& c) {
  const oracle::Complex i(0.0, 1.0);
  const oracle::Matrix cd = c.adjoint();
  const oracle::Matrix psi1 = (c + cd) / std::sqrt(2.0);
  const oracle::Matrix psi2 = i * (c - cd) / std::sqrt(2.0);
  return -i * psi1 * psi2 + i * psi2 * psi1;
}

oracle::Matrix lattice_oracle(const tqft::FermionLatticeParams& p, std::size_t n_total) {
  // Free part on the first n_sites qubits, identity on the background.
  const oracle::Matrix h0 = oracle::dense(tqft::build_free_hamiltonian(p));
  return oracle::kron(h0, oracle::identity(std::size_t{1} << (n_total - p.n_sites)));
}

oracle::Matrix interacting_oracle(const InteractingParams& p) {
  const std::size_t n = p.lattice.n_sites;
  const std::size_t nq = n + 1;
  const oracle::Matrix bb = scalar_bilinear_oracle(oracle::ladder(n, nq, false));
  oracle::Matrix h = lattice_oracle(p.lattice, nq) + 0.5 * p.background_mass * bb;
  for (std::size_t s = 0; s < n; ++s) {
    h += 0.25 * p.coupling_g * scalar_bilinear_oracle(oracle::ladder(s, nq, false)) * bb;
  }
  return h;
}

oracle::Matrix background_projector(std::size_t nq, bool occupied) {
  oracle::Matrix proj(2, 2);
  proj << (occupied ? 0 : 1), 0, 0, (occupied ? 1 : 0);
  return oracle::kron(oracle::identity(std::size_t{1} << (nq - 1)), proj);
}

}  // namespace

TEST_CASE("scalar bilinear of one mode") {
  const QubitOperator c = tqft::jordan_wigner_ladder(0, 1, false);
  const QubitOperator cd = tqft::jordan_wigner_ladder(0, 1, true);
  const QubitOperator bb = tqft::majorana_scalar_bilinear(c, cd);
  const oracle::Matrix d = tqft::to_dense(bb);
  CHECK(oracle::max_abs(d - scalar_bilinear_oracle(oracle::ladder(0, 1, false))) < 1e-15);
  CHECK(oracle::max_abs(d - d.adjoint()) < 1e-15);
  const Eigen::VectorXd ev = oracle::spectrum(d);
  CHECK(std::abs(ev(0) + ev(1)) < 1e-15);
  CHECK(std::abs(ev(1)) > 0.5);
}

TEST_CASE("interacting Hamiltonian matches the dense construction") {
  for (std::size_t n : {2, 3}) {
    for (double g : {0.0, 0.5, 1.0, -0.7}) {
      for (double big_m : {0.0, 1.0}) {
        for (Boundary b : {Boundary::kPeriodic, Boundary::kOpen}) {
          const auto p = model(n, 0.2, g, big_m, b);
          const QubitOperator h = tqft::build_interacting_hamiltonian(p);
          REQUIRE(h.n_qubits() == n + 1);
          CHECK(h.is_hermitian(1e-12));
          const oracle::Matrix d = tqft::to_dense(h);
          CHECK(oracle::max_abs(d - d.adjoint()) <= 1e-12);
          CHECK(oracle::max_abs(d - interacting_oracle(p)) < 1e-13);
        }
      }
    }
  }
}

TEST_CASE("four-site model uses one extra background qubit") {
  const auto p = model(4, 0.2, 1.0, 1.0);
  CHECK(p.n_qubits() == 5);
  CHECK(tqft::build_interacting_hamiltonian(p).n_qubits() == 5);
}

TEST_CASE("zero coupling splits the free spectrum by the background mass") {
  const double big_m = 0.8;
  const auto p = model(2, 0.3, 0.0, big_m);
  const Eigen::VectorXd full = oracle::spectrum(tqft::to_dense(tqft::build_interacting_hamiltonian(p)));
  const Eigen::VectorXd free = oracle::spectrum(tqft::to_dense(tqft::build_free_hamiltonian(p.lattice)));
  std::vector<double> expect;
  for (Eigen::Index k = 0; k < free.size(); ++k) {
    expect.push_back(free(k) - 0.5 * big_m);
    expect.push_back(free(k) + 0.5 * big_m);
  }
  std::sort(expect.begin(), expect.end());
  REQUIRE(static_cast<std::size_t>(full.size()) == expect.size());
  for (std::size_t k = 0; k < expect.size(); ++k) CHECK(std::abs(full(k) - expect[k]) < 1e-12);
}

TEST_CASE("sector restriction rejects background-flipping terms") {
  CHECK_THROWS_AS(tqft::restrict_to_sector(QubitOperator::from_label("ZX"), false),
                  tqft::UnsupportedModelError);
  const QubitOperator r = tqft::restrict_to_sector(QubitOperator::from_label("XZ", 2.0), true);
  CHECK(r.n_qubits() == 1);
  CHECK(std::abs(r.coefficient(tqft::PauliString::from_letters("X")) + 2.0) < 1e-15);
}

TEST_CASE("sector spectrum invariants") {
  for (double g : {0.0, 0.5, 1.0}) {
    const auto p = model(4, 0.2, g, 1.0);
    const QubitOperator h = tqft::build_interacting_hamiltonian(p);
    const auto spec = tqft::sector_spectrum(h, p);
    CHECK(spec.sector0_energies.size() == 4);
    CHECK(spec.sector1_energies.size() == 4);
    CHECK(spec.effective_mass == spec.first_mass_eigenstate - spec.vacuum_energy);
    const Eigen::VectorXd levels = oracle::spectrum(oracle::dense(h));
    CHECK(std::abs(spec.vacuum_energy - levels(0)) < 1e-10);
    // E_0 is the lowest one-quasiparticle level of the unoccupied-background sector.
    const oracle::Matrix p0 = background_projector(5, false);
    const Eigen::VectorXd sector0 =
        oracle::spectrum(p0 * oracle::dense(h) * p0 + 1e3 * (oracle::identity(32) - p0));
    CHECK(std::abs(spec.sector0_vacuum - sector0(0)) < 1e-10);
    CHECK(std::abs(spec.first_mass_eigenstate - sector0(1)) < 1e-10);
  }
}

TEST_CASE("sector partition functions at infinite temperature and zero coupling") {
  const auto p = model(4, 0.2, 1.0, 1.0);
  const auto spec = tqft::sector_spectrum(p);
  const auto pf0 = tqft::sector_partition_functions(spec, 0.0);
  CHECK(pf0.z0 == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(pf0.z1 == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(pf0.z == doctest::Approx(32.0).epsilon(1e-14));

  const auto sym = tqft::sector_spectrum(model(4, 0.2, 0.0, 0.0));
  for (double beta : {0.25, 1.0, 4.0}) {
    const auto pf = tqft::sector_partition_functions(sym, beta);
    CHECK(std::abs(pf.z0 - pf.z1) <= 1e-12 * pf.z0);
    CHECK(std::abs(pf.z - 2.0 * pf.z0) <= 1e-12 * pf.z);
  }
  CHECK_THROWS_AS(tqft::sector_partition_functions(spec, -1.0), tqft::ValidationError);
}

TEST_CASE("sector partition sum equals the dense trace") {
  for (std::size_t n : {2, 4}) {
    for (double g : {0.0, 0.5, 1.0}) {
      const auto p = model(n, 0.2, g, 1.0);
      const QubitOperator h = tqft::build_interacting_hamiltonian(p);
      const auto spec = tqft::sector_spectrum(h, p);
      const Eigen::VectorXd levels = oracle::spectrum(oracle::dense(h));
      for (double beta : {0.25, 1.0, 4.0}) {
        double trace = 0.0;
        for (Eigen::Index k = 0; k < levels.size(); ++k) trace += std::exp(-beta * levels(k));
        const auto pf = tqft::sector_partition_functions(spec, beta);
        CHECK(std::abs(pf.z - trace) <= 1e-8 * trace);
        CHECK(std::abs(std::log(trace) - pf.log_z) <= 1e-10);
      }
    }
  }
}

TEST_CASE("partition functions stay finite in log space") {
  const auto spec = tqft::sector_spectrum(model(4, 0.2, 1.0, 1.0));
  const auto pf = tqft::sector_partition_functions(spec, 1e4);
  CHECK(std::isfinite(pf.log_z));
  const auto ref = tqft::quasiparticle_reference(spec, 1e4);
  for (double f : ref.f0) CHECK(std::isfinite(f));
  for (double f : ref.f1) CHECK(std::isfinite(f));
}

TEST_CASE("quasiparticle reference matches exact Gibbs occupations") {
  for (std::size_t n : {2, 4}) {
    for (double g : {0.0, 0.5, 1.0}) {
      const auto p = model(n, 0.2, g, 1.0);
      const QubitOperator h = tqft::build_interacting_hamiltonian(p);
      const auto spec = tqft::sector_spectrum(h, p);
      const auto ops = tqft::quasiparticle_number_operators(spec, n);
      const oracle::Matrix hd = oracle::dense(h);
      for (double beta : {0.25, 1.0, 4.0}) {
        const auto ref = tqft::quasiparticle_reference(spec, beta);
        CHECK(ref.z == ref.z0 + ref.z1);
        for (std::size_t k = 0; k < n; ++k) {
          const double m0 = oracle::gibbs(hd, oracle::dense(ops.ops0[k]), beta);
          const double m1 = oracle::gibbs(hd, oracle::dense(ops.ops1[k]), beta);
          CHECK(std::abs(m0 - ref.f0[k]) <= 1e-8);
          CHECK(std::abs(m1 - ref.f1[k]) <= 1e-8);
          CHECK(ref.f0[k] >= 0.0);
          CHECK(ref.f1[k] <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("reference values at the documented operating point") {
  const auto p = model(4, 0.2, 1.0, 1.0);
  const QubitOperator h = tqft::build_interacting_hamiltonian(p);
  const auto spec = tqft::sector_spectrum(h, p);
  const auto ops = tqft::quasiparticle_number_operators(spec, 4);
  const auto ref = tqft::quasiparticle_reference(spec, 1.0);
  const oracle::Matrix hd = oracle::dense(h);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(oracle::gibbs(hd, oracle::dense(ops.ops0[k]), 1.0) - ref.f0[k]) <= 1e-8);
    CHECK(std::abs(oracle::gibbs(hd, oracle::dense(ops.ops1[k]), 1.0) - ref.f1[k]) <= 1e-8);
  }
}

TEST_CASE("symmetric sectors halve the Fermi-Dirac weight") {
  const auto spec = tqft::sector_spectrum(model(4, 0.2, 0.0, 0.0));
  for (double beta : {0.25, 1.0, 4.0}) {
    const auto ref = tqft::quasiparticle_reference(spec, beta);
    for (std::size_t k = 0; k < 4; ++k) {
      const double half_fd = 0.5 * tqft::fermi_dirac_reference(spec.sector0_energies[k], beta);
      CHECK(std::abs(ref.f0[k] - half_fd) <= 1e-10);
      CHECK(std::abs(ref.f1[k] - half_fd) <= 1e-10);
    }
  }
  const auto hot = tqft::quasiparticle_reference(tqft::sector_spectrum(model(4, 0.2, 1.0, 1.0)), 0.0);
  for (double f : hot.f0) CHECK(std::abs(f - 0.25) < 1e-15);
  for (double f : hot.f1) CHECK(std::abs(f - 0.25) < 1e-15);
}

TEST_CASE("sector distributions merge continuously as the coupling vanishes") {
  const auto spec = tqft::sector_spectrum(model(4, 0.2, 1e-6, 0.0));
  for (double beta : {0.25, 1.0, 4.0}) {
    const auto ref = tqft::quasiparticle_reference(spec, beta);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(ref.f1[k] - ref.f0[k]) <= 1e-5);
  }
}

TEST_CASE("sector number operators") {
  const auto p = model(2, 0.2, 0.5, 1.0);
  const QubitOperator h = tqft::build_interacting_hamiltonian(p);
  const auto ops = tqft::quasiparticle_number_operators(p);
  const oracle::Matrix hd = oracle::dense(h);
  const oracle::Matrix p0 = background_projector(3, false);
  const oracle::Matrix p1 = background_projector(3, true);
  CHECK(oracle::max_abs(p0 + p1 - oracle::identity(8)) == 0.0);
  REQUIRE(ops.ops0.size() == 2);
  REQUIRE(ops.ops1.size() == 2);
  oracle::Matrix total = oracle::Matrix::Zero(8, 8);
  for (std::size_t k = 0; k < 2; ++k) {
    const oracle::Matrix n0 = oracle::dense(ops.ops0[k]);
    const oracle::Matrix n1 = oracle::dense(ops.ops1[k]);
    CHECK(ops.ops0[k].is_hermitian(1e-12));
    CHECK(ops.ops1[k].is_hermitian(1e-12));
    CHECK(oracle::max_abs(n0 * p1) <= 1e-10);
    CHECK(oracle::max_abs(n1 * p0) <= 1e-10);
    CHECK(oracle::max_abs(n0 * hd - hd * n0) <= 1e-10);
    CHECK(oracle::max_abs(n1 * hd - hd * n1) <= 1e-10);
    const oracle::Matrix b0 = oracle::dense(ops.factors0[k]);
    CHECK(oracle::max_abs(b0.adjoint() * b0 - n0) <= 1e-12);
    total += n0 + n1;
  }
  CHECK(std::abs(total.trace().real() / 8.0 - 1.0) < 1e-12);  // N/2 with N = 2
}

TEST_CASE("register extension") {
  const QubitOperator e = tqft::extend_register(QubitOperator::from_label("XZ", 0.5), 4);
  CHECK(e.n_qubits() == 4);
  CHECK(std::abs(e.coefficient(tqft::PauliString::from_letters("XZII")) - 0.5) < 1e-15);
}
