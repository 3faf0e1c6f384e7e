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
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"
#include "tqft/dense.hpp"
#include "tqft/errors.hpp"
#include "tqft/fermion_free.hpp"

using tqft::Boundary;
using tqft::FermionLatticeParams;
using tqft::QubitOperator;

namespace {

FermionLatticeParams lattice(std::size_t n, double m, double r = 1.0,
                             Boundary b = Boundary::kPeriodic, double a = 1.0) {
  FermionLatticeParams p;
  p.n_sites = n;
  p.mass = m;
  p.wilson_r = r;
  p.boundary = b;
  p.spacing = a;
  return p;
}

// The lattice Hamiltonian assembled from dense ladder matrices.
oracle::Matrix free_hamiltonian_oracle(const FermionLatticeParams& p) {
  const std::size_t n = p.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  const oracle::Matrix id = oracle::identity(dim);
  std::vector<oracle::Matrix> a;
  std::vector<oracle::Matrix> ad;
  for (std::size_t s = 0; s < n; ++s) {
    a.push_back(oracle::ladder(s, n, false));
    ad.push_back(oracle::ladder(s, n, true));
  }
  auto nb = [&](std::size_t s, int off) -> long {
    const long t = static_cast<long>(s) + off;
    if (p.boundary == Boundary::kPeriodic) return (t + static_cast<long>(n)) % static_cast<long>(n);
    return (t < 0 || t >= static_cast<long>(n)) ? -1 : t;
  };
  const oracle::Complex i(0.0, 1.0);
  oracle::Matrix hop = oracle::Matrix::Zero(dim, dim);
  oracle::Matrix mass = hop;
  oracle::Matrix wil = hop;
  for (std::size_t s = 0; s < n; ++s) {
    const long up = nb(s, 1);
    const long dn = nb(s, -1);
    if (up >= 0) hop += -i * (a[s] * a[up] + ad[s] * ad[up]) / (2.0 * p.spacing);
    mass += p.mass * (ad[s] * a[s] - 0.5 * id);
    oracle::Matrix lap = -2.0 * a[s];
    if (up >= 0) lap += a[up];
    if (dn >= 0) lap += a[dn];
    wil += -(p.wilson_r / (2.0 * p.spacing)) * (ad[s] * lap + id);
  }
  return hop + mass + 0.5 * (wil + oracle::Matrix(wil.adjoint()));
}

}  // namespace

TEST_CASE("free Hamiltonian matches the dense ladder construction") {
  for (std::size_t n : {2, 3, 4}) {
    for (double m : {0.0, 0.2, 5.0}) {
      for (double r : {0.5, 1.0}) {
        for (Boundary b : {Boundary::kPeriodic, Boundary::kOpen}) {
          for (double a : {1.0, 0.5}) {
            const auto p = lattice(n, m, r, b, a);
            const auto got = tqft::to_dense(tqft::build_free_hamiltonian(p));
            CHECK(oracle::max_abs(got - free_hamiltonian_oracle(p)) < 1e-13);
          }
        }
      }
    }
  }
}

TEST_CASE("free Hamiltonian is hermitian across the parameter grid") {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (double m : {0.0, 0.2, 5.0}) {
      for (double r : {0.5, 1.0}) {
        for (Boundary b : {Boundary::kPeriodic, Boundary::kOpen}) {
          const QubitOperator h = tqft::build_free_hamiltonian(lattice(n, m, r, b));
          CHECK(h.is_hermitian(1e-12));
          CHECK(tqft::hermiticity_defect(tqft::to_dense(h)) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("massless two-site open chain has no mass term") {
  const QubitOperator h = tqft::build_free_hamiltonian(lattice(2, 0.0, 1.0, Boundary::kOpen));
  const auto with_mass = tqft::build_free_hamiltonian(lattice(2, 0.3, 1.0, Boundary::kOpen));
  // The mass term is m (n - 1/2) per site: -m/2 Z on each qubit.
  const QubitOperator diff = with_mass - h;
  CHECK(diff.size() == 2);
  CHECK(std::abs(diff.coefficient(tqft::PauliString::from_letters("ZI")) + 0.15) < 1e-15);
  CHECK(std::abs(diff.coefficient(tqft::PauliString::from_letters("IZ")) + 0.15) < 1e-15);
  CHECK(h.is_hermitian(1e-12));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_WITH_AS(tqft::build_free_hamiltonian(lattice(4, 0.2, 1.5)),
                       doctest::Contains("wilson_r"), tqft::ValidationError);
  CHECK_THROWS_AS(tqft::build_free_hamiltonian(lattice(4, 0.2, 0.0)), tqft::ValidationError);
  CHECK_THROWS_AS(tqft::build_free_hamiltonian(lattice(1, 0.2)), tqft::ValidationError);
  CHECK_THROWS_AS(tqft::build_free_hamiltonian(lattice(4, -1.0)), tqft::ValidationError);
  CHECK_THROWS_AS(tqft::build_free_hamiltonian(lattice(4, 0.2, 1.0, Boundary::kPeriodic, 0.0)),
                  tqft::ValidationError);
}

TEST_CASE("vacuum energy is the ground energy") {
  for (Boundary b : {Boundary::kPeriodic, Boundary::kOpen}) {
    const auto p = lattice(2, 0.0, 1.0, b);
    const QubitOperator h = tqft::build_free_hamiltonian(p);
    const auto modes = tqft::diagonalize_modes(h, p);
    CHECK(std::abs(modes.vacuum_energy - oracle::spectrum(oracle::dense(h))(0)) <= 1e-10);
  }
}

TEST_CASE("heavy mass gap") {
  const auto p = lattice(4, 5.0);
  const auto modes = tqft::diagonalize_modes(tqft::build_free_hamiltonian(p), p);
  REQUIRE(modes.energies.size() == 4);
  CHECK(*std::min_element(modes.energies.begin(), modes.energies.end()) >= 4.0);
}

TEST_CASE("mode reconstruction and spectrum multiset") {
  for (std::size_t n : {2, 3, 4}) {
    for (double m : {0.0, 0.2, 5.0}) {
      for (Boundary b : {Boundary::kPeriodic, Boundary::kOpen}) {
        const auto p = lattice(n, m, n == 3 ? 0.5 : 1.0, b);
        const QubitOperator h = tqft::build_free_hamiltonian(p);
        const auto modes = tqft::diagonalize_modes(h, p);
        REQUIRE(modes.energies.size() == n);
        REQUIRE(modes.mode_number_ops.size() == n);
        for (std::size_t k = 0; k < n; ++k) {
          CHECK(modes.energies[k] >= 0.0);
          if (k > 0) CHECK(modes.energies[k - 1] <= modes.energies[k]);
        }

        const std::size_t dim = std::size_t{1} << n;
        oracle::Matrix rebuilt = modes.vacuum_energy * oracle::identity(dim);
        for (std::size_t k = 0; k < n; ++k) {
          rebuilt += modes.energies[k] * oracle::dense(modes.mode_number_ops[k]);
        }
        const oracle::Matrix hd = oracle::dense(h);
        CHECK(oracle::max_abs(rebuilt - hd) <= 1e-10);

        std::vector<double> levels;
        for (std::size_t s = 0; s < dim; ++s) {
          double e = modes.vacuum_energy;
          for (std::size_t k = 0; k < n; ++k) {
            if ((s >> k) & 1u) e += modes.energies[k];
          }
          levels.push_back(e);
        }
        std::sort(levels.begin(), levels.end());
        const Eigen::VectorXd spec = oracle::spectrum(hd);
        for (std::size_t s = 0; s < dim; ++s) CHECK(std::abs(levels[s] - spec(s)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("mode number operators are commuting projectors conserved by H") {
  const auto p = lattice(4, 0.2);
  const QubitOperator h = tqft::build_free_hamiltonian(p);
  const auto modes = tqft::diagonalize_modes(h, p);
  const oracle::Matrix hd = oracle::dense(h);
  for (std::size_t k = 0; k < 4; ++k) {
    const oracle::Matrix nk = oracle::dense(modes.mode_number_ops[k]);
    CHECK(modes.mode_number_ops[k].is_hermitian(1e-12));
    CHECK(oracle::max_abs(nk * nk - nk) <= 1e-10);
    CHECK(oracle::max_abs(nk * hd - hd * nk) <= 1e-10);
    for (std::size_t l = 0; l < 4; ++l) {
      const oracle::Matrix nl = oracle::dense(modes.mode_number_ops[l]);
      CHECK(oracle::max_abs(nk * nl - nl * nk) <= 1e-10);
    }
    const oracle::Matrix bk = oracle::dense(modes.annihilators[k]);
    CHECK(oracle::max_abs(bk.adjoint() * bk - nk) <= 1e-10);
  }
}

TEST_CASE("periodic modes carry lattice momenta, open modes do not") {
  const auto p = lattice(4, 0.2);
  const auto modes = tqft::diagonalize_modes(tqft::build_free_hamiltonian(p), p);
  const double pi = std::numbers::pi;
  std::vector<double> momenta;
  for (const auto& q : modes.momenta) {
    REQUIRE(q.has_value());
    CHECK(*q > -pi);
    CHECK(*q <= pi + 1e-12);
    momenta.push_back(std::abs(*q));
  }
  std::sort(momenta.begin(), momenta.end());
  CHECK(momenta[0] == doctest::Approx(0.0));
  CHECK(momenta[1] == doctest::Approx(pi / 2));
  CHECK(momenta[2] == doctest::Approx(pi / 2));
  CHECK(momenta[3] == doctest::Approx(pi));
  // The zero mode of the Wilson chain sits at E = m.
  CHECK(modes.energies[0] == doctest::Approx(0.2));

  const auto po = lattice(4, 0.2, 1.0, Boundary::kOpen);
  const auto open = tqft::diagonalize_modes(tqft::build_free_hamiltonian(po), po);
  for (const auto& q : open.momenta) CHECK_FALSE(q.has_value());
}

TEST_CASE("non-quadratic Hamiltonians are rejected") {
  CHECK_THROWS_AS(tqft::diagonalize_modes(QubitOperator::from_label("ZZ"), Boundary::kOpen),
                  tqft::UnsupportedModelError);
  CHECK_THROWS_AS(tqft::diagonalize_modes(QubitOperator::from_label("XXX"), Boundary::kOpen),
                  tqft::UnsupportedModelError);
}

TEST_CASE("Fermi-Dirac reference") {
  CHECK(tqft::fermi_dirac_reference(3.7, 0.0) == 0.5);
  CHECK(tqft::fermi_dirac_reference(0.0, 12.0) == 0.5);
  CHECK(std::abs(tqft::fermi_dirac_reference(std::log(3.0), 1.0) - 0.25) < 1e-15);
  CHECK(tqft::fermi_dirac_reference(1.0, 701.0) == 0.0);
  CHECK(tqft::fermi_dirac_reference(1.0, 699.0) > 0.0);
}

TEST_CASE("exact Gibbs occupations follow Fermi-Dirac") {
  for (double m : {0.0, 0.2, 5.0}) {
    for (Boundary b : {Boundary::kPeriodic, Boundary::kOpen}) {
      const auto p = lattice(4, m, 1.0, b);
      const QubitOperator h = tqft::build_free_hamiltonian(p);
      const auto modes = tqft::diagonalize_modes(h, p);
      const auto thermal =
          tqft::make_evaluator(tqft::Hamiltonian::from_pauli(h), tqft::ThermalMethod::kExact);
      for (double beta : {0.0, 0.5, 1.0, 3.0}) {
        const auto f = tqft::mode_occupation(thermal, modes, beta);
        for (std::size_t k = 0; k < 4; ++k) {
          CHECK(f[k] >= 0.0);
          CHECK(f[k] <= 1.0);
          CHECK(std::abs(f[k] - tqft::fermi_dirac_reference(modes.energies[k], beta)) <= 1e-10);
          // Independent check against the direct matrix exponential.
          const double direct =
              oracle::gibbs(oracle::dense(h), oracle::dense(modes.mode_number_ops[k]), beta);
          CHECK(std::abs(f[k] - direct) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("occupation limits") {
  const auto p = lattice(4, 5.0);
  const QubitOperator h = tqft::build_free_hamiltonian(p);
  const auto modes = tqft::diagonalize_modes(h, p);
  const auto thermal =
      tqft::make_evaluator(tqft::Hamiltonian::from_pauli(h), tqft::ThermalMethod::kExact);
  for (double f : tqft::mode_occupation(thermal, modes, 0.0)) CHECK(std::abs(f - 0.5) < 1e-14);
  // beta E_min = 60 > 50.
  for (double f : tqft::mode_occupation(thermal, modes, 12.0)) CHECK(f < 1e-20);
}
