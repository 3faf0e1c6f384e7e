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

#ifndef TQFT_THERMAL_ENGINE_HPP
#define TQFT_THERMAL_ENGINE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tqft/dense.hpp"
#include "tqft/pauli.hpp"

namespace tqft {

enum class ThermalMethod { kExact, kTraceSweep, kQite };
enum class TrotterOrder { kFirst = 1, kSecond = 2 };

std::string to_string(ThermalMethod m);
// Accepts "exact", "trace_sweep"/"trace-sweep", "qite".
ThermalMethod parse_thermal_method(std::string_view s);
std::string to_string(TrotterOrder o);
TrotterOrder parse_trotter_order(std::string_view s);

struct ImagTimeConfig {
  double dtau = 1e-3;
  TrotterOrder order = TrotterOrder::kSecond;
  // Number of qubits the fitted QITE unitaries may act on.
  std::size_t qite_domain = 2;
  double regularization = 1e-8;
  // Worker threads for the basis-state sweep; 0 selects the hardware count.
  unsigned threads = 0;
};

// Step count and step size covering `tau` with steps no longer than `dtau`.
struct StepPlan {
  std::size_t steps = 0;
  double dtau = 0.0;
};
StepPlan plan_steps(double tau, double dtau);

// A Hamiltonian as an ordered list of Trotter terms. Pauli-sum Hamiltonians
// contribute one term per Pauli string; dense Hamiltonians are split by the
// caller into blocks whose exponentials are taken exactly.
class Hamiltonian {
 public:
  static Hamiltonian from_pauli(QubitOperator op);
  static Hamiltonian from_dense_terms(std::vector<DenseOperator> terms);
  static Hamiltonian from_dense(DenseOperator h);

  std::size_t dim() const { return dim_; }
  bool is_pauli() const { return pauli_.has_value(); }
  const QubitOperator& pauli() const;
  const std::vector<DenseOperator>& dense_terms() const { return dense_terms_; }
  DenseOperator to_dense() const;

 private:
  Hamiltonian() = default;
  std::size_t dim_ = 0;
  std::optional<QubitOperator> pauli_;
  std::vector<DenseOperator> dense_terms_;
};

// B^dagger B, evaluated as ||B psi||^2. Occupation numbers built this way
// stay nonnegative and keep full relative precision deep in the Boltzmann
// tail, where <psi|n|psi> computed from n itself bottoms out at rounding.
struct GramObservable {
  std::variant<QubitOperator, DenseOperator> factor;
};

using Observable = std::variant<QubitOperator, DenseOperator, GramObservable>;

Complex expectation(const StateVector& state, const Observable& obs);
std::size_t observable_dim(const Observable& obs);

struct ThermalResult {
  double beta = 0.0;
  std::vector<double> values;
  double partition_value = 0.0;  // may overflow to inf; log_partition does not
  double log_partition = 0.0;
  ThermalMethod method = ThermalMethod::kExact;
  std::size_t steps = 0;
  double max_imag_part = 0.0;
  // Largest QITE least-squares residual; zero for the other methods.
  double max_fit_residual = 0.0;
};

// Tr[exp(-beta h) O] / Z through the eigendecomposition of h, with eigenvalues
// shifted by the minimum before exponentiation.
ThermalResult gibbs_expectation_exact(const DenseOperator& h,
                                      std::span<const DenseOperator> obs,
                                      double beta);
ThermalResult gibbs_expectation_exact(const Eigensystem& spectrum,
                                      std::span<const DenseOperator> obs,
                                      double beta);
ThermalResult gibbs_expectation_exact(const Eigensystem& spectrum,
                                      std::span<const Observable> obs, double beta);

struct EvolveResult {
  StateVector state;
  double accumulated_norm = 1.0;
  double log_norm = 0.0;
};

// Trotterized exp(-dtau*steps*H)|psi> with renormalization after every step.
EvolveResult imaginary_time_evolve(const StateVector& state, const Hamiltonian& h,
                                   double dtau, std::size_t steps,
                                   TrotterOrder order);

// Gibbs averages from sum_i <i| e^{-beta H/2} O e^{-beta H/2} |i> over the
// computational basis.
ThermalResult thermal_trace_sweep(const Hamiltonian& h,
                                  std::span<const Observable> obs, double beta,
                                  const ImagTimeConfig& cfg);

struct QiteStepResult {
  StateVector state;
  double norm = 1.0;  // ||exp(-dtau term)|psi>||
  std::vector<std::size_t> domain;
  std::vector<PauliString> basis;
  Eigen::VectorXd coefficients;
  double fit_residual = 0.0;
};

// One QITE step: fits a hermitian A on a local domain so that
// (1 - i dtau A)|psi> matches the normalized exp(-dtau term)|psi>, then
// applies exp(-i dtau A).
QiteStepResult qite_step(const StateVector& state, const QubitOperator& term,
                         double dtau, const ImagTimeConfig& cfg);

// Trace sweep with every per-term exponential replaced by a QITE step.
ThermalResult thermal_qite(const QubitOperator& h, std::span<const Observable> obs,
                           double beta, const ImagTimeConfig& cfg);

ThermalResult thermal_expectation(const Hamiltonian& h,
                                  std::span<const Observable> obs, double beta,
                                  ThermalMethod method, const ImagTimeConfig& cfg);

std::vector<ThermalResult> beta_sweep(const Hamiltonian& h,
                                      std::span<const Observable> obs,
                                      std::span<const double> betas,
                                      ThermalMethod method,
                                      const ImagTimeConfig& cfg);

// Thermal evaluation bound to one Hamiltonian and method.
struct ThermalEvaluator {
  std::size_t dim = 0;
  std::function<ThermalResult(std::span<const Observable>, double)> evaluate;
};

ThermalEvaluator make_evaluator(Hamiltonian h, ThermalMethod method,
                                ImagTimeConfig cfg = {});

}  // namespace tqft

#endif  // TQFT_THERMAL_ENGINE_HPP
