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

#include "tqft/thermal_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "tqft/errors.hpp"

namespace tqft {

namespace {

unsigned resolve_threads(unsigned requested, std::size_t work) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency())
                              : requested;
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

// Runs fn(i) for i in [0, count) on contiguous blocks. Each index writes only
// its own output slot, so results do not depend on the worker count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = resolve_threads(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    const std::size_t block = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          const std::size_t lo = t * block;
          const std::size_t hi = std::min(count, lo + block);
          for (std::size_t i = lo; i < hi; ++i) fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool commutes(const PauliString& a, const PauliString& b) {
  const int anti = std::popcount(a.x_mask() & b.z_mask()) +
                   std::popcount(a.z_mask() & b.x_mask());
  return anti % 2 == 0;
}

std::size_t qubits_for_dim(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) return 0;
  return static_cast<std::size_t>(std::countr_zero(dim));
}

struct RealPauliTerm {
  PauliString letters;
  double coeff;
};

// Splits a hermitian Pauli sum into its identity coefficient and the
// remaining real-weighted strings, in canonical order.
std::pair<double, std::vector<RealPauliTerm>> real_terms(const QubitOperator& op) {
  if (!op.is_hermitian(1e-12)) {
    throw ValidationError("Hamiltonian must be hermitian (real Pauli coefficients)");
  }
  double identity = 0.0;
  std::vector<RealPauliTerm> out;
  for (const auto& [p, c] : op.terms()) {
    if (p.is_identity()) {
      identity += c.real();
    } else {
      out.push_back({p, c.real()});
    }
  }
  return {identity, out};
}

// Precomputed Trotter step exp(-dt H) for a fixed step size.
class TrotterStep {
 public:
  TrotterStep(const Hamiltonian& h, double dt, TrotterOrder order)
      : dt_(dt), order_(order) {
    if (h.is_pauli()) {
      auto [id, terms] = real_terms(h.pauli());
      identity_ = id;
      terms_ = std::move(terms);
      pauli_ = true;
    } else {
      const auto d = static_cast<Eigen::Index>(h.dim());
      step_ = DenseOperator::Identity(d, d);
      auto expo = [](const DenseOperator& m, double tau) {
        return spectral_function(eigendecompose(m),
                                 [tau](double l) { return Complex(std::exp(-tau * l)); });
      };
      const auto& terms = h.dense_terms();
      if (order == TrotterOrder::kFirst) {
        // Applied left to right: the first term acts first.
        for (const auto& t : terms) step_ = expo(t, dt) * step_;
      } else {
        for (const auto& t : terms) step_ = expo(t, 0.5 * dt) * step_;
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
          step_ = expo(*it, 0.5 * dt) * step_;
        }
      }
    }
  }

  void apply(ComplexVector& v) const {
    if (!pauli_) {
      v = step_ * v;
      return;
    }
    if (identity_ != 0.0) v *= std::exp(-dt_ * identity_);
    if (order_ == TrotterOrder::kFirst) {
      for (const auto& t : terms_) apply_pauli_exponential(t.letters, t.coeff, dt_, v);
    } else {
      const double half = 0.5 * dt_;
      for (const auto& t : terms_) apply_pauli_exponential(t.letters, t.coeff, half, v);
      for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        apply_pauli_exponential(it->letters, it->coeff, half, v);
      }
    }
  }

 private:
  double dt_;
  TrotterOrder order_;
  bool pauli_ = false;
  double identity_ = 0.0;
  std::vector<RealPauliTerm> terms_;
  DenseOperator step_;
};

void check_beta(double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw ValidationError("beta must be finite and >= 0");
  }
}

void check_observables(std::size_t dim, std::span<const Observable> obs) {
  for (const auto& o : obs) {
    if (observable_dim(o) != dim) {
      throw DimensionError("observable dimension " + std::to_string(observable_dim(o)) +
                           " does not match Hamiltonian dimension " +
                           std::to_string(dim));
    }
  }
}

// Weighted average over basis-state trajectories given log weights.
ThermalResult reduce_sweep(double beta, ThermalMethod method, std::size_t steps,
                           const std::vector<double>& log_w,
                           const std::vector<std::vector<Complex>>& exps,
                           std::size_t n_obs) {
  ThermalResult r;
  r.beta = beta;
  r.method = method;
  r.steps = steps;
  const double top = *std::max_element(log_w.begin(), log_w.end());
  double z = 0.0;
  std::vector<Complex> acc(n_obs);
  for (std::size_t i = 0; i < log_w.size(); ++i) {
    const double w = std::exp(log_w[i] - top);
    z += w;
    for (std::size_t k = 0; k < n_obs; ++k) acc[k] += w * exps[i][k];
  }
  r.values.resize(n_obs);
  for (std::size_t k = 0; k < n_obs; ++k) {
    const Complex v = acc[k] / z;
    r.values[k] = v.real();
    r.max_imag_part = std::max(r.max_imag_part, std::abs(v.imag()));
  }
  r.log_partition = top + std::log(z);
  r.partition_value = std::exp(r.log_partition);
  return r;
}

std::size_t n_qubits_of(const Hamiltonian& h) {
  const std::size_t n = qubits_for_dim(h.dim());
  if (n == 0 && h.dim() != 1) {
    throw DimensionError("basis sweep requires a power-of-two dimension");
  }
  return n;
}

// Applies a 2^d local unitary to the listed qubits (domain[0] leftmost).
void apply_local(const DenseOperator& u, const std::vector<std::size_t>& domain,
                 std::size_t n_qubits, ComplexVector& v) {
  const std::size_t d = domain.size();
  const std::size_t local_dim = std::size_t{1} << d;
  std::vector<std::uint64_t> offsets(local_dim, 0);
  std::uint64_t domain_mask = 0;
  for (std::size_t l = 0; l < local_dim; ++l) {
    for (std::size_t i = 0; i < d; ++i) {
      if ((l >> (d - 1 - i)) & 1u) offsets[l] |= std::uint64_t{1} << (n_qubits - 1 - domain[i]);
    }
  }
  for (std::size_t i = 0; i < d; ++i) domain_mask |= std::uint64_t{1} << (n_qubits - 1 - domain[i]);
  ComplexVector local(static_cast<Eigen::Index>(local_dim));
  for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(v.size()); ++base) {
    if (base & domain_mask) continue;
    for (std::size_t l = 0; l < local_dim; ++l) {
      local(static_cast<Eigen::Index>(l)) = v(static_cast<Eigen::Index>(base | offsets[l]));
    }
    const ComplexVector out = u * local;
    for (std::size_t l = 0; l < local_dim; ++l) {
      v(static_cast<Eigen::Index>(base | offsets[l])) = out(static_cast<Eigen::Index>(l));
    }
  }
}

std::vector<std::size_t> choose_domain(const PauliString& support_of,
                                       std::size_t n_qubits, std::size_t size) {
  std::vector<std::size_t> dom = support_of.support();
  if (size >= n_qubits) {
    dom.resize(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) dom[q] = q;
    return dom;
  }
  auto distance = [&dom](std::size_t q) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t s : dom) best = std::min(best, s > q ? s - q : q - s);
    return best;
  };
  while (dom.size() < size) {
    std::size_t pick = n_qubits;
    std::size_t pick_dist = std::numeric_limits<std::size_t>::max();
    for (std::size_t q = 0; q < n_qubits; ++q) {
      if (std::find(dom.begin(), dom.end(), q) != dom.end()) continue;
      const std::size_t dq = dom.empty() ? q : distance(q);
      if (dq < pick_dist) {
        pick = q;
        pick_dist = dq;
      }
    }
    dom.push_back(pick);
  }
  std::sort(dom.begin(), dom.end());
  return dom;
}

// exp(-dtau * term)|v>; exact for any hermitian term.
ComplexVector exact_term_exponential(const QubitOperator& term, double dtau,
                                     const ComplexVector& v) {
  auto [identity, terms] = real_terms(term);
  bool all_commute = true;
  for (std::size_t i = 0; i < terms.size() && all_commute; ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (!commutes(terms[i].letters, terms[j].letters)) {
        all_commute = false;
        break;
      }
    }
  }
  if (all_commute) {
    ComplexVector out = v * std::exp(-dtau * identity);
    for (const auto& t : terms) apply_pauli_exponential(t.letters, t.coeff, dtau, out);
    return out;
  }
  const DenseOperator e = spectral_function(
      eigendecompose(to_dense(term)),
      [dtau](double l) { return Complex(std::exp(-dtau * l)); });
  return e * v;
}

}  // namespace

std::string to_string(ThermalMethod m) {
  switch (m) {
    case ThermalMethod::kExact:
      return "exact";
    case ThermalMethod::kTraceSweep:
      return "trace_sweep";
    case ThermalMethod::kQite:
      return "qite";
  }
  return "unknown";
}

ThermalMethod parse_thermal_method(std::string_view s) {
  if (s == "exact") return ThermalMethod::kExact;
  if (s == "trace_sweep" || s == "trace-sweep") return ThermalMethod::kTraceSweep;
  if (s == "qite") return ThermalMethod::kQite;
  throw ValidationError("method must be one of exact, trace_sweep, qite; got '" +
                        std::string(s) + "'");
}

std::string to_string(TrotterOrder o) {
  return o == TrotterOrder::kFirst ? "first" : "second";
}

TrotterOrder parse_trotter_order(std::string_view s) {
  if (s == "first" || s == "1") return TrotterOrder::kFirst;
  if (s == "second" || s == "2") return TrotterOrder::kSecond;
  throw ValidationError("order must be 'first' or 'second'; got '" + std::string(s) +
                        "'");
}

StepPlan plan_steps(double tau, double dtau) {
  if (!(dtau > 0.0) || !std::isfinite(dtau)) {
    throw ValidationError("dtau must be finite and > 0");
  }
  if (tau <= 0.0) return {0, dtau};
  // Round away representation noise before taking the ceiling.
  const double ratio = tau / dtau;
  auto steps = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * ratio));
  steps = std::max<std::size_t>(steps, 1);
  return {steps, tau / static_cast<double>(steps)};
}

Hamiltonian Hamiltonian::from_pauli(QubitOperator op) {
  if (op.n_qubits() > 62) throw CapacityError("register too large");
  Hamiltonian h;
  h.dim_ = std::size_t{1} << op.n_qubits();
  h.pauli_ = std::move(op);
  return h;
}

Hamiltonian Hamiltonian::from_dense_terms(std::vector<DenseOperator> terms) {
  if (terms.empty()) throw ValidationError("dense Hamiltonian needs at least one term");
  Hamiltonian h;
  h.dim_ = static_cast<std::size_t>(terms.front().rows());
  for (const auto& t : terms) {
    if (t.rows() != t.cols() || static_cast<std::size_t>(t.rows()) != h.dim_) {
      throw DimensionError("dense Hamiltonian terms must share one square shape");
    }
  }
  h.dense_terms_ = std::move(terms);
  return h;
}

Hamiltonian Hamiltonian::from_dense(DenseOperator m) {
  std::vector<DenseOperator> terms;
  terms.push_back(std::move(m));
  return from_dense_terms(std::move(terms));
}

const QubitOperator& Hamiltonian::pauli() const {
  if (!pauli_) throw UnsupportedModelError("Hamiltonian has no Pauli-sum form");
  return *pauli_;
}

DenseOperator Hamiltonian::to_dense() const {
  if (pauli_) return tqft::to_dense(*pauli_);
  DenseOperator sum = dense_terms_.front();
  for (std::size_t i = 1; i < dense_terms_.size(); ++i) sum += dense_terms_[i];
  return sum;
}

Complex expectation(const StateVector& state, const Observable& obs) {
  if (const auto* g = std::get_if<GramObservable>(&obs)) {
    if (observable_dim(obs) != state.dim()) {
      throw DimensionError("expectation: observable dimension does not match state");
    }
    const ComplexVector bv = std::visit(
        [&state](const auto& b) -> ComplexVector {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, QubitOperator>) {
            return tqft::apply(b, state.amplitudes());
          } else {
            return b * state.amplitudes();
          }
        },
        g->factor);
    return bv.squaredNorm();
  }
  if (const auto* q = std::get_if<QubitOperator>(&obs)) return expectation(state, *q);
  return expectation(state, std::get<DenseOperator>(obs));
}

std::size_t observable_dim(const Observable& obs) {
  if (const auto* q = std::get_if<QubitOperator>(&obs)) {
    return std::size_t{1} << q->n_qubits();
  }
  if (const auto* g = std::get_if<GramObservable>(&obs)) {
    if (const auto* b = std::get_if<QubitOperator>(&g->factor)) {
      return std::size_t{1} << b->n_qubits();
    }
    const auto& d = std::get<DenseOperator>(g->factor);
    if (d.rows() != d.cols()) throw DimensionError("Gram factor must be square");
    return static_cast<std::size_t>(d.rows());
  }
  return static_cast<std::size_t>(std::get<DenseOperator>(obs).rows());
}

ThermalResult gibbs_expectation_exact(const DenseOperator& h,
                                      std::span<const DenseOperator> obs,
                                      double beta) {
  return gibbs_expectation_exact(eigendecompose(h), obs, beta);
}

ThermalResult gibbs_expectation_exact(const Eigensystem& spectrum,
                                      std::span<const DenseOperator> obs,
                                      double beta) {
  std::vector<Observable> wrapped(obs.begin(), obs.end());
  return gibbs_expectation_exact(spectrum, std::span<const Observable>(wrapped), beta);
}

ThermalResult gibbs_expectation_exact(const Eigensystem& spectrum,
                                      std::span<const Observable> obs, double beta) {
  check_beta(beta);
  const Eigen::Index dim = spectrum.values.size();
  check_observables(static_cast<std::size_t>(dim), obs);
  const double lmin = spectrum.values.minCoeff();
  Eigen::VectorXd w(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    w(i) = std::exp(-beta * (spectrum.values(i) - lmin));
  }
  const double z = w.sum();

  ThermalResult r;
  r.beta = beta;
  r.method = ThermalMethod::kExact;
  r.log_partition = -beta * lmin + std::log(z);
  r.partition_value = std::exp(r.log_partition);
  r.values.reserve(obs.size());
  const DenseOperator& v = spectrum.vectors;
  for (const auto& o : obs) {
    Complex acc = 0.0;
    if (const auto* g = std::get_if<GramObservable>(&o)) {
      DenseOperator bv;
      if (const auto* b = std::get_if<QubitOperator>(&g->factor)) {
        bv = to_dense(*b) * v;
      } else {
        bv = std::get<DenseOperator>(g->factor) * v;
      }
      for (Eigen::Index i = 0; i < dim; ++i) acc += w(i) * bv.col(i).squaredNorm();
    } else {
      const DenseOperator ov =
          (std::holds_alternative<QubitOperator>(o) ? to_dense(std::get<QubitOperator>(o))
                                                    : std::get<DenseOperator>(o)) *
          v;
      for (Eigen::Index i = 0; i < dim; ++i) acc += w(i) * v.col(i).dot(ov.col(i));
    }
    acc /= z;
    r.values.push_back(acc.real());
    r.max_imag_part = std::max(r.max_imag_part, std::abs(acc.imag()));
  }
  return r;
}

EvolveResult imaginary_time_evolve(const StateVector& state, const Hamiltonian& h,
                                   double dtau, std::size_t steps,
                                   TrotterOrder order) {
  if (state.dim() != h.dim()) {
    throw DimensionError("state dimension " + std::to_string(state.dim()) +
                         " does not match Hamiltonian dimension " +
                         std::to_string(h.dim()));
  }
  EvolveResult out{state, 1.0, 0.0};
  if (steps == 0) return out;
  const TrotterStep step(h, dtau, order);
  ComplexVector v = state.amplitudes();
  double log_norm = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    step.apply(v);
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw NumericalError("imaginary-time step produced a zero or non-finite state");
    }
    log_norm += std::log(n);
    v /= n;
  }
  out.state = StateVector(state.n_qubits(), std::move(v));
  out.log_norm = log_norm;
  out.accumulated_norm = std::exp(log_norm);
  return out;
}

ThermalResult thermal_trace_sweep(const Hamiltonian& h,
                                  std::span<const Observable> obs, double beta,
                                  const ImagTimeConfig& cfg) {
  check_beta(beta);
  check_observables(h.dim(), obs);
  const std::size_t n = n_qubits_of(h);
  const StepPlan plan = plan_steps(0.5 * beta, cfg.dtau);
  const std::size_t dim = h.dim();

  std::vector<double> log_w(dim, 0.0);
  std::vector<std::vector<Complex>> exps(dim, std::vector<Complex>(obs.size()));
  std::optional<TrotterStep> step;
  if (plan.steps > 0) step.emplace(h, plan.dtau, cfg.order);

  parallel_for(dim, cfg.threads, [&](std::size_t i) {
    ComplexVector v = StateVector::basis_state(n, i).amplitudes();
    double log_norm = 0.0;
    for (std::size_t s = 0; s < plan.steps; ++s) {
      step->apply(v);
      const double nv = v.norm();
      if (!(nv > 0.0) || !std::isfinite(nv)) {
        throw NumericalError("imaginary-time step produced a zero or non-finite state");
      }
      log_norm += std::log(nv);
      v /= nv;
    }
    const StateVector psi(n, std::move(v));
    log_w[i] = 2.0 * log_norm;
    for (std::size_t k = 0; k < obs.size(); ++k) exps[i][k] = expectation(psi, obs[k]);
  });
  return reduce_sweep(beta, ThermalMethod::kTraceSweep, plan.steps, log_w, exps,
                      obs.size());
}

QiteStepResult qite_step(const StateVector& state, const QubitOperator& term,
                         double dtau, const ImagTimeConfig& cfg) {
  const std::size_t n = state.n_qubits();
  if (term.n_qubits() != n) {
    throw DimensionError("qite_step: term and state registers differ");
  }
  if (cfg.qite_domain == 0 || cfg.qite_domain > n) {
    throw ValidationError("qite_domain must lie in [1, n_qubits]");
  }
  const ComplexVector& psi = state.amplitudes();
  const ComplexVector phi = exact_term_exponential(term, dtau, psi);
  const double c = phi.norm();
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw NumericalError("qite_step: exp(-dtau term)|psi> has zero or non-finite norm");
  }
  const ComplexVector delta = phi / c - psi;

  QiteStepResult out;
  out.norm = c;

  std::uint64_t sx = 0;
  std::uint64_t sz = 0;
  for (const auto& [p, coeff] : term.terms()) {
    if (!p.is_identity()) {
      sx |= p.x_mask();
      sz |= p.z_mask();
    }
  }
  const PauliString support(n, sx | sz, 0);
  if (support.is_identity()) {
    // A multiple of the identity only rescales the state.
    out.state = state;
    return out;
  }
  out.domain = choose_domain(support, n, cfg.qite_domain);
  const std::size_t d = out.domain.size();
  if (d > 7) throw CapacityError("qite_step: domain larger than 7 qubits");

  const std::size_t n_basis = (std::size_t{1} << (2 * d)) - 1;
  static constexpr Pauli kLetters[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  out.basis.reserve(n_basis);
  std::vector<ComplexVector> sigma_psi;
  sigma_psi.reserve(n_basis);
  for (std::size_t code = 1; code <= n_basis; ++code) {
    PauliString p(n);
    for (std::size_t i = 0; i < d; ++i) p.set(out.domain[i], kLetters[(code >> (2 * i)) & 3u]);
    sigma_psi.push_back(tqft::apply(PauliTerm{1.0, p}, psi));
    out.basis.push_back(p);
  }

  const auto m = static_cast<Eigen::Index>(n_basis);
  Eigen::MatrixXd s(m, m);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      s(i, j) = s(j, i) = sigma_psi[i].dot(sigma_psi[j]).real();
    }
    b(i) = -sigma_psi[i].dot(delta).imag() / dtau;
  }
  Eigen::MatrixXd lhs = s;
  lhs.diagonal().array() += cfg.regularization;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(lhs);
  Eigen::VectorXd x = ldlt.solve(b);
  const double sys_res = (lhs * x - b).norm();
  if (ldlt.info() != Eigen::Success || !x.allFinite() ||
      sys_res > 1e-6 * (1.0 + b.norm())) {
    throw NumericalError("qite_step: linear system singular beyond regularization "
                         "(residual " + std::to_string(sys_res) + ", ridge " +
                         std::to_string(cfg.regularization) + ")");
  }
  out.coefficients = x;

  ComplexVector a_psi = ComplexVector::Zero(psi.size());
  for (Eigen::Index i = 0; i < m; ++i) a_psi += x(i) * sigma_psi[i];
  out.fit_residual = (delta + Complex(0.0, dtau) * a_psi).norm();

  // Local generator on the domain, domain[0] leftmost.
  QubitOperator local(d);
  for (Eigen::Index i = 0; i < m; ++i) {
    PauliString lp(d);
    for (std::size_t k = 0; k < d; ++k) lp.set(k, out.basis[i].letter(out.domain[k]));
    local.accumulate(lp, x(i));
  }
  const DenseOperator u = spectral_function(
      eigendecompose(to_dense(local)),
      [dtau](double l) { return std::exp(Complex(0.0, -dtau * l)); });
  ComplexVector next = psi;
  apply_local(u, out.domain, n, next);
  out.state = StateVector::normalized_from(n, std::move(next));
  return out;
}

ThermalResult thermal_qite(const QubitOperator& h, std::span<const Observable> obs,
                           double beta, const ImagTimeConfig& cfg) {
  check_beta(beta);
  const std::size_t n = h.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  check_observables(dim, obs);
  auto [identity, terms] = real_terms(h);
  const StepPlan plan = plan_steps(0.5 * beta, cfg.dtau);

  std::vector<QubitOperator> term_ops;
  term_ops.reserve(terms.size());
  for (const auto& t : terms) term_ops.emplace_back(n, std::vector<PauliTerm>{{t.coeff, t.letters}});

  std::vector<double> log_w(dim, 0.0);
  std::vector<double> fit_res(dim, 0.0);
  std::vector<std::vector<Complex>> exps(dim, std::vector<Complex>(obs.size()));
  parallel_for(dim, cfg.threads, [&](std::size_t i) {
    StateVector psi = StateVector::basis_state(n, i);
    double log_norm = 0.0;
    double worst = 0.0;
    auto advance = [&](const QubitOperator& op, double dt) {
      QiteStepResult r = qite_step(psi, op, dt, cfg);
      log_norm += std::log(r.norm);
      worst = std::max(worst, r.fit_residual);
      psi = std::move(r.state);
    };
    for (std::size_t s = 0; s < plan.steps; ++s) {
      log_norm += -plan.dtau * identity;
      if (cfg.order == TrotterOrder::kFirst) {
        for (const auto& op : term_ops) advance(op, plan.dtau);
      } else {
        for (const auto& op : term_ops) advance(op, 0.5 * plan.dtau);
        for (auto it = term_ops.rbegin(); it != term_ops.rend(); ++it) {
          advance(*it, 0.5 * plan.dtau);
        }
      }
    }
    log_w[i] = 2.0 * log_norm;
    fit_res[i] = worst;
    for (std::size_t k = 0; k < obs.size(); ++k) exps[i][k] = expectation(psi, obs[k]);
  });
  ThermalResult r =
      reduce_sweep(beta, ThermalMethod::kQite, plan.steps, log_w, exps, obs.size());
  r.max_fit_residual = *std::max_element(fit_res.begin(), fit_res.end());
  return r;
}

ThermalResult thermal_expectation(const Hamiltonian& h,
                                  std::span<const Observable> obs, double beta,
                                  ThermalMethod method, const ImagTimeConfig& cfg) {
  switch (method) {
    case ThermalMethod::kExact:
      check_observables(h.dim(), obs);
      return gibbs_expectation_exact(eigendecompose(h.to_dense()), obs, beta);
    case ThermalMethod::kTraceSweep:
      return thermal_trace_sweep(h, obs, beta, cfg);
    case ThermalMethod::kQite:
      return thermal_qite(h.pauli(), obs, beta, cfg);
  }
  throw ValidationError("unknown thermal method");
}

std::vector<ThermalResult> beta_sweep(const Hamiltonian& h,
                                      std::span<const Observable> obs,
                                      std::span<const double> betas,
                                      ThermalMethod method,
                                      const ImagTimeConfig& cfg) {
  for (std::size_t i = 0; i < betas.size(); ++i) {
    check_beta(betas[i]);
    if (i > 0 && betas[i] < betas[i - 1]) {
      throw ValidationError("betas must be ascending");
    }
  }
  std::vector<ThermalResult> out;
  out.reserve(betas.size());
  for (double beta : betas) out.push_back(thermal_expectation(h, obs, beta, method, cfg));
  return out;
}

ThermalEvaluator make_evaluator(Hamiltonian h, ThermalMethod method,
                                ImagTimeConfig cfg) {
  ThermalEvaluator ev;
  ev.dim = h.dim();
  ev.evaluate = [h = std::move(h), method, cfg](std::span<const Observable> obs,
                                                double beta) {
    return thermal_expectation(h, obs, beta, method, cfg);
  };
  return ev;
}

}  // namespace tqft
