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

#include "tqft/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tqft/errors.hpp"

namespace tqft {

namespace {

constexpr std::uint64_t bit(std::size_t q) { return std::uint64_t{1} << q; }

// i^k for k mod 4.
Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

int letter_code(std::uint64_t x, std::uint64_t z, std::size_t q) {
  const bool xb = (x >> q) & 1u;
  const bool zb = (z >> q) & 1u;
  if (xb && zb) return 2;
  if (xb) return 1;
  if (zb) return 3;
  return 0;
}

}  // namespace

char pauli_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

PauliString::PauliString(std::size_t n_qubits)
    : PauliString(n_qubits, 0, 0) {}

PauliString::PauliString(std::size_t n_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask)
    : n_qubits_(static_cast<std::uint32_t>(n_qubits)), x_(x_mask), z_(z_mask) {
  if (n_qubits > kMaxQubits) {
    throw CapacityError("Pauli strings support at most 64 qubits, got " +
                        std::to_string(n_qubits));
  }
  const std::uint64_t valid = n_qubits == 64 ? ~std::uint64_t{0} : bit(n_qubits) - 1;
  if ((x_mask | z_mask) & ~valid) {
    throw DimensionError("Pauli mask has bits beyond the register size");
  }
}

PauliString PauliString::from_letters(std::string_view letters) {
  PauliString p(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q) {
    switch (letters[q]) {
      case 'I':
        break;
      case 'X':
        p.set(q, Pauli::X);
        break;
      case 'Y':
        p.set(q, Pauli::Y);
        break;
      case 'Z':
        p.set(q, Pauli::Z);
        break;
      default:
        throw ValidationError(std::string("invalid Pauli letter '") + letters[q] +
                              "'");
    }
  }
  return p;
}

Pauli PauliString::letter(std::size_t qubit) const {
  if (qubit >= n_qubits_) {
    throw IndexError("qubit " + std::to_string(qubit) + " outside register of " +
                     std::to_string(n_qubits_));
  }
  static constexpr Pauli kByCode[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  return kByCode[letter_code(x_, z_, qubit)];
}

void PauliString::set(std::size_t qubit, Pauli p) {
  if (qubit >= n_qubits_) {
    throw IndexError("qubit " + std::to_string(qubit) + " outside register of " +
                     std::to_string(n_qubits_));
  }
  x_ &= ~bit(qubit);
  z_ &= ~bit(qubit);
  if (p == Pauli::X || p == Pauli::Y) x_ |= bit(qubit);
  if (p == Pauli::Z || p == Pauli::Y) z_ |= bit(qubit);
}

std::string PauliString::letters() const {
  std::string s(n_qubits_, 'I');
  for (std::size_t q = 0; q < n_qubits_; ++q) s[q] = pauli_char(letter(q));
  return s;
}

std::size_t PauliString::weight() const {
  return static_cast<std::size_t>(std::popcount(x_ | z_));
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::uint64_t m = x_ | z_; m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

int PauliString::y_count() const { return std::popcount(x_ & z_); }

bool operator<(const PauliString& a, const PauliString& b) {
  if (a.n_qubits_ != b.n_qubits_) return a.n_qubits_ < b.n_qubits_;
  const std::uint64_t diff = (a.x_ ^ b.x_) | (a.z_ ^ b.z_);
  if (diff == 0) return false;
  const auto q = static_cast<std::size_t>(std::countr_zero(diff));
  return letter_code(a.x_, a.z_, q) < letter_code(b.x_, b.z_, q);
}

PauliTerm pauli_multiply(const PauliTerm& a, const PauliTerm& b) {
  const PauliString& pa = a.letters;
  const PauliString& pb = b.letters;
  if (pa.size() != pb.size()) {
    throw DimensionError("pauli_multiply: length " + std::to_string(pa.size()) +
                         " vs " + std::to_string(pb.size()));
  }
  const PauliString pc(pa.size(), pa.x_mask() ^ pb.x_mask(),
                       pa.z_mask() ^ pb.z_mask());
  // Z^{z1} X^{x2} = (-1)^{|z1 & x2|} X^{x2} Z^{z1}
  const int k = pa.y_count() + pb.y_count() - pc.y_count() +
                2 * std::popcount(pa.z_mask() & pb.x_mask());
  return {a.coefficient * b.coefficient * i_power(k), pc};
}

QubitOperator::QubitOperator(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > kMaxQubits) {
    throw CapacityError("QubitOperator supports at most 64 qubits");
  }
}

QubitOperator::QubitOperator(std::size_t n_qubits,
                             const std::vector<PauliTerm>& terms)
    : QubitOperator(n_qubits) {
  for (const auto& t : terms) {
    if (t.letters.size() != n_qubits) {
      throw DimensionError("term length " + std::to_string(t.letters.size()) +
                           " does not match register of " +
                           std::to_string(n_qubits));
    }
    accumulate(t.letters, t.coefficient);
  }
}

QubitOperator QubitOperator::identity(std::size_t n_qubits, Complex coeff) {
  QubitOperator op(n_qubits);
  op.accumulate(PauliString(n_qubits), coeff);
  op.prune(kCanonicalTolerance);
  return op;
}

QubitOperator QubitOperator::single(std::size_t n_qubits, std::size_t qubit,
                                    Pauli p, Complex coeff) {
  PauliString s(n_qubits);
  s.set(qubit, p);
  QubitOperator op(n_qubits);
  op.accumulate(s, coeff);
  return op;
}

QubitOperator QubitOperator::from_label(std::string_view letters, Complex coeff) {
  QubitOperator op(letters.size());
  op.accumulate(PauliString::from_letters(letters), coeff);
  return op;
}

Complex QubitOperator::coefficient(const PauliString& p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? Complex{} : it->second;
}

Complex QubitOperator::constant() const {
  return coefficient(PauliString(n_qubits_));
}

void QubitOperator::accumulate(const PauliString& p, Complex c) {
  if (p.size() != n_qubits_) {
    throw DimensionError("term length does not match register");
  }
  terms_[p] += c;
}

bool QubitOperator::is_hermitian(double tol) const {
  for (const auto& [p, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

QubitOperator QubitOperator::adjoint() const {
  QubitOperator out(*this);
  for (auto& [p, c] : out.terms_) c = std::conj(c);
  return out;
}

QubitOperator QubitOperator::hermitian_part() const {
  QubitOperator out(*this);
  for (auto& [p, c] : out.terms_) c = c.real();
  out.prune(kCanonicalTolerance);
  return out;
}

void QubitOperator::check_same_register(const QubitOperator& other) const {
  if (other.n_qubits_ != n_qubits_) {
    throw DimensionError("operator registers differ: " +
                         std::to_string(n_qubits_) + " vs " +
                         std::to_string(other.n_qubits_));
  }
}

void QubitOperator::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& other) {
  check_same_register(other);
  for (const auto& [p, c] : other.terms_) terms_[p] += c;
  prune(kCanonicalTolerance);
  return *this;
}

QubitOperator& QubitOperator::operator-=(const QubitOperator& other) {
  check_same_register(other);
  for (const auto& [p, c] : other.terms_) terms_[p] -= c;
  prune(kCanonicalTolerance);
  return *this;
}

QubitOperator& QubitOperator::operator*=(Complex s) {
  for (auto& [p, c] : terms_) c *= s;
  prune(kCanonicalTolerance);
  return *this;
}

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
  a.check_same_register(b);
  QubitOperator out(a.n_qubits_);
  for (const auto& [pa, ca] : a.terms_) {
    for (const auto& [pb, cb] : b.terms_) {
      const PauliTerm t = pauli_multiply({ca, pa}, {cb, pb});
      out.terms_[t.letters] += t.coefficient;
    }
  }
  out.prune(kCanonicalTolerance);
  return out;
}

std::vector<PauliTerm> QubitOperator::term_list() const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& [p, c] : terms_) out.push_back({c, p});
  return out;
}

std::string QubitOperator::dump() const {
  std::ostringstream os;
  char buf[64];
  for (const auto& [p, c] : terms_) {
    // +0.0 folds negative zero so the sign column is stable.
    std::snprintf(buf, sizeof(buf), "%+.9f%+.9fj", c.real() + 0.0, c.imag() + 0.0);
    os << buf << ' ' << p.letters() << '\n';
  }
  return os.str();
}

QubitOperator canonicalize(const QubitOperator& op, double tol) {
  QubitOperator out(op);
  out.prune(tol);
  return out;
}

QubitOperator jordan_wigner_ladder(std::size_t site, std::size_t n_qubits,
                                   bool dagger) {
  if (site >= n_qubits) {
    throw IndexError("site " + std::to_string(site) + " outside register of " +
                     std::to_string(n_qubits));
  }
  PauliString x(n_qubits);
  PauliString y(n_qubits);
  for (std::size_t q = 0; q < site; ++q) {
    x.set(q, Pauli::Z);
    y.set(q, Pauli::Z);
  }
  x.set(site, Pauli::X);
  y.set(site, Pauli::Y);
  const Complex y_coeff = dagger ? Complex{0.0, -0.5} : Complex{0.0, 0.5};
  return QubitOperator(n_qubits, {{0.5, x}, {y_coeff, y}});
}

QubitOperator jordan_wigner_majorana(std::size_t index, std::size_t n_qubits) {
  const std::size_t site = index / 2;
  if (site >= n_qubits) {
    throw IndexError("Majorana index " + std::to_string(index) +
                     " outside register of " + std::to_string(n_qubits));
  }
  PauliString p(n_qubits);
  for (std::size_t q = 0; q < site; ++q) p.set(q, Pauli::Z);
  p.set(site, index % 2 == 0 ? Pauli::X : Pauli::Y);
  return QubitOperator(n_qubits, {{1.0, p}});
}

QubitOperator number_operator(std::size_t site, std::size_t n_qubits) {
  if (site >= n_qubits) {
    throw IndexError("site " + std::to_string(site) + " outside register");
  }
  return QubitOperator::identity(n_qubits, 0.5) -
         QubitOperator::single(n_qubits, site, Pauli::Z, 0.5);
}

}  // namespace tqft
