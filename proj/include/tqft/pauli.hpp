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

#ifndef TQFT_PAULI_HPP
#define TQFT_PAULI_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tqft {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 64;
inline constexpr double kCanonicalTolerance = 1e-14;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

// Pauli string in symplectic form: bit q of the X (Z) mask is set when
// qubit q carries X or Y (Z or Y). Qubit 0 is the leftmost letter.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n_qubits);
  PauliString(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  // Parses "IXYZ"-style labels. Throws ValidationError on other characters.
  static PauliString from_letters(std::string_view letters);

  std::size_t size() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  Pauli letter(std::size_t qubit) const;
  void set(std::size_t qubit, Pauli p);

  std::string letters() const;
  std::size_t weight() const;
  bool is_identity() const { return (x_ | z_) == 0; }
  std::vector<std::size_t> support() const;

  // Number of Y letters; P = i^{n_y} X^x Z^z.
  int y_count() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_qubits_ == b.n_qubits_ && a.x_ == b.x_ && a.z_ == b.z_;
  }
  // Lexicographic in the letter sequence (I < X < Y < Z), qubit 0 first.
  friend bool operator<(const PauliString& a, const PauliString& b);

 private:
  std::uint32_t n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliTerm {
  Complex coefficient{1.0, 0.0};
  PauliString letters;
};

// c1 P1 * c2 P2 = (c1 c2 i^k) P3, with P3 the letter-wise product.
PauliTerm pauli_multiply(const PauliTerm& a, const PauliTerm& b);

// Weighted sum of Pauli strings on a fixed register. Terms are keyed by
// letter sequence, so duplicates are always merged; arithmetic results are
// canonicalized with kCanonicalTolerance.
class QubitOperator {
 public:
  using TermMap = std::map<PauliString, Complex>;

  QubitOperator() = default;
  explicit QubitOperator(std::size_t n_qubits);
  QubitOperator(std::size_t n_qubits, const std::vector<PauliTerm>& terms);

  static QubitOperator identity(std::size_t n_qubits, Complex coeff = 1.0);
  static QubitOperator single(std::size_t n_qubits, std::size_t qubit, Pauli p,
                              Complex coeff = 1.0);
  static QubitOperator from_label(std::string_view letters, Complex coeff = 1.0);

  std::size_t n_qubits() const { return n_qubits_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  // Zero when the string is absent.
  Complex coefficient(const PauliString& p) const;
  // Coefficient of the identity string.
  Complex constant() const;

  // Adds c P without dropping small coefficients.
  void accumulate(const PauliString& p, Complex c);

  // All coefficients real within tol (Pauli strings are hermitian).
  bool is_hermitian(double tol = 1e-12) const;
  QubitOperator adjoint() const;
  // Keeps only the real part of each coefficient.
  QubitOperator hermitian_part() const;

  QubitOperator& operator+=(const QubitOperator& other);
  QubitOperator& operator-=(const QubitOperator& other);
  QubitOperator& operator*=(Complex s);

  friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) {
    return a += b;
  }
  friend QubitOperator operator-(QubitOperator a, const QubitOperator& b) {
    return a -= b;
  }
  friend QubitOperator operator*(QubitOperator a, Complex s) { return a *= s; }
  friend QubitOperator operator*(Complex s, QubitOperator a) { return a *= s; }
  friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b);

  std::vector<PauliTerm> term_list() const;

  // One term per line: `+c.ccccccccc+c.cccccccccj <letters>`, sorted by letters.
  std::string dump() const;

 private:
  void check_same_register(const QubitOperator& other) const;
  void prune(double tol);

  std::size_t n_qubits_ = 0;
  TermMap terms_;

  friend QubitOperator canonicalize(const QubitOperator& op, double tol);
};

// Drops terms with |c| <= tol. Idempotent and independent of insertion order.
QubitOperator canonicalize(const QubitOperator& op,
                           double tol = kCanonicalTolerance);

// Jordan-Wigner image of a_site (dagger=false) or a_site^dagger:
// (X +- iY)/2 on `site`, Z on every qubit below it.
QubitOperator jordan_wigner_ladder(std::size_t site, std::size_t n_qubits,
                                   bool dagger);

// Majorana operators gamma_{2j} = a_j + a_j^dagger, gamma_{2j+1} = -i(a_j - a_j^dagger).
QubitOperator jordan_wigner_majorana(std::size_t index, std::size_t n_qubits);

// a_site^dagger a_site = (I - Z_site)/2.
QubitOperator number_operator(std::size_t site, std::size_t n_qubits);

}  // namespace tqft

#endif  // TQFT_PAULI_HPP
