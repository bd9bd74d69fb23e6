// Copyright 2026 The triortho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef TRIORTHO_MAGIC_H_
#define TRIORTHO_MAGIC_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "triortho/bit_matrix.h"
#include "triortho/space.h"

namespace triortho {

// Symmetric m x m matrix over Z4 defining q(z) = z M z^T mod 4 on F2^m.
class QuadraticFormZ4 {
 public:
  QuadraticFormZ4() = default;
  explicit QuadraticFormZ4(int m);

  int m() const { return m_; }
  int at(int i, int j) const { return mat_[i * m_ + j]; }
  // Sets entries (i, j) and (j, i), reduced mod 4.
  void set(int i, int j, int value);

  // Qubit b is bit b of z; requires m <= 32.
  int operator()(std::uint32_t z) const;

  QuadraticFormZ4& operator+=(const QuadraticFormZ4& other);
  bool operator==(const QuadraticFormZ4&) const = default;

 private:
  int m_ = 0;
  std::vector<std::uint8_t> mat_;
};

// Throws std::invalid_argument when |z| != m.
int eval_form(const QuadraticFormZ4& f, const BitVector& z);

// q is the form of W^T W + 2 diag(d).
struct FormDecomposition {
  BitMatrix w;
  BitVector d;
};

FormDecomposition decompose_form(const QuadraticFormZ4& f);
// F2-rank of M mod 2.
std::size_t form_rank(const QuadraticFormZ4& f);
QuadraticFormZ4 form_of(const FormDecomposition& dec);

// Diagonal phase exp(i pi/4 e(z)) with
// e(z) = 4 sum cubic + 2 sum quadratic + sum linear (mod 8).
struct PhasePolynomial8 {
  int m = 0;
  std::set<std::array<int, 3>> cubic;           // b < c < d, mod 2
  std::map<std::pair<int, int>, int> quadratic;  // b < c, mod 4
  std::map<int, int> linear;                     // mod 8

  int operator()(std::uint32_t z) const;
  int eval(const BitVector& z) const;
  bool is_zero() const {
    return cubic.empty() && quadratic.empty() && linear.empty();
  }

  // Product of the two diagonal gates.
  PhasePolynomial8 operator+(const PhasePolynomial8& other) const;
  // Inverse gate.
  PhasePolynomial8 operator-() const;
  bool operator==(const PhasePolynomial8&) const = default;
};

// M = V^T V mod 4 for rows v of V: the phase of S(V) is i^{q(z)}.
QuadraticFormZ4 s_phase_from_set(const BitMatrix& v);

// Phase of T(V) up to a global phase, rows of V being the rotation vectors.
PhasePolynomial8 t_phase_from_set(const BitMatrix& v);

// The Clifford S[G] with T(columns of G) = S[G] T_1 ... T_k, where T_b acts on
// the qubit of the b-th odd row. Throws std::invalid_argument unless the
// stacked matrix is triorthogonal.
PhasePolynomial8 correction_SG(const DescendantCode& code);

// Z4 form whose S-gate phase equals the given polynomial. Throws
// std::invalid_argument when the polynomial is not a diagonal Clifford.
QuadraticFormZ4 clifford_form(const PhasePolynomial8& p);

enum class ProtocolVariant { kStandard, kDelayed };

const char* variant_name(ProtocolVariant v);
ProtocolVariant parse_variant(std::string_view s);

inline constexpr int kMaxSimulatedQubits = 12;

struct ProtocolOptions {
  ProtocolVariant variant = ProtocolVariant::kDelayed;
  // Probability of a Z error on each input T state.
  double noise = 0.0;
  // Inject T-dagger states and correct on t = +1 instead of t = -1.
  bool correct_on_plus = false;
};

struct ProtocolTrace {
  std::vector<int> outcomes;              // t_l in {+1, -1}
  std::vector<std::size_t> correction_set;
  // Reduced final correction S(W) Z(diag D).
  FormDecomposition reduced;
  // Delayed: rows(W). Standard: |C| + rows(W).
  std::size_t s_injection_count = 0;
  double pass_probability = 0.0;
  bool postselect_pass = false;
  // Fidelity of the postselected output with the ideal k-qubit state.
  double output_fidelity = 0.0;
};

// Throws BudgetExceeded when k + g0 exceeds kMaxSimulatedQubits and
// std::invalid_argument when k = 0 or the matrix is not triorthogonal.
ProtocolTrace simulate_protocol(const DescendantCode& code,
                                const ProtocolOptions& opts,
                                std::mt19937_64& rng);
ProtocolTrace simulate_protocol(const DescendantCode& code,
                                const ProtocolOptions& opts,
                                std::uint64_t seed);

struct ProtocolSummary {
  std::size_t shots = 0;
  double pass_rate = 0.0;
  double mean_fidelity_on_pass = 0.0;
  double min_fidelity_on_pass = 1.0;
  double mean_s_injections = 0.0;
  std::size_t max_s_injections = 0;
  double mean_corrections = 0.0;
};

ProtocolSummary simulate_shots(const DescendantCode& code,
                               const ProtocolOptions& opts, std::size_t shots,
                               std::uint64_t seed);

// Exponent e(z) mod 8 of the noiseless diagonal applied to the data register
// for a given outcome sequence, normalized to e(0) = 0.
std::vector<int> protocol_phase(const DescendantCode& code,
                                ProtocolVariant variant,
                                const std::vector<int>& outcomes);

// x mod 2 = 2x^3 + x^2 - 2x mod 8 and x mod 2 = x^2 mod 4 on all residues.
bool mod8_identity_check();

}  // namespace triortho

#endif  // TRIORTHO_MAGIC_H_
