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

#ifndef TRIORTHO_POLYNOMIAL_H_
#define TRIORTHO_POLYNOMIAL_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "triortho/bit_matrix.h"

namespace triortho {

inline constexpr int kMaxVars = 16;

// Boolean function on m variables, kept as both its algebraic normal form
// (bit i set iff the monomial with variable mask i is present) and its truth
// table. Variable x_1 is bit 0 of the truth-table index.
class RMPolynomial {
 public:
  RMPolynomial() : RMPolynomial(0) {}
  explicit RMPolynomial(int num_vars);

  static RMPolynomial from_anf(int num_vars, BitVector anf);
  static RMPolynomial from_truth(int num_vars, BitVector truth);
  static RMPolynomial from_monomials(int num_vars,
                                     std::span<const std::uint32_t> masks);
  static RMPolynomial constant(int num_vars, bool value = true);
  // x_i, 1-based.
  static RMPolynomial variable(int num_vars, int i);
  // Grammar: terms joined by '+', each a '*'-joined product of x<i> or '1'.
  // Juxtaposed factors ("x1x2") are also accepted. num_vars = 0 infers the
  // largest index used.
  static RMPolynomial parse(std::string_view text, int num_vars = 0);

  int num_vars() const { return m_; }
  const BitVector& anf() const { return anf_; }
  const BitVector& truth() const { return truth_; }

  std::vector<std::uint32_t> monomials() const;
  std::size_t monomial_count() const { return anf_.weight(); }
  std::size_t weight() const { return truth_.weight(); }
  int degree() const;
  bool is_zero() const { return anf_.none(); }
  bool operator()(std::uint32_t x) const { return truth_.get(x); }
  std::vector<std::uint32_t> support() const;

  RMPolynomial operator+(const RMPolynomial& other) const;
  RMPolynomial operator*(const RMPolynomial& other) const;
  // Same function viewed on more variables.
  RMPolynomial extend(int num_vars) const;
  // Smallest m' such that the polynomial only uses x_1..x_m'.
  int used_vars() const;

  bool operator==(const RMPolynomial& other) const {
    return m_ == other.m_ && anf_ == other.anf_;
  }

  std::string to_string() const;

 private:
  int m_ = 0;
  BitVector anf_;
  BitVector truth_;
};

std::ostream& operator<<(std::ostream& os, const RMPolynomial& p);

// In-place binary Moebius transform of a table of length 2^m. It is its own
// inverse and maps truth tables to ANF coefficient vectors.
void mobius_transform(std::span<std::uint64_t> words, int m);

BitVector truth_table(const RMPolynomial& p);
RMPolynomial anf_from_truth(const BitVector& truth, int num_vars);
inline std::size_t weight(const RMPolynomial& p) { return p.weight(); }
inline int degree(const RMPolynomial& p) { return p.degree(); }

// x -> L x + ell on F2^m. Columns of L are stored as bit masks.
class AffineMap {
 public:
  AffineMap() = default;
  // Throws std::invalid_argument when L is singular.
  AffineMap(std::vector<std::uint32_t> columns, std::uint32_t shift);
  AffineMap(const BitMatrix& linear, const BitVector& shift);

  static AffineMap identity(int m);
  static AffineMap translation(int m, std::uint32_t shift);
  // x_i <- x_i + x_j (0-based indices).
  static AffineMap transvection(int m, int i, int j);
  static AffineMap swap(int m, int i, int j);

  int dim() const { return static_cast<int>(cols_.size()); }
  std::uint32_t operator()(std::uint32_t x) const {
    std::uint32_t y = shift_;
    for (std::size_t j = 0; x; ++j, x >>= 1) {
      if (x & 1u) y ^= cols_[j];
    }
    return y;
  }
  const std::vector<std::uint32_t>& columns() const { return cols_; }
  std::uint32_t shift() const { return shift_; }
  BitMatrix linear() const;
  AffineMap inverse() const;

  bool operator==(const AffineMap&) const = default;

 private:
  std::vector<std::uint32_t> cols_;
  std::uint32_t shift_ = 0;
};

// x -> outer(inner(x)).
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

// g(v) = p(L v + ell).
RMPolynomial apply_affine(const RMPolynomial& p, const AffineMap& a);

// Permutes a truth table: out[v] = t[a(v)].
BitVector permute_truth(const BitVector& t, int m, const AffineMap& a);

// out[x] = t[x ^ e].
BitVector translate_truth(const BitVector& t, int m, std::uint32_t e);

// An affine polynomial u with support(p) inside {u = 1}, scanning u = a.x + b
// over a = 1, 2, ... with b = 0 first. Throws std::invalid_argument on p = 0.
std::optional<RMPolynomial> linear_factor(const RMPolynomial& p);

// Dimension of the affine span of the support (-1 for the zero polynomial).
int affine_span_dim(const RMPolynomial& p);

struct MinimizeOptions {
  int restarts = 24;
  std::uint64_t seed = 0;
};

// Greedy steepest descent on the monomial count over the moves
// x_i <- x_i + x_j and x_i <- x_i + 1, restarted from random perturbations of
// the best polynomial found so far.
RMPolynomial minimize_monomials(const RMPolynomial& p,
                                const MinimizeOptions& opts = {});

struct AffineFingerprint {
  std::size_t weight = 0;
  int degree = 0;
  // Sorted (derivative weight, multiplicity) pairs over directions e != 0.
  std::vector<std::pair<std::size_t, std::size_t>> derivative_profile;
  // Advisory: monomial count after minimize_monomials; 0 when not computed.
  std::size_t min_monomials = 0;

  // Equality of the certified invariants (first three fields).
  bool same_invariants(const AffineFingerprint& o) const {
    return weight == o.weight && degree == o.degree &&
           derivative_profile == o.derivative_profile;
  }
  bool operator==(const AffineFingerprint&) const = default;
  auto operator<=>(const AffineFingerprint&) const = default;
};

// Computes the fingerprint; the minimized count is included only when
// `with_minimized` is set.
AffineFingerprint affine_fingerprint(const RMPolynomial& p,
                                     bool with_minimized = true,
                                     const MinimizeOptions& opts = {});

}  // namespace triortho

#endif  // TRIORTHO_POLYNOMIAL_H_
