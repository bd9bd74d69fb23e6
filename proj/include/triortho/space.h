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

#ifndef TRIORTHO_SPACE_H_
#define TRIORTHO_SPACE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "triortho/bit_matrix.h"
#include "triortho/polynomial.h"

namespace triortho {

// Subspace of F2^c given by a full-rank generator matrix whose rows satisfy
// the triple-product condition.
struct TriorthogonalSpace {
  BitMatrix gen;
  bool unital = false;

  std::size_t r() const { return gen.rows(); }
  std::size_t c() const { return gen.cols(); }
};

enum class Parity { kEven, kOdd };

const char* parity_name(Parity p);
Parity parse_parity(std::string_view s);

struct DescendantOrigin {
  std::vector<std::size_t> punctured;  // P, sorted
  std::optional<std::size_t> j;        // odd case only
};

// Triorthogonal matrix split into odd-weight rows g1 and even-weight rows g0.
struct DescendantCode {
  BitMatrix g1;
  BitMatrix g0;
  Parity parity = Parity::kEven;
  std::optional<DescendantOrigin> origin;

  std::size_t n() const { return g1.empty() ? g0.cols() : g1.cols(); }
  std::size_t k() const { return g1.rows(); }
  std::size_t g0_rows() const { return g0.rows(); }
  BitMatrix stacked() const { return g1.vstack(g0); }
};

class LinearFactorError : public std::invalid_argument {
 public:
  explicit LinearFactorError(RMPolynomial factor);
  const RMPolynomial& factor() const { return factor_; }

 private:
  RMPolynomial factor_;
};

// Every triple of rows (repeats allowed) has even overlap.
bool is_triorthogonal_space(const BitMatrix& h);

// Distinct row pairs and triples have even overlap, g1 rows odd weight, g0
// rows even weight.
bool verify_triorthogonal_matrix(const BitMatrix& g1, const BitMatrix& g0);

// Wraps a generator after checking triorthogonality; dependent rows are
// replaced by a row basis. Throws std::invalid_argument otherwise.
TriorthogonalSpace make_space(const BitMatrix& gen);

// Rows: all-one, then the value lists of x_1..x_m on the support of p.
// Columns (1, x) in increasing order of x. No validity checks.
BitMatrix indicator_matrix(const RMPolynomial& p);

// indicator_matrix as a space. Throws LinearFactorError if p has an affine
// factor, std::invalid_argument for p = 0 or deg p > m - 4.
TriorthogonalSpace indicator_to_generator(const RMPolynomial& p);

// Requires an all-one first row and distinct columns.
RMPolynomial generator_to_indicator(const BitMatrix& h);

// Restriction of the row space to P has rank |P|.
bool restriction_full_rank(const TriorthogonalSpace& s,
                           std::span<const std::size_t> punctured);

DescendantCode even_descendant(const TriorthogonalSpace& s,
                               std::span<const std::size_t> punctured);
DescendantCode odd_descendant(const TriorthogonalSpace& s,
                              std::span<const std::size_t> punctured,
                              std::size_t j);

TriorthogonalSpace unitalize(const DescendantCode& code);

// Dimension r of the unital space the code descends from.
std::size_t parent_dimension(const DescendantCode& code);

// When the code has Z distance at least 2 (searched up to `cap`), checks
// rank(G0) >= 4 for even parent dimension and >= 3 for odd. Returns true when
// the premise fails.
bool rank_g0_check(const DescendantCode& code, int cap = 5);

// Equality up to a permutation of columns.
bool columns_isomorphic(const BitMatrix& a, const BitMatrix& b);

}  // namespace triortho

#endif  // TRIORTHO_SPACE_H_
