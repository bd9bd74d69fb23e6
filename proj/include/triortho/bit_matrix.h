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

#ifndef TRIORTHO_BIT_MATRIX_H_
#define TRIORTHO_BIT_MATRIX_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace triortho {

// Dense vector over F2, packed 64 bits per word. Bits past size() are zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length);

  static BitVector ones(std::size_t length);
  static BitVector unit(std::size_t length, std::size_t i);
  // Parses a string of '0'/'1' characters; whitespace is skipped.
  static BitVector from_string(std::string_view bits);
  // Low `length` bits of `word` (length <= 64).
  static BitVector from_word(std::uint64_t word, std::size_t length);

  std::size_t size() const { return length_; }
  bool empty() const { return length_ == 0; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t weight() const;
  bool any() const;
  bool none() const { return !any(); }
  // Index of the lowest set bit, or size() if none.
  std::size_t first_set() const;
  std::vector<std::size_t> support() const;

  // Inner product over F2, returned as 0 or 1.
  int dot(const BitVector& other) const;
  // Number of positions where both are set.
  std::size_t overlap(const BitVector& other) const;

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  BitVector& operator|=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }

  bool operator==(const BitVector& other) const = default;
  // Lexicographic in bit index order (bit 0 most significant for ordering).
  std::strong_ordering operator<=>(const BitVector& other) const;

  std::string to_string() const;
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }
  // First word; convenient when size() <= 64.
  std::uint64_t word0() const { return words_.empty() ? 0 : words_[0]; }

 private:
  void check_same_size(const BitVector& other) const;

  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

// Dense row-major matrix over F2.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  // All rows must share the same length; `cols` is used when rows is empty.
  BitMatrix(std::vector<BitVector> rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  // Rows given as '0'/'1' strings.
  static BitMatrix from_strings(const std::vector<std::string>& rows);

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  const BitVector& row(std::size_t i) const { return data_[i]; }
  BitVector& row(std::size_t i) { return data_[i]; }
  const std::vector<BitVector>& row_vectors() const { return data_; }
  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { data_[r].set(c, v); }

  void append_row(const BitVector& v);
  BitVector column(std::size_t c) const;
  BitMatrix transpose() const;
  // Columns listed in `cols`, in that order.
  BitMatrix select_columns(std::span<const std::size_t> cols) const;
  BitMatrix select_rows(std::span<const std::size_t> rows) const;
  // Stack `other` below this matrix.
  BitMatrix vstack(const BitMatrix& other) const;

  BitVector multiply(const BitVector& v) const;  // M v^T
  BitMatrix multiply(const BitMatrix& other) const;

  bool operator==(const BitMatrix& other) const = default;

  std::vector<std::string> to_strings() const;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

struct RrefResult {
  BitMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  BitMatrix transform;  // reduced = transform * input
};

// Gauss-Jordan elimination; pivots taken leftmost column first, topmost row
// first.
RrefResult rref(const BitMatrix& m);
std::size_t rank(const BitMatrix& m);
// Basis of {x : m x^T = 0}.
BitMatrix kernel_basis(const BitMatrix& m);
// Nonzero rows of the RREF.
BitMatrix row_basis(const BitMatrix& m);
bool in_row_span(const BitMatrix& m, const BitVector& v);
bool same_row_span(const BitMatrix& a, const BitMatrix& b);
// Projection onto `coords`, in the given order.
BitVector restrict(const BitVector& v, std::span<const std::size_t> coords);
BitMatrix restrict_columns(const BitMatrix& m,
                           std::span<const std::size_t> coords);
// Inverse of a square matrix; throws std::invalid_argument if singular.
BitMatrix inverse(const BitMatrix& m);

// Text format: one row per line of '0'/'1' with optional whitespace. Reading
// stops at a blank line, at a line equal to "---", or at end of input.
// Throws ParseError with a 1-based line number.
BitMatrix read_matrix(std::istream& in, int* line_no = nullptr);
BitMatrix parse_matrix(std::string_view text);
std::string format_matrix(const BitMatrix& m);

}  // namespace triortho

#endif  // TRIORTHO_BIT_MATRIX_H_
