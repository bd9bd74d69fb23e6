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

#include "triortho/bit_matrix.h"

#include <bit>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "triortho/errors.h"

namespace triortho {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

BitVector::BitVector(std::size_t length)
    : length_(length), words_(word_count(length), 0) {}

BitVector BitVector::ones(std::size_t length) {
  BitVector v(length);
  for (auto& w : v.words_) w = ~std::uint64_t{0};
  if (length % 64 != 0 && !v.words_.empty()) {
    v.words_.back() = (std::uint64_t{1} << (length % 64)) - 1;
  }
  return v;
}

BitVector BitVector::unit(std::size_t length, std::size_t i) {
  if (i >= length) throw std::out_of_range("unit vector index out of range");
  BitVector v(length);
  v.set(i);
  return v;
}

BitVector BitVector::from_string(std::string_view bits) {
  std::vector<bool> parsed;
  for (char ch : bits) {
    if (ch == '0' || ch == '1') {
      parsed.push_back(ch == '1');
    } else if (ch != ' ' && ch != '\t' && ch != '\r') {
      throw std::invalid_argument(std::string("invalid bit character '") + ch +
                                  "'");
    }
  }
  BitVector v(parsed.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (parsed[i]) v.set(i);
  }
  return v;
}

BitVector BitVector::from_word(std::uint64_t word, std::size_t length) {
  if (length > 64) throw std::invalid_argument("from_word: length > 64");
  BitVector v(length);
  if (length > 0) {
    v.words_[0] =
        length == 64 ? word : word & ((std::uint64_t{1} << length) - 1);
  }
  return v;
}

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

std::size_t BitVector::weight() const {
  std::size_t total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

bool BitVector::any() const {
  for (auto w : words_) {
    if (w) return true;
  }
  return false;
}

std::size_t BitVector::first_set() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i]) return i * 64 + std::countr_zero(words_[i]);
  }
  return length_;
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(i * 64 + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

void BitVector::check_same_size(const BitVector& other) const {
  if (length_ != other.length_) {
    throw std::invalid_argument("bit vector length mismatch");
  }
}

int BitVector::dot(const BitVector& other) const {
  return static_cast<int>(overlap(other) & 1u);
}

std::size_t BitVector::overlap(const BitVector& other) const {
  check_same_size(other);
  std::size_t total = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    total += std::popcount(words_[i] & other.words_[i]);
  }
  return total;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::strong_ordering BitVector::operator<=>(const BitVector& other) const {
  if (length_ != other.length_) return length_ <=> other.length_;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t diff = words_[i] ^ other.words_[i];
    if (diff) {
      const std::uint64_t low = diff & (~diff + 1);
      return (words_[i] & low) ? std::strong_ordering::greater
                               : std::strong_ordering::less;
    }
  }
  return std::strong_ordering::equal;
}

std::string BitVector::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), data_(rows, BitVector(cols)) {}

BitMatrix::BitMatrix(std::vector<BitVector> rows, std::size_t cols)
    : cols_(rows.empty() ? cols : rows.front().size()), data_(std::move(rows)) {
  for (const auto& r : data_) {
    if (r.size() != cols_) {
      throw std::invalid_argument("matrix rows have different lengths");
    }
  }
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  std::vector<BitVector> parsed;
  parsed.reserve(rows.size());
  for (const auto& s : rows) parsed.push_back(BitVector::from_string(s));
  return BitMatrix(std::move(parsed), 0);
}

void BitMatrix::append_row(const BitVector& v) {
  if (data_.empty() && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.push_back(v);
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (get(r, c)) v.set(r);
  }
  return v;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c : data_[r].support()) t.set(c, r);
  }
  return t;
}

BitMatrix BitMatrix::select_columns(std::span<const std::size_t> cols) const {
  return restrict_columns(*this, cols);
}

BitMatrix BitMatrix::select_rows(std::span<const std::size_t> rows) const {
  BitMatrix out(0, cols_);
  for (std::size_t r : rows) {
    if (r >= data_.size()) throw std::out_of_range("row index out of range");
    out.append_row(data_[r]);
  }
  return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix& other) const {
  if (empty()) return other.empty() ? BitMatrix(0, std::max(cols_, other.cols_))
                                    : other;
  if (other.empty()) return *this;
  BitMatrix out = *this;
  for (const auto& r : other.data_) out.append_row(r);
  return out;
}

BitVector BitMatrix::multiply(const BitVector& v) const {
  BitVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (data_[r].dot(v)) out.set(r);
  }
  return out;
}

BitMatrix BitMatrix::multiply(const BitMatrix& other) const {
  if (cols_ != other.rows()) {
    throw std::invalid_argument("matrix product dimension mismatch");
  }
  BitMatrix out(rows(), other.cols());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t k : data_[r].support()) out.data_[r] ^= other.data_[k];
  }
  return out;
}

std::vector<std::string> BitMatrix::to_strings() const {
  std::vector<std::string> out;
  out.reserve(rows());
  for (const auto& r : data_) out.push_back(r.to_string());
  return out;
}

RrefResult rref(const BitMatrix& m) {
  RrefResult res;
  res.reduced = m;
  res.transform = BitMatrix::identity(m.rows());
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < m.rows(); ++c) {
    std::size_t p = next;
    while (p < m.rows() && !res.reduced.get(p, c)) ++p;
    if (p == m.rows()) continue;
    if (p != next) {
      std::swap(res.reduced.row(p), res.reduced.row(next));
      std::swap(res.transform.row(p), res.transform.row(next));
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != next && res.reduced.get(r, c)) {
        res.reduced.row(r) ^= res.reduced.row(next);
        res.transform.row(r) ^= res.transform.row(next);
      }
    }
    res.pivots.push_back(c);
    ++next;
  }
  res.rank = next;
  return res;
}

std::size_t rank(const BitMatrix& m) { return rref(m).rank; }

BitMatrix kernel_basis(const BitMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  BitMatrix out(0, m.cols());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector x(m.cols());
    x.set(f);
    for (std::size_t i = 0; i < r.rank; ++i) {
      if (r.reduced.get(i, f)) x.set(r.pivots[i]);
    }
    out.append_row(x);
  }
  return out;
}

BitMatrix row_basis(const BitMatrix& m) {
  RrefResult r = rref(m);
  BitMatrix out(0, m.cols());
  for (std::size_t i = 0; i < r.rank; ++i) out.append_row(r.reduced.row(i));
  return out;
}

bool in_row_span(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("length mismatch");
  const RrefResult r = rref(m);
  BitVector x = v;
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (x.get(r.pivots[i])) x ^= r.reduced.row(i);
  }
  return x.none();
}

bool same_row_span(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.cols()) return false;
  const BitMatrix ra = row_basis(a);
  const BitMatrix rb = row_basis(b);
  return ra == rb;
}

BitVector restrict(const BitVector& v, std::span<const std::size_t> coords) {
  BitVector out(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= v.size()) {
      throw std::out_of_range("restrict: coordinate " +
                              std::to_string(coords[i]) + " out of range");
    }
    if (v.get(coords[i])) out.set(i);
  }
  return out;
}

BitMatrix restrict_columns(const BitMatrix& m,
                           std::span<const std::size_t> coords) {
  BitMatrix out(0, coords.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out.append_row(restrict(m.row(r), coords));
  }
  return out;
}

BitMatrix inverse(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  RrefResult r = rref(m);
  if (r.rank != m.rows()) throw std::invalid_argument("inverse: singular");
  return r.transform;
}

BitMatrix read_matrix(std::istream& in, int* line_no) {
  int local_line = 0;
  int& line = line_no ? *line_no : local_line;
  std::vector<BitVector> rows;
  std::string text;
  while (std::getline(in, text)) {
    ++line;
    std::string trimmed;
    for (char ch : text) {
      if (ch != ' ' && ch != '\t' && ch != '\r') trimmed.push_back(ch);
    }
    if (trimmed.empty() || trimmed == "---") break;
    if (!trimmed.empty() && trimmed[0] == '#') continue;
    for (char ch : trimmed) {
      if (ch != '0' && ch != '1') {
        throw ParseError(std::string("invalid character '") + ch +
                             "' in matrix row",
                         line);
      }
    }
    BitVector row = BitVector::from_string(trimmed);
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("row length " + std::to_string(row.size()) +
                           " differs from " +
                           std::to_string(rows.front().size()),
                       line);
    }
    rows.push_back(std::move(row));
  }
  return BitMatrix(std::move(rows), 0);
}

BitMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_matrix(in);
}

std::string format_matrix(const BitMatrix& m) {
  std::string out;
  for (const auto& r : m.row_vectors()) {
    out += r.to_string();
    out += '\n';
  }
  return out;
}

}  // namespace triortho
