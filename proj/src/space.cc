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

#include "triortho/space.h"

#include <algorithm>
#include <bit>
#include <string>

#include "triortho/distance.h"

namespace triortho {

namespace {

std::size_t triple_overlap(const BitVector& a, const BitVector& b,
                           const BitVector& c) {
  auto wa = a.words(), wb = b.words(), wc = c.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    total += std::popcount(wa[i] & wb[i] & wc[i]);
  }
  return total;
}

std::vector<std::size_t> sorted_unique(std::span<const std::size_t> p,
                                       std::size_t c) {
  std::vector<std::size_t> out(p.begin(), p.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::invalid_argument("puncture set has repeated coordinates");
  }
  for (auto i : out) {
    if (i >= c) {
      throw std::out_of_range("puncture coordinate " + std::to_string(i) +
                              " out of range");
    }
  }
  return out;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& p,
                                    std::size_t c) {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < c; ++i) {
    if (k < p.size() && p[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

// Rows of `rows` (columns ordered as `front` then `back`) in RREF; splits the
// rows carrying the identity on `front` from the rest, both restricted to
// `back`.
void split_descendant(const BitMatrix& rows,
                      const std::vector<std::size_t>& front,
                      const std::vector<std::size_t>& back, DescendantCode& out) {
  std::vector<std::size_t> order = front;
  order.insert(order.end(), back.begin(), back.end());
  const RrefResult r = rref(rows.select_columns(order));
  for (std::size_t i = 0; i < front.size(); ++i) {
    if (i >= r.pivots.size() || r.pivots[i] != i) {
      throw std::invalid_argument(
          "restriction to the puncture set is not full rank");
    }
  }
  std::vector<std::size_t> tail;
  for (std::size_t i = front.size(); i < order.size(); ++i) tail.push_back(i);
  out.g1 = BitMatrix(0, back.size());
  out.g0 = BitMatrix(0, back.size());
  for (std::size_t i = 0; i < r.rank; ++i) {
    BitVector row = restrict(r.reduced.row(i), tail);
    if (i < front.size()) {
      out.g1.append_row(row);
    } else {
      out.g0.append_row(row);
    }
  }
}

void require_unital(const TriorthogonalSpace& s) {
  if (!s.unital) throw std::invalid_argument("space is not unital");
}

}  // namespace

const char* parity_name(Parity p) {
  return p == Parity::kEven ? "even" : "odd";
}

Parity parse_parity(std::string_view s) {
  if (s == "even") return Parity::kEven;
  if (s == "odd") return Parity::kOdd;
  throw std::invalid_argument("parity must be 'even' or 'odd'");
}

LinearFactorError::LinearFactorError(RMPolynomial factor)
    : std::invalid_argument("polynomial has the linear factor " +
                            factor.to_string()),
      factor_(std::move(factor)) {}

bool is_triorthogonal_space(const BitMatrix& h) {
  const std::size_t r = h.rows();
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a; b < r; ++b) {
      for (std::size_t c = b; c < r; ++c) {
        if (triple_overlap(h.row(a), h.row(b), h.row(c)) & 1u) return false;
      }
    }
  }
  return true;
}

bool verify_triorthogonal_matrix(const BitMatrix& g1, const BitMatrix& g0) {
  if (!g1.empty() && !g0.empty() && g1.cols() != g0.cols()) return false;
  for (const auto& row : g1.row_vectors()) {
    if (row.weight() % 2 != 1) return false;
  }
  for (const auto& row : g0.row_vectors()) {
    if (row.weight() % 2 != 0) return false;
  }
  const BitMatrix g = g1.vstack(g0);
  const std::size_t r = g.rows();
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      if (g.row(a).overlap(g.row(b)) & 1u) return false;
      for (std::size_t c = b + 1; c < r; ++c) {
        if (triple_overlap(g.row(a), g.row(b), g.row(c)) & 1u) return false;
      }
    }
  }
  return true;
}

TriorthogonalSpace make_space(const BitMatrix& gen) {
  TriorthogonalSpace s;
  s.gen = rank(gen) == gen.rows() ? gen : row_basis(gen);
  if (!is_triorthogonal_space(s.gen)) {
    throw std::invalid_argument("rows are not triorthogonal");
  }
  s.unital = s.c() % 2 == 0 && s.c() > 0 &&
             in_row_span(s.gen, BitVector::ones(s.c()));
  return s;
}

BitMatrix indicator_matrix(const RMPolynomial& p) {
  const auto supp = p.support();
  const int m = p.num_vars();
  BitMatrix h(static_cast<std::size_t>(m) + 1, supp.size());
  for (std::size_t col = 0; col < supp.size(); ++col) {
    h.set(0, col);
    for (int i = 0; i < m; ++i) {
      if ((supp[col] >> i) & 1u) h.set(static_cast<std::size_t>(i) + 1, col);
    }
  }
  return h;
}

TriorthogonalSpace indicator_to_generator(const RMPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("zero indicator polynomial");
  if (auto u = linear_factor(p)) throw LinearFactorError(*u);
  if (p.degree() > p.num_vars() - 4) {
    throw std::invalid_argument("degree " + std::to_string(p.degree()) +
                                " exceeds m - 4; space is not triorthogonal");
  }
  TriorthogonalSpace s = make_space(indicator_matrix(p));
  if (s.r() != static_cast<std::size_t>(p.num_vars()) + 1) {
    throw std::logic_error("indicator matrix lost rank");
  }
  return s;
}

RMPolynomial generator_to_indicator(const BitMatrix& h) {
  if (h.rows() == 0) throw std::invalid_argument("empty generator");
  if (h.row(0) != BitVector::ones(h.cols())) {
    throw std::invalid_argument("first row of the generator is not all-one");
  }
  const int m = static_cast<int>(h.rows()) - 1;
  if (m > kMaxVars) throw std::invalid_argument("too many rows");
  BitVector truth(std::size_t{1} << m);
  for (std::size_t col = 0; col < h.cols(); ++col) {
    std::uint32_t x = 0;
    for (int i = 0; i < m; ++i) {
      if (h.get(static_cast<std::size_t>(i) + 1, col)) x |= 1u << i;
    }
    if (truth.get(x)) {
      throw std::invalid_argument("generator has repeated columns");
    }
    truth.set(x);
  }
  return RMPolynomial::from_truth(m, std::move(truth));
}

bool restriction_full_rank(const TriorthogonalSpace& s,
                           std::span<const std::size_t> punctured) {
  return rank(restrict_columns(s.gen, punctured)) == punctured.size();
}

DescendantCode even_descendant(const TriorthogonalSpace& s,
                               std::span<const std::size_t> punctured) {
  require_unital(s);
  const auto p = sorted_unique(punctured, s.c());
  if (2 * p.size() >= s.c()) {
    throw std::invalid_argument("|P| must be smaller than c/2");
  }
  DescendantCode code;
  code.parity = Parity::kEven;
  split_descendant(s.gen, p, complement(p, s.c()), code);
  code.origin = DescendantOrigin{p, std::nullopt};
  if (!verify_triorthogonal_matrix(code.g1, code.g0)) {
    throw std::logic_error("even descendant failed triorthogonality recheck");
  }
  return code;
}

DescendantCode odd_descendant(const TriorthogonalSpace& s,
                              std::span<const std::size_t> punctured,
                              std::size_t j) {
  require_unital(s);
  const auto p = sorted_unique(punctured, s.c());
  if (!std::binary_search(p.begin(), p.end(), j)) {
    throw std::invalid_argument("j is not in the puncture set");
  }
  if (2 * p.size() >= s.c() + 1) {
    throw std::invalid_argument("|P| must be smaller than (c+1)/2");
  }
  // Basis of {h : h_j = 0}: add the all-one vector to rows that are set at j.
  const BitVector ones = BitVector::ones(s.c());
  BitMatrix rows(0, s.c());
  for (const auto& h : s.gen.row_vectors()) {
    rows.append_row(h.get(j) ? h ^ ones : h);
  }
  std::vector<std::size_t> front;
  for (auto i : p) {
    if (i != j) front.push_back(i);
  }
  DescendantCode code;
  code.parity = Parity::kOdd;
  split_descendant(rows, front, complement(p, s.c()), code);
  code.origin = DescendantOrigin{p, j};
  if (code.k() + code.g0_rows() + 1 != s.r()) {
    throw std::logic_error("odd descendant has unexpected dimension");
  }
  if (!verify_triorthogonal_matrix(code.g1, code.g0)) {
    throw std::logic_error("odd descendant failed triorthogonality recheck");
  }
  return code;
}

TriorthogonalSpace unitalize(const DescendantCode& code) {
  const std::size_t n = code.n();
  const std::size_t k = code.k();
  const BitMatrix g0 = code.g0.empty() ? BitMatrix(0, n) : row_basis(code.g0);
  BitMatrix parent;
  if ((n + k) % 2 == 1) {
    const std::size_t c = n + k + 1;
    parent = BitMatrix(0, c);
    parent.append_row(BitVector::ones(c));
    for (std::size_t i = 0; i < k; ++i) {
      BitVector row(c);
      row.set(1 + i);
      for (auto t : code.g1.row(i).support()) row.set(1 + k + t);
      parent.append_row(row);
    }
    for (const auto& g : g0.row_vectors()) {
      BitVector row(c);
      for (auto t : g.support()) row.set(1 + k + t);
      parent.append_row(row);
    }
  } else {
    BitVector v = BitVector::ones(n);
    for (const auto& g : code.g1.row_vectors()) v ^= g;
    BitMatrix g0v = g0;
    if (!in_row_span(g0, v)) g0v.append_row(v);
    const std::size_t c = n + k;
    parent = BitMatrix(0, c);
    for (std::size_t i = 0; i < k; ++i) {
      BitVector row(c);
      row.set(i);
      for (auto t : code.g1.row(i).support()) row.set(k + t);
      parent.append_row(row);
    }
    for (const auto& g : g0v.row_vectors()) {
      BitVector row(c);
      for (auto t : g.support()) row.set(k + t);
      parent.append_row(row);
    }
  }
  TriorthogonalSpace s = make_space(parent);
  if (!s.unital) throw std::logic_error("unitalized space is not unital");
  return s;
}

std::size_t parent_dimension(const DescendantCode& code) {
  const std::size_t g0_rank = code.g0.empty() ? 0 : rank(code.g0);
  return code.k() + g0_rank + (code.parity == Parity::kOdd ? 1 : 0);
}

bool rank_g0_check(const DescendantCode& code, int cap) {
  if (code.k() == 0) return true;
  const DistanceResult d = z_distance(code, cap);
  if (d.exact && *d.value < 2) return true;
  const std::size_t g0_rank = code.g0.empty() ? 0 : rank(code.g0);
  const std::size_t r = parent_dimension(code);
  return g0_rank >= (r % 2 == 0 ? 4u : 3u);
}

bool columns_isomorphic(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  std::vector<BitVector> ca, cb;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    ca.push_back(a.column(c));
    cb.push_back(b.column(c));
  }
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  return ca == cb;
}

}  // namespace triortho
