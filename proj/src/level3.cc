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

#include "triortho/level3.h"

#include <bit>
#include <stdexcept>
#include <utility>

#include "triortho/errors.h"

namespace triortho {

namespace {

int mod(long long x, int m) { return static_cast<int>(((x % m) + m) % m); }

struct Reduced {
  BitMatrix m;                       // [I | A] in permuted coordinates
  std::vector<std::size_t> order;    // order[i] = original column of i
  std::vector<BitVector> tails;      // A rows
};

Reduced reduce_space(const TriorthogonalSpace& s) {
  if (!is_triorthogonal_space(s.gen)) {
    throw std::invalid_argument("space is not triorthogonal");
  }
  const RrefResult rr = rref(s.gen);
  Reduced out;
  std::vector<bool> pivot(s.c(), false);
  for (auto p : rr.pivots) {
    pivot[p] = true;
    out.order.push_back(p);
  }
  for (std::size_t i = 0; i < s.c(); ++i) {
    if (!pivot[i]) out.order.push_back(i);
  }
  out.m = BitMatrix(0, s.c());
  std::vector<std::size_t> tail_cols(out.order.begin() + rr.rank,
                                     out.order.end());
  for (std::size_t a = 0; a < rr.rank; ++a) {
    out.m.append_row(rr.reduced.row(a));
    out.tails.push_back(restrict(rr.reduced.row(a), tail_cols));
  }
  return out;
}

// Completes t on the pivot coordinates and returns it in original order.
std::vector<int> assemble(const Reduced& red, std::size_t c,
                          const std::vector<int>& tail) {
  const std::size_t r = red.tails.size();
  std::vector<int> t(c, 0);
  for (std::size_t i = 0; i < tail.size(); ++i) t[red.order[r + i]] = tail[i];
  for (std::size_t a = 0; a < r; ++a) {
    long long sum = 0;
    for (auto i : red.tails[a].support()) sum += tail[i];
    t[red.order[a]] = mod(-sum, 8);
  }
  return t;
}

std::vector<BitVector> pair_products(const Reduced& red) {
  std::vector<BitVector> n;
  for (std::size_t a = 0; a < red.tails.size(); ++a) {
    for (std::size_t b = a + 1; b < red.tails.size(); ++b) {
      BitVector row = red.tails[a];
      row &= red.tails[b];
      n.push_back(std::move(row));
    }
  }
  return n;
}

}  // namespace

DivisibilityVerdict is_level3_divisible(const TriorthogonalSpace& s) {
  const Reduced red = reduce_space(s);
  const std::size_t r = red.tails.size();
  const std::size_t free = s.c() - r;
  std::vector<std::vector<int>> un;
  for (const auto& row : pair_products(red)) {
    if (row.weight() % 2) {
      throw std::logic_error("pair product has odd weight");
    }
    std::vector<int> lifted(free, 0);
    for (auto i : row.support()) lifted[i] = 1;
    un.push_back(std::move(lifted));
  }
  // Integer row operations chosen by elimination mod 2, kept mod 4.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t next = 0;
  for (std::size_t col = 0; col < free && next < un.size(); ++col) {
    std::size_t sel = next;
    while (sel < un.size() && un[sel][col] % 2 == 0) ++sel;
    if (sel == un.size()) continue;
    std::swap(un[sel], un[next]);
    for (std::size_t i = 0; i < un.size(); ++i) {
      if (i == next || un[i][col] % 2 == 0) continue;
      for (std::size_t x = 0; x < free; ++x) {
        un[i][x] = (un[i][x] + un[next][x]) % 4;
      }
    }
    pivots.emplace_back(next, col);
    ++next;
  }
  DivisibilityVerdict verdict;
  for (std::size_t i = next; i < un.size(); ++i) {
    int sum = 0;
    for (int x : un[i]) sum += x;
    if (sum % 4 != 0) {
      verdict.obstruction = un[i];
      return verdict;
    }
  }
  std::vector<int> v(free, 0);
  for (auto [row, col] : pivots) {
    int sum = 0;
    for (int x : un[row]) sum += x;
    v[col] = (sum / 2) % 2;
  }
  std::vector<int> tail(free);
  for (std::size_t i = 0; i < free; ++i) tail[i] = 1 + 2 * v[i];
  verdict.divisible = true;
  verdict.witness = assemble(red, s.c(), tail);
  if (!check_conditions_0_to_3(s, *verdict.witness)) {
    throw std::logic_error("reconstructed witness fails the conditions");
  }
  return verdict;
}

DivisibilityVerdict brute_force_divisible(const TriorthogonalSpace& s,
                                          int max_free) {
  const Reduced red = reduce_space(s);
  const std::size_t free = s.c() - red.tails.size();
  if (free > static_cast<std::size_t>(max_free) || free > 63) {
    throw BudgetExceeded("brute force over " + std::to_string(free) +
                         " free coordinates exceeds the budget");
  }
  std::vector<std::uint64_t> rows;
  std::vector<int> weights;
  for (const auto& row : pair_products(red)) {
    rows.push_back(row.word0());
    weights.push_back(static_cast<int>(row.weight()));
  }
  DivisibilityVerdict verdict;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << free); ++v) {
    bool ok = true;
    for (std::size_t i = 0; i < rows.size() && ok; ++i) {
      ok = (weights[i] + 2 * std::popcount(rows[i] & v)) % 4 == 0;
    }
    if (!ok) continue;
    std::vector<int> tail(free);
    for (std::size_t i = 0; i < free; ++i) tail[i] = 1 + 2 * ((v >> i) & 1u);
    verdict.divisible = true;
    verdict.witness = assemble(red, s.c(), tail);
    return verdict;
  }
  return verdict;
}

bool check_conditions_0_to_3(const TriorthogonalSpace& s,
                             std::span<const int> t) {
  if (t.size() != s.c()) return false;
  for (int x : t) {
    if (mod(x, 2) != 1) return false;
  }
  const auto weighted = [&](const BitVector& v) {
    long long sum = 0;
    for (auto i : v.support()) sum += t[i];
    return sum;
  };
  const std::size_t r = s.r();
  for (std::size_t a = 0; a < r; ++a) {
    if (mod(weighted(s.gen.row(a)), 8) != 0) return false;
    for (std::size_t b = a; b < r; ++b) {
      BitVector ab = s.gen.row(a);
      ab &= s.gen.row(b);
      if (mod(weighted(ab), 4) != 0) return false;
      for (std::size_t c = b; c < r; ++c) {
        if (ab.overlap(s.gen.row(c)) % 2) return false;
      }
    }
  }
  return true;
}

}  // namespace triortho
