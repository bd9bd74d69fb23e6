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

#include "triortho/distance.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "corpus.h"

namespace triortho {
namespace {

using testing::five_classes;

// Minimum weight over the cosets of ker(G0) that are not orthogonal to G1.
std::optional<int> kernel_oracle(const DescendantCode& code) {
  const std::size_t n = code.n();
  const BitMatrix ker = code.g0.empty() ? BitMatrix::identity(n)
                                        : kernel_basis(code.g0);
  std::optional<int> best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ker.rows()); ++mask) {
    BitVector z(n);
    for (std::size_t i = 0; i < ker.rows(); ++i) {
      if ((mask >> i) & 1u) z ^= ker.row(i);
    }
    bool logical = false;
    for (const auto& g : code.g1.row_vectors()) logical |= z.dot(g) != 0;
    const int w = static_cast<int>(z.weight());
    if (logical && (!best || w < *best)) best = w;
  }
  return best;
}

// Maximum over every puncture set, building each descendant.
int dmax_oracle(const TriorthogonalSpace& s, Parity parity, std::size_t k,
                int cap) {
  const std::size_t size = parity == Parity::kEven ? k : k + 1;
  std::vector<bool> pick(s.c(), false);
  std::fill(pick.begin(), pick.begin() + size, true);
  int best = 0;
  do {
    std::vector<std::size_t> p;
    for (std::size_t i = 0; i < s.c(); ++i) {
      if (pick[i]) p.push_back(i);
    }
    if (!restriction_full_rank(s, p)) continue;
    if (parity == Parity::kEven) {
      const auto d = z_distance(even_descendant(s, p), cap);
      best = std::max(best, d.exact ? *d.value : cap + 1);
    } else {
      for (auto j : p) {
        const auto d = z_distance(odd_descendant(s, p, j), cap);
        best = std::max(best, d.exact ? *d.value : cap + 1);
      }
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

int value_of(const DistanceResult& d) { return d.exact ? *d.value : d.cap + 1; }

TEST(ZDistance, NamedCodes) {
  const auto s = testing::rm14_space();
  const std::vector<std::size_t> one = {0};
  const std::vector<std::size_t> two = {0, 1};
  const auto d15 = z_distance(even_descendant(s, one));
  EXPECT_TRUE(d15.exact);
  EXPECT_EQ(d15.value, 3);
  EXPECT_EQ(z_distance(even_descendant(s, two)).value, 2);
  const auto d35 = z_distance(testing::gen35_code());
  EXPECT_TRUE(d35.exact);
  EXPECT_EQ(d35.value, 3);
  EXPECT_EQ(d35.cap, kDefaultDistanceCap);
}

TEST(ZDistance, CapAndErrors) {
  const auto code = testing::gen35_code();
  const auto capped = z_distance(code, 2);
  EXPECT_FALSE(capped.exact);
  EXPECT_FALSE(capped.value.has_value());
  EXPECT_EQ(capped.cap, 2);
  EXPECT_EQ(z_distance(code, 3).value, 3);
  EXPECT_THROW(z_distance(code, 0), std::invalid_argument);
  DescendantCode empty;
  empty.g1 = BitMatrix(0, 4);
  empty.g0 = parse_matrix("1111\n");
  EXPECT_THROW(z_distance(empty), std::invalid_argument);
}

TEST(ZDistance, MatchesKernelOracleOnRandomMatrices) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 4 + rng() % 11;
    const std::size_t k = 1 + rng() % 3;
    const std::size_t g0_rows = rng() % (n - 1);
    DescendantCode code;
    code.g1 = BitMatrix(k, n);
    code.g0 = BitMatrix(g0_rows, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t r = 0; r < k; ++r) code.g1.set(r, i, rng() % 2);
      for (std::size_t r = 0; r < g0_rows; ++r) code.g0.set(r, i, rng() % 3 == 0);
    }
    const auto expected = kernel_oracle(code);
    const auto got = z_distance(code, static_cast<int>(n));
    if (!expected) {
      EXPECT_FALSE(got.exact);
    } else {
      EXPECT_EQ(got.value, expected);
    }
  }
}

TEST(ZDistance, MatchesKernelOracleOnDescendants) {
  const auto s = testing::rm14_space();
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> all(s.c());
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t size = 2 + rng() % 4;
    std::vector<std::size_t> p(all.begin(), all.begin() + size);
    if (!restriction_full_rank(s, p)) continue;
    const auto even = even_descendant(s, p);
    EXPECT_EQ(z_distance(even, 16).value, kernel_oracle(even));
    const auto odd = odd_descendant(s, p, p[0]);
    EXPECT_EQ(z_distance(odd, 16).value, kernel_oracle(odd));
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(DescendantDistance, AgreesWithBuiltCode) {
  std::mt19937_64 rng(21);
  for (const auto& e : five_classes()) {
    const auto s = testing::corpus_space(e);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<std::size_t> all(s.c());
      std::iota(all.begin(), all.end(), 0);
      std::shuffle(all.begin(), all.end(), rng);
      const std::size_t size = 2 + rng() % (s.r() - 1);
      std::vector<std::size_t> p(all.begin(), all.begin() + size);
      std::sort(p.begin(), p.end());
      if (!restriction_full_rank(s, p)) continue;
      const std::size_t j = p[rng() % p.size()];
      EXPECT_EQ(value_of(descendant_distance(s, {p, std::nullopt})),
                value_of(z_distance(even_descendant(s, p))));
      if (2 * p.size() <= s.c()) {
        EXPECT_EQ(value_of(descendant_distance(s, {p, j})),
                  value_of(z_distance(odd_descendant(s, p, j))));
      }
    }
  }
}

TEST(Dmax, ReedMullerSpace) {
  const auto s = testing::rm14_space();
  const auto k1 = d_max_even(s, 1);
  EXPECT_EQ(k1.distance.value, 3);
  EXPECT_EQ(d_max_even(s, 2).distance.value, 2);
  const auto odd1 = d_max_odd(s, 1);
  EXPECT_EQ(odd1.distance.value, 2);
  ASSERT_TRUE(odd1.witness.j.has_value());
  const auto code = odd_descendant(s, odd1.witness.punctured, *odd1.witness.j);
  EXPECT_EQ(z_distance(code).value, 2);
  EXPECT_EQ(z_distance(even_descendant(s, k1.witness.punctured)).value, 3);
}

TEST(Dmax, Errors) {
  const auto s = testing::rm14_space();
  EXPECT_THROW(d_max_even(s, 0), std::invalid_argument);
  EXPECT_THROW(d_max_odd(s, 0), std::invalid_argument);
  EXPECT_THROW(d_max_even(s, 6), std::invalid_argument);
  EXPECT_THROW(d_max_even(s, 8), std::invalid_argument);
  EXPECT_THROW(d_max_odd(s, 5), std::invalid_argument);
  EXPECT_THROW(d_max_even(s, 1, 0), std::invalid_argument);
}

TEST(Dmax, MatchesExhaustiveOracle) {
  for (std::size_t idx : {0u, 1u}) {
    const auto s = testing::corpus_space(five_classes()[idx]);
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, s.r()); ++k) {
      EXPECT_EQ(value_of(d_max_even(s, k).distance),
                dmax_oracle(s, Parity::kEven, k, 5))
          << idx << " even " << k;
      if (k + 1 <= s.r()) {
        EXPECT_EQ(value_of(d_max_odd(s, k).distance),
                  dmax_oracle(s, Parity::kOdd, k, 5))
            << idx << " odd " << k;
      }
    }
  }
}

TEST(Dmax, WitnessIsDeterministic) {
  const auto s = testing::corpus_space(five_classes()[2]);
  const auto a = d_max_odd(s, 2);
  const auto b = d_max_odd(s, 2);
  EXPECT_EQ(a.witness.punctured, b.witness.punctured);
  EXPECT_EQ(a.witness.j, b.witness.j);
  EXPECT_EQ(a.evaluated, b.evaluated);
}

TEST(Dmax, MonotoneAndShifted) {
  for (std::size_t idx : {0u, 1u, 2u}) {
    const auto s = testing::corpus_space(five_classes()[idx]);
    int prev_even = 100;
    int prev_odd = 100;
    for (std::size_t k = 1; k <= s.r() && 2 * k < s.c(); ++k) {
      const int even = value_of(d_max_even(s, k).distance);
      EXPECT_LE(even, prev_even);
      prev_even = even;
      if (k + 1 > s.r()) break;
      const int odd = value_of(d_max_odd(s, k).distance);
      EXPECT_LE(odd, prev_odd);
      prev_odd = odd;
      EXPECT_EQ(odd, value_of(d_max_even(s, k + 1).distance)) << idx << " " << k;
    }
  }
}

TEST(Bound, LengthAtLeastTwiceK) {
  const auto s = testing::rm14_space();
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::size_t> all(s.c());
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> p(all.begin(), all.begin() + 1 + rng() % 5);
    if (!restriction_full_rank(s, p)) continue;
    const auto code = even_descendant(s, p);
    if (value_of(z_distance(code)) >= 2) {
      EXPECT_GE(code.n(), 2 * code.k());
    }
  }
}

}  // namespace
}  // namespace triortho
