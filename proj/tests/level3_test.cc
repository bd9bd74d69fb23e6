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

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "corpus.h"
#include "triortho/errors.h"

namespace triortho {
namespace {

using testing::five_classes;

// Every vector of the span has weighted weight divisible by 8.
bool span_divisible_oracle(const BitMatrix& h, const std::vector<int>& t) {
  for (std::uint32_t mask = 0; mask < (1u << h.rows()); ++mask) {
    BitVector v(h.cols());
    for (std::size_t i = 0; i < h.rows(); ++i) {
      if ((mask >> i) & 1u) v ^= h.row(i);
    }
    int sum = 0;
    for (auto i : v.support()) sum += t[i];
    if (sum % 8 != 0) return false;
  }
  return true;
}

TEST(Level3, ReedMullerDivisible) {
  const auto s = testing::rm14_space();
  const auto v = is_level3_divisible(s);
  ASSERT_TRUE(v.divisible);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_FALSE(v.obstruction.has_value());
  EXPECT_TRUE(check_conditions_0_to_3(s, *v.witness));
  EXPECT_TRUE(span_divisible_oracle(s.gen, *v.witness));
  EXPECT_TRUE(brute_force_divisible(s).divisible);
}

TEST(Level3, ThreeQuadraticsNotDivisible) {
  const auto s = testing::corpus_space(five_classes()[2]);
  const auto v = is_level3_divisible(s);
  EXPECT_FALSE(v.divisible);
  EXPECT_FALSE(v.witness.has_value());
  ASSERT_TRUE(v.obstruction.has_value());
  int sum = 0;
  for (int x : *v.obstruction) {
    EXPECT_EQ(x % 2, 0);
    sum += x;
  }
  EXPECT_NE(sum % 4, 0);
  EXPECT_FALSE(brute_force_divisible(s).divisible);
  const std::vector<int> ones(s.c(), 1);
  EXPECT_FALSE(check_conditions_0_to_3(s, ones));
}

TEST(Level3, AllOneLine) {
  const auto s = make_space(parse_matrix("11111111\n"));
  const auto v = is_level3_divisible(s);
  ASSERT_TRUE(v.divisible);
  EXPECT_EQ(*v.witness, std::vector<int>(8, 1));
}

TEST(Level3, FastMatchesOracleOnCorpus) {
  for (const auto& e : five_classes()) {
    const auto s = testing::corpus_space(e);
    if (s.c() - s.r() > 24) continue;
    const auto fast = is_level3_divisible(s);
    const auto slow = brute_force_divisible(s);
    EXPECT_EQ(fast.divisible, slow.divisible) << e.text;
    if (slow.divisible) {
      EXPECT_TRUE(check_conditions_0_to_3(s, *slow.witness));
      EXPECT_TRUE(check_conditions_0_to_3(s, *fast.witness));
    }
  }
}

TEST(Level3, FastMatchesOracleOnDescendantParents) {
  std::mt19937_64 rng(4);
  for (const auto& e : five_classes()) {
    const auto s = testing::corpus_space(e);
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<std::size_t> p = {rng() % s.c()};
      if (rng() & 1u) {
        std::size_t q = rng() % s.c();
        if (q != p[0]) p.push_back(q);
      }
      const auto parent =
          p.size() > 1 && (rng() & 1u)
              ? unitalize(odd_descendant(s, p, p[1]))
              : unitalize(even_descendant(s, p));
      if (parent.c() - parent.r() > 20) continue;
      EXPECT_EQ(is_level3_divisible(parent).divisible,
                brute_force_divisible(parent).divisible);
    }
  }
}

TEST(Level3, ScrambledBasisSameVerdict) {
  std::mt19937_64 rng(8);
  for (const auto& e : five_classes()) {
    const auto s = testing::corpus_space(e);
    BitMatrix t(s.r(), s.r());
    do {
      for (std::size_t i = 0; i < s.r(); ++i) {
        for (std::size_t j = 0; j < s.r(); ++j) t.set(i, j, rng() & 1u);
      }
    } while (rank(t) != s.r());
    std::vector<std::size_t> perm(s.c());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto scrambled = make_space(t.multiply(s.gen).select_columns(perm));
    const auto a = is_level3_divisible(s);
    const auto b = is_level3_divisible(scrambled);
    EXPECT_EQ(a.divisible, b.divisible) << e.text;
    if (b.divisible) {
      EXPECT_TRUE(check_conditions_0_to_3(scrambled, *b.witness));
    }
  }
}

TEST(Level3, BudgetAndErrors) {
  const auto s = testing::corpus_space(five_classes()[4]);
  EXPECT_THROW(brute_force_divisible(s, 10), BudgetExceeded);
  TriorthogonalSpace bad;
  bad.gen = parse_matrix("1100\n0110\n");
  EXPECT_THROW(is_level3_divisible(bad), std::invalid_argument);
  EXPECT_THROW(brute_force_divisible(bad), std::invalid_argument);
}

TEST(Conditions, RejectsEvenEntryAndLength) {
  const auto s = testing::rm14_space();
  auto t = *is_level3_divisible(s).witness;
  t[3] += 1;
  EXPECT_FALSE(check_conditions_0_to_3(s, t));
  t.pop_back();
  EXPECT_FALSE(check_conditions_0_to_3(s, t));
}

// On length 8, any odd t satisfying the basis conditions forces the span to
// be triorthogonal and every span vector to have weighted weight 0 mod 8.
TEST(Conditions, ImplyTriorthogonalAndSpanDivisibility) {
  std::mt19937_64 rng(17);
  int divisible_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 3;
    BitMatrix h(r, 8);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < 8; ++j) h.set(i, j, rng() % 3 != 0);
    }
    if (rank(h) != r) continue;
    TriorthogonalSpace s;
    s.gen = h;
    bool any = false;
    for (std::uint32_t code = 0; code < (1u << 16); ++code) {
      std::vector<int> t(8);
      for (int i = 0; i < 8; ++i) t[i] = 1 + 2 * ((code >> (2 * i)) & 3u);
      const bool cond = check_conditions_0_to_3(s, t);
      EXPECT_EQ(cond, span_divisible_oracle(h, t));
      if (cond) {
        any = true;
        EXPECT_TRUE(is_triorthogonal_space(h));
      }
    }
    if (is_triorthogonal_space(h)) {
      EXPECT_EQ(is_level3_divisible(s).divisible, any);
      EXPECT_EQ(brute_force_divisible(s).divisible, any);
    }
    divisible_seen += any;
  }
  EXPECT_GT(divisible_seen, 0);
}

}  // namespace
}  // namespace triortho
