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

#include "triortho/magic.h"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "corpus.h"
#include "triortho/errors.h"

namespace triortho {
namespace {

using testing::fifteen_one_code;
using testing::five_classes;

QuadraticFormZ4 random_form(int m, std::mt19937_64& rng) {
  QuadraticFormZ4 f(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) f.set(i, j, static_cast<int>(rng() & 3));
  }
  return f;
}

BitMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  BitMatrix v(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) v.set(i, j, rng() & 1);
  }
  return v;
}

void expect_same_function(const QuadraticFormZ4& a, const QuadraticFormZ4& b) {
  ASSERT_EQ(a.m(), b.m());
  for (std::uint32_t z = 0; z < (1u << a.m()); ++z) {
    ASSERT_EQ(a(z), b(z)) << "z = " << z;
  }
}

// Exponent of exp(i pi/8 (1 - (-1)^{v.z})) summed over rows, in units of pi/4.
int direct_t_exponent(const BitMatrix& v, std::uint32_t z) {
  int e = 0;
  for (const auto& row : v.row_vectors()) {
    e += std::popcount(static_cast<std::uint32_t>(row.word0()) & z) & 1;
  }
  return e & 7;
}

// Descendants of the corpus spaces, several per space.
std::vector<DescendantCode> corpus_codes() {
  std::vector<DescendantCode> codes;
  for (const auto& e : five_classes()) {
    const auto s = testing::corpus_space(e);
    for (std::size_t k = 1; k <= 3; ++k) {
      std::vector<std::size_t> p;
      for (std::size_t i = 0; i < s.c() && p.size() < k; ++i) {
        p.push_back(i);
        if (!restriction_full_rank(s, p)) p.pop_back();
      }
      if (p.size() == k && 2 * k < s.c()) codes.push_back(even_descendant(s, p));
    }
  }
  codes.push_back(testing::gen35_code());
  return codes;
}

TEST(FormZ4, Evaluation) {
  QuadraticFormZ4 zero(3);
  for (std::uint32_t z = 0; z < 8; ++z) EXPECT_EQ(zero(z), 0);
  QuadraticFormZ4 id(2);
  id.set(0, 0, 1);
  id.set(1, 1, 1);
  EXPECT_EQ(id(3), 2);
  EXPECT_EQ(eval_form(id, BitVector::from_string("11")), 2);
  EXPECT_THROW(eval_form(id, BitVector::from_string("111")), std::invalid_argument);
}

TEST(FormZ4, IntegerLiftIsWellDefined) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    const auto f = random_form(m, rng);
    const std::uint32_t z = rng() & ((1u << m) - 1);
    std::vector<long> lift(m);
    for (int i = 0; i < m; ++i) {
      lift[i] = ((z >> i) & 1) + 2 * static_cast<long>(rng() % 7) - 6;
    }
    long q = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) q += lift[i] * f.at(i, j) * lift[j];
    }
    EXPECT_EQ(((q % 4) + 4) % 4, f(z));
  }
}

TEST(FormZ4, EvenOffDiagonalIsInvisible) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 5);
    const auto f = random_form(m, rng);
    auto g = f;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (rng() & 1) g.set(i, j, g.at(i, j) + 2);
      }
    }
    expect_same_function(f, g);
  }
}

TEST(Decompose, Examples) {
  const auto empty = decompose_form(QuadraticFormZ4(4));
  EXPECT_EQ(empty.w.rows(), 0u);
  EXPECT_TRUE(empty.d.none());

  QuadraticFormZ4 id(3);
  for (int i = 0; i < 3; ++i) id.set(i, i, 1);
  const auto di = decompose_form(id);
  EXPECT_EQ(di.w, BitMatrix::identity(3));
  EXPECT_TRUE(di.d.none());

  QuadraticFormZ4 hyp(2);
  hyp.set(0, 1, 1);
  const auto dh = decompose_form(hyp);
  EXPECT_EQ(form_rank(hyp), 2u);
  EXPECT_EQ(dh.w.rows(), 3u);
  expect_same_function(form_of(dh), hyp);
}

TEST(Decompose, RandomFormsExhaustive) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 10);
    auto f = random_form(m, rng);
    if (trial % 3 == 0) {
      for (int i = 0; i < m; ++i) f.set(i, i, f.at(i, i) & 2);
    }
    const auto dec = decompose_form(f);
    expect_same_function(form_of(dec), f);
    const std::size_t r0 = form_rank(f);
    EXPECT_GE(dec.w.rows(), r0);
    EXPECT_LE(dec.w.rows(), r0 + 1);
    bool odd_diagonal = false;
    for (int i = 0; i < m; ++i) odd_diagonal |= f.at(i, i) & 1;
    if (odd_diagonal) {
      EXPECT_EQ(dec.w.rows(), r0);
    }
  }
}

TEST(SPhase, MatchesGateProduct) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    const auto v = random_matrix(1 + rng() % 9, m, rng);
    const auto f = s_phase_from_set(v);
    for (std::uint32_t z = 0; z < (1u << m); ++z) {
      int e = 0;
      for (const auto& row : v.row_vectors()) {
        e += std::popcount(static_cast<std::uint32_t>(row.word0()) & z) & 1;
      }
      ASSERT_EQ(f(z), e & 3);
      // S(V)^2 is the Pauli prod Z(v).
      ASSERT_EQ((2 * f(z)) & 3, (2 * e) & 3);
    }
    EXPECT_LE(decompose_form(f).w.rows(), static_cast<std::size_t>(m) + 1);
  }
  const auto one = s_phase_from_set(BitMatrix::from_strings({"101"}));
  EXPECT_EQ(one.at(0, 0), 1);
  EXPECT_EQ(one.at(0, 2), 1);
  EXPECT_EQ(one.at(1, 1), 0);
}

TEST(TPhase, MatchesGateProduct) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4);
    const auto v = random_matrix(1 + rng() % 12, m, rng);
    const auto p = t_phase_from_set(v);
    for (std::uint32_t z = 0; z < (1u << m); ++z) {
      ASSERT_EQ(p(z), direct_t_exponent(v, z));
      ASSERT_EQ(p.eval(BitVector::from_word(z, m)), p(z));
    }
  }
  const auto t = t_phase_from_set(BitMatrix::from_strings({"100"}));
  EXPECT_TRUE(t.cubic.empty());
  EXPECT_TRUE(t.quadratic.empty());
  EXPECT_EQ(t.linear, (std::map<int, int>{{0, 1}}));
}

TEST(TPhase, CubicVanishesOnTriorthogonalColumns) {
  for (const auto& code : corpus_codes()) {
    const auto p = t_phase_from_set(code.stacked().transpose());
    EXPECT_TRUE(p.cubic.empty()) << code.n();
  }
  const auto bad = t_phase_from_set(BitMatrix::from_strings({"111"}));
  EXPECT_FALSE(bad.cubic.empty());
}

TEST(CorrectionSG, LeavesLogicalT) {
  for (const auto& code : corpus_codes()) {
    const auto total =
        t_phase_from_set(code.stacked().transpose()) + (-correction_SG(code));
    EXPECT_TRUE(total.cubic.empty());
    EXPECT_TRUE(total.quadratic.empty());
    std::map<int, int> logical;
    for (int b = 0; b < static_cast<int>(code.k()); ++b) logical[b] = 1;
    EXPECT_EQ(total.linear, logical) << code.n();
    EXPECT_NO_THROW(clifford_form(correction_SG(code)));
  }
}

TEST(CorrectionSG, FifteenOneExhaustive) {
  const auto code = fifteen_one_code();
  const auto v = code.stacked().transpose();
  const auto sg = correction_SG(code);
  for (std::uint32_t z = 0; z < 32; ++z) {
    EXPECT_EQ((direct_t_exponent(v, z) - sg(z) + 8) & 7, static_cast<int>(z & 1));
  }
}

TEST(CorrectionSG, EmptyAndErrors) {
  DescendantCode empty;
  empty.g1 = BitMatrix(0, 0);
  empty.g0 = BitMatrix(0, 0);
  EXPECT_TRUE(correction_SG(empty).is_zero());
  DescendantCode bad;
  bad.g1 = BitMatrix::from_strings({"11100"});
  bad.g0 = BitMatrix::from_strings({"10011"});
  EXPECT_THROW(correction_SG(bad), std::invalid_argument);
}

TEST(CliffordForm, RoundTrip) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 5);
    PhasePolynomial8 p;
    p.m = m;
    for (int b = 0; b < m; ++b) {
      if (const int c = 2 * static_cast<int>(rng() % 4)) p.linear[b] = c;
      for (int c = b + 1; c < m; ++c) {
        if (rng() & 1) p.quadratic[{b, c}] = 2;
      }
    }
    const auto f = clifford_form(p);
    for (std::uint32_t z = 0; z < (1u << m); ++z) EXPECT_EQ(2 * f(z) & 7, p(z));
  }
  PhasePolynomial8 t;
  t.m = 1;
  t.linear[0] = 1;
  EXPECT_THROW(clifford_form(t), std::invalid_argument);
}

TEST(Protocol, FifteenOneNoiseless) {
  const auto code = fifteen_one_code();
  for (const auto variant : {ProtocolVariant::kStandard, ProtocolVariant::kDelayed}) {
    ProtocolOptions opts;
    opts.variant = variant;
    std::mt19937_64 rng(5);
    for (int shot = 0; shot < 200; ++shot) {
      const auto t = simulate_protocol(code, opts, rng);
      EXPECT_EQ(t.outcomes.size(), 15u);
      EXPECT_NEAR(t.pass_probability, 1.0, 1e-9);
      EXPECT_TRUE(t.postselect_pass);
      EXPECT_NEAR(t.output_fidelity, 1.0, 1e-9);
      std::size_t minus = 0;
      for (int o : t.outcomes) minus += o == -1;
      EXPECT_EQ(t.correction_set.size(), minus);
      if (variant == ProtocolVariant::kDelayed) {
        EXPECT_LE(t.s_injection_count, 6u);
        EXPECT_EQ(t.s_injection_count, t.reduced.w.rows());
      }
    }
  }
}

TEST(Protocol, FlippedConvention) {
  const auto code = fifteen_one_code();
  ProtocolOptions opts;
  opts.correct_on_plus = true;
  std::mt19937_64 rng(6);
  for (int shot = 0; shot < 50; ++shot) {
    const auto t = simulate_protocol(code, opts, rng);
    std::size_t plus = 0;
    for (int o : t.outcomes) plus += o == 1;
    EXPECT_EQ(t.correction_set.size(), plus);
    EXPECT_NEAR(t.output_fidelity, 1.0, 1e-9);
  }
}

TEST(Protocol, CorrectionCountIsBinomial) {
  ProtocolOptions opts;
  opts.variant = ProtocolVariant::kStandard;
  const auto s = simulate_shots(fifteen_one_code(), opts, 10000, 0);
  EXPECT_NEAR(s.mean_corrections, 7.5, 0.15);
  EXPECT_DOUBLE_EQ(s.pass_rate, 1.0);
  EXPECT_NEAR(s.min_fidelity_on_pass, 1.0, 1e-9);
}

TEST(Protocol, NoiseIsDetectedOrHarmless) {
  ProtocolOptions opts;
  opts.noise = 0.05;
  const auto s = simulate_shots(fifteen_one_code(), opts, 2000, 1);
  EXPECT_LT(s.pass_rate, 1.0);
  EXPECT_GT(s.pass_rate, 0.3);
  EXPECT_GT(s.mean_fidelity_on_pass, 0.95);
  EXPECT_LT(s.mean_fidelity_on_pass, 1.0);
}

TEST(Protocol, SingleQubitCode) {
  DescendantCode g;
  g.g1 = BitMatrix::from_strings({"1"});
  g.g0 = BitMatrix(0, 1);
  g.parity = Parity::kOdd;
  for (const auto variant : {ProtocolVariant::kStandard, ProtocolVariant::kDelayed}) {
    ProtocolOptions opts;
    opts.variant = variant;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto t = simulate_protocol(g, opts, seed);
      EXPECT_TRUE(t.postselect_pass);
      EXPECT_NEAR(t.output_fidelity, 1.0, 1e-12);
      EXPECT_EQ(t.reduced.w.rows(), t.correction_set.size() &
                                        (variant == ProtocolVariant::kDelayed));
    }
  }
}

TEST(Protocol, DelayedMatchesStandardPhase) {
  const auto code = fifteen_one_code();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> outcomes(15);
    for (auto& o : outcomes) o = (rng() & 1) ? 1 : -1;
    const auto a = protocol_phase(code, ProtocolVariant::kStandard, outcomes);
    const auto b = protocol_phase(code, ProtocolVariant::kDelayed, outcomes);
    ASSERT_EQ(a, b);
    for (std::uint32_t z = 0; z < a.size(); ++z) {
      ASSERT_EQ(a[z], static_cast<int>(z & 1));
    }
  }
}

TEST(Protocol, CorpusCodesWithinBudget) {
  for (const auto& code : corpus_codes()) {
    if (code.k() + code.g0_rows() > kMaxSimulatedQubits) continue;
    ProtocolOptions opts;
    const auto s = simulate_shots(code, opts, 20, 2);
    EXPECT_DOUBLE_EQ(s.pass_rate, 1.0) << code.n();
    EXPECT_NEAR(s.min_fidelity_on_pass, 1.0, 1e-9);
    EXPECT_LE(s.max_s_injections, code.k() + code.g0_rows() + 1);
  }
}

TEST(Protocol, Errors) {
  DescendantCode none;
  none.g1 = BitMatrix(0, 4);
  none.g0 = BitMatrix::from_strings({"1111"});
  EXPECT_THROW(simulate_protocol(none, {}, 0), std::invalid_argument);
  DescendantCode big;
  big.g1 = BitMatrix::identity(13);
  big.g0 = BitMatrix(0, 13);
  EXPECT_THROW(simulate_protocol(big, {}, 0), BudgetExceeded);
  EXPECT_THROW(parse_variant("fast"), std::invalid_argument);
  EXPECT_EQ(parse_variant(variant_name(ProtocolVariant::kStandard)),
            ProtocolVariant::kStandard);
}

TEST(Protocol, Deterministic) {
  const auto code = fifteen_one_code();
  ProtocolOptions opts;
  opts.noise = 0.1;
  const auto a = simulate_protocol(code, opts, 42);
  const auto b = simulate_protocol(code, opts, 42);
  EXPECT_EQ(a.outcomes, b.outcomes);
  EXPECT_EQ(a.output_fidelity, b.output_fidelity);
}

TEST(Mod8, Identity) {
  EXPECT_TRUE(mod8_identity_check());
  EXPECT_EQ((2 * 27 + 9 - 6) % 8, 1);
}

}  // namespace
}  // namespace triortho
