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

#ifndef TRIORTHO_CLASSIFY_H_
#define TRIORTHO_CLASSIFY_H_

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "triortho/polynomial.h"

namespace triortho {

struct EquivalenceClass {
  RMPolynomial representative;
  std::size_t weight = 0;
  AffineFingerprint fingerprint;
  std::uint64_t member_count_seen = 0;
};

struct BasePair {
  RMPolynomial g;
  RMPolynomial h;
  int case_id = 0;
};

// Closed-form minimum-range representatives of RM(s, m):
// x_1..x_{s-q}(x_{s-q+1}..x_s + x_{s+1}..x_{s+q}) for m >= s+q, s >= q >= 3,
// x_1..x_{s-2}(x_{s-1}x_s + ... + x_{s+2q-3}x_{s+2q-2}) for m-s+2 >= 2q >= 2,
// with the constant 1 for s = 0 and x_1 for s = 1. Throws
// std::invalid_argument when s > m or m is out of range.
std::vector<RMPolynomial> kasami_tokura_reps(int s, int m);

// Classes of p = x1 g(x3..x6) + x2 h(x3..x6) + x1 x2 u(x3..x6) with
// deg g, deg h <= 2, deg u <= 1 and 0 < |p| <= max_weight. Sorted by weight,
// then monomial count, then text.
std::vector<EquivalenceClass> classify_rm36_low_weight(std::size_t max_weight);

// Representatives of RM(3,6) classes of weight at most 18.
const std::vector<RMPolynomial>& rm36_table_reps();

// Base pairs on six variables for cases 1..10. Cases 8..10 list one g per
// orbit of the affine maps fixing h. Throws std::invalid_argument otherwise.
std::vector<BasePair> enumerate_base_pairs(int case_id);

struct SweepOptions {
  std::uint64_t budget = 0;  // u values to visit; 0 = all 2^22
  std::uint64_t seed = 0;
  bool reverse_order = false;
};

struct SweepResult {
  std::vector<RMPolynomial> polynomials;  // 8 variables, one per class
  std::uint64_t matches = 0;
  std::uint64_t visited = 0;
  bool exhaustive = true;
};

// Visits p = x7 g + x8 h + x7 x8 u over u in RM(2,6) and keeps the classes
// with |p| in `targets`. Throws std::invalid_argument unless g, h have degree
// at most 3 on six variables.
SweepResult u_sweep(const BasePair& pair, const std::set<std::size_t>& targets,
                    const SweepOptions& opts = {});

// Repeatedly restricts p to the hyperplane of a linear factor.
RMPolynomial strip_linear_factors(const RMPolynomial& p);

struct ClassifyOptions {
  std::size_t max_c = 30;
  bool heavy = false;
  std::vector<RMPolynomial> extra_reps;
  std::function<void(const std::string&)> progress;
  // Threads sweeping base pairs; results merge in pair order.
  int workers = 1;
  // If nonempty, the sweep state is saved to this file after every batch of
  // base pairs and resumed from it when it exists.
  std::string checkpoint;
};

// Indicator polynomials without linear factor of unital triorthogonal spaces
// with c <= max_c, one per affine class, sorted by weight, variable count,
// monomial count and text.
std::vector<EquivalenceClass> classify_unital_spaces(
    const ClassifyOptions& opts);

// Merges p into `classes` unless an equivalent representative is present.
// Returns the index of its class.
std::size_t add_to_classes(std::vector<EquivalenceClass>& classes,
                           const RMPolynomial& p, std::uint64_t members = 1);

}  // namespace triortho

#endif  // TRIORTHO_CLASSIFY_H_
