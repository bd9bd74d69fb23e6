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

#ifndef TRIORTHO_LEVEL3_H_
#define TRIORTHO_LEVEL3_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "triortho/space.h"

namespace triortho {

struct DivisibilityVerdict {
  bool divisible = false;
  std::optional<std::vector<int>> witness;      // t mod 8, original order
  std::optional<std::vector<int>> obstruction;  // row of UN mod 4
};

// Row-echelon algorithm over the pairwise products of the basis rows.
// Throws std::invalid_argument if s is not triorthogonal.
DivisibilityVerdict is_level3_divisible(const TriorthogonalSpace& s);

// Exhaustive search over t = 1 + 2v on the non-pivot coordinates. Throws
// BudgetExceeded when c - r exceeds max_free. Never reports an obstruction.
DivisibilityVerdict brute_force_divisible(const TriorthogonalSpace& s,
                                          int max_free = 24);

// Conditions on the basis rows h_a of s: t odd, h_a.t = 0 mod 8,
// (h_a & h_b).t = 0 mod 4, |h_a & h_b & h_c| even.
bool check_conditions_0_to_3(const TriorthogonalSpace& s,
                             std::span<const int> t);

}  // namespace triortho

#endif  // TRIORTHO_LEVEL3_H_
