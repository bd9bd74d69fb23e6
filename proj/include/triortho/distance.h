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

#ifndef TRIORTHO_DISTANCE_H_
#define TRIORTHO_DISTANCE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "triortho/space.h"

namespace triortho {

inline constexpr int kDefaultDistanceCap = 5;

struct DistanceResult {
  std::optional<int> value;  // set iff exact
  int cap = kDefaultDistanceCap;
  bool exact = false;
};

// Minimum weight of z with z.g0 = 0 for every G0 row and z.g1 = 1 for some
// G1 row, searched up to `cap`. Throws std::invalid_argument for k = 0 or
// cap < 1.
DistanceResult z_distance(const DescendantCode& code,
                          int cap = kDefaultDistanceCap);

struct DmaxResult {
  DistanceResult distance;
  DescendantOrigin witness;  // first puncture set attaining the maximum
  std::uint64_t evaluated = 0;  // leaves whose distance was computed
};

// Maximum Z distance over even descendants with k logical qubits. Puncture
// sets are visited in colex order. Throws std::invalid_argument if s is not
// unital, k = 0, 2k >= c or no puncture set has full rank.
DmaxResult d_max_even(const TriorthogonalSpace& s, std::size_t k,
                      int cap = kDefaultDistanceCap);

// As d_max_even over pairs (P, j) with |P| = k + 1.
DmaxResult d_max_odd(const TriorthogonalSpace& s, std::size_t k,
                     int cap = kDefaultDistanceCap);

DmaxResult d_max(const TriorthogonalSpace& s, Parity parity, std::size_t k,
                 int cap = kDefaultDistanceCap);

// Z distance of the descendant given by origin, computed from the columns of
// the parent without building the code.
DistanceResult descendant_distance(const TriorthogonalSpace& s,
                                   const DescendantOrigin& origin,
                                   int cap = kDefaultDistanceCap);

}  // namespace triortho

#endif  // TRIORTHO_DISTANCE_H_
