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

#ifndef TRIORTHO_EQUIVALENCE_H_
#define TRIORTHO_EQUIVALENCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "triortho/polynomial.h"

namespace triortho {

// Searches for an affine map a with q_i = apply_affine(p_i, a) for every i
// (so a carries the support of each q_i onto the support of p_i). Exact
// backtracking over images of an affine basis of the joint support, pruned by
// per-point counts of 2-flats. `node_budget` = 0 means unlimited; otherwise
// BudgetExceeded is thrown when the search tree grows past it.
std::optional<AffineMap> find_joint_equivalence(
    std::span<const RMPolynomial> p, std::span<const RMPolynomial> q,
    std::uint64_t node_budget = 0);

std::optional<AffineMap> find_affine_equivalence(const RMPolynomial& p,
                                                 const RMPolynomial& q,
                                                 std::uint64_t node_budget = 0);

inline bool affine_equivalent(const RMPolynomial& p, const RMPolynomial& q) {
  return find_affine_equivalence(p, q).has_value();
}

// Number of affine maps a with apply_affine(p_i, a) = p_i for all i. Throws
// std::overflow_error when the count does not fit in 64 bits.
std::uint64_t count_joint_automorphisms(std::span<const RMPolynomial> p);

// Order of AGL(m, 2).
std::uint64_t affine_group_order(int m);

// Random elements of the joint automorphism group: a random branch of the
// search tree extended by a uniformly random completion off the span.
std::vector<AffineMap> sample_joint_automorphisms(
    std::span<const RMPolynomial> p, int count, std::uint64_t seed);

}  // namespace triortho

#endif  // TRIORTHO_EQUIVALENCE_H_
