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

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace triortho {

namespace {

// Finds the smallest set of columns whose keys sum to zero and whose full
// values sum to something outside {0, trivial}.
class SubsetSearch {
 public:
  SubsetSearch(std::vector<std::uint64_t> key, std::vector<std::uint64_t> full,
               std::uint64_t trivial)
      : key_(std::move(key)), full_(std::move(full)), trivial_(trivial) {
    sorted_.reserve(key_.size());
    for (std::size_t i = 0; i < key_.size(); ++i) {
      sorted_.emplace_back(key_[i], static_cast<std::uint32_t>(i));
    }
    std::sort(sorted_.begin(), sorted_.end());
  }

  // Smallest weight in 1..limit, or limit + 1 if there is none.
  int min_weight(int limit) const {
    for (int w = 1; w <= limit; ++w) {
      if (exists(0, w, 0, 0)) return w;
    }
    return limit + 1;
  }

 private:
  bool nontrivial(std::uint64_t f) const { return f != 0 && f != trivial_; }

  bool exists(std::size_t start, int remaining, std::uint64_t acc_key,
              std::uint64_t acc_full) const {
    const std::size_t n = key_.size();
    if (remaining == 1) {
      auto it = std::lower_bound(
          sorted_.begin(), sorted_.end(),
          std::make_pair(acc_key, static_cast<std::uint32_t>(start)));
      for (; it != sorted_.end() && it->first == acc_key; ++it) {
        if (nontrivial(acc_full ^ full_[it->second])) return true;
      }
      return false;
    }
    for (std::size_t i = start; i + remaining <= n; ++i) {
      if (exists(i + 1, remaining - 1, acc_key ^ key_[i], acc_full ^ full_[i])) {
        return true;
      }
    }
    return false;
  }

  std::vector<std::uint64_t> key_;
  std::vector<std::uint64_t> full_;
  std::uint64_t trivial_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> sorted_;
};

void check_cap(int cap) {
  if (cap < 1) throw std::invalid_argument("distance cap must be at least 1");
}

DistanceResult make_result(int d, int cap) {
  DistanceResult r;
  r.cap = cap;
  r.exact = d <= cap;
  if (r.exact) r.value = d;
  return r;
}

// Span of parent columns kept in echelon form, highest bit as pivot.
class ColumnSpan {
 public:
  std::uint64_t reduce(std::uint64_t x) const {
    for (auto b : basis_) {
      if (x & std::bit_floor(b)) x ^= b;
    }
    return x;
  }

  bool add(std::uint64_t x) {
    x = reduce(x);
    if (x == 0) return false;
    auto pos = std::find_if(basis_.begin(), basis_.end(),
                            [&](std::uint64_t b) { return b < x; });
    basis_.insert(pos, x);
    return true;
  }

  void pop(std::uint64_t reduced) {
    basis_.erase(std::find(basis_.begin(), basis_.end(), reduced));
  }

 private:
  std::vector<std::uint64_t> basis_;  // descending, so pivots descend
};

std::vector<std::uint64_t> column_masks(const TriorthogonalSpace& s) {
  if (s.r() > 64) {
    throw std::invalid_argument("spaces of dimension above 64 are unsupported");
  }
  std::vector<std::uint64_t> cols(s.c(), 0);
  for (std::size_t row = 0; row < s.r(); ++row) {
    for (auto i : s.gen.row(row).support()) cols[i] |= std::uint64_t{1} << row;
  }
  return cols;
}

int punctured_distance(const std::vector<std::uint64_t>& cols,
                       const std::vector<bool>& in_p, const ColumnSpan& span,
                       std::uint64_t trivial, int limit) {
  if (limit == 1) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (!in_p[i] && cols[i] != 0 && cols[i] != trivial &&
          span.reduce(cols[i]) == 0) {
        return 1;
      }
    }
    return 2;
  }
  std::vector<std::uint64_t> key, full;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (in_p[i]) continue;
    key.push_back(span.reduce(cols[i]));
    full.push_back(cols[i]);
  }
  return SubsetSearch(std::move(key), std::move(full), trivial)
      .min_weight(limit);
}

class DmaxSearch {
 public:
  DmaxSearch(const TriorthogonalSpace& s, int cap)
      : cols_(column_masks(s)), in_p_(s.c(), false), cap_(cap) {}

  // Puncture sets of size need, plus j when given.
  void run(std::size_t need, std::optional<std::size_t> j) {
    j_ = j;
    trivial_ = j ? cols_[*j] : 0;
    if (j) {
      span_.add(cols_[*j]);
      in_p_[*j] = true;
    }
    recurse(need, cols_.size());
    if (j) {
      in_p_[*j] = false;
      span_.pop(cols_[*j]);
    }
  }

  bool done() const { return best_ == cap_ + 1; }
  bool found() const { return evaluated_ > 0; }

  DmaxResult result() const {
    DmaxResult r;
    r.distance = make_result(best_, cap_);
    r.witness = witness_;
    r.evaluated = evaluated_;
    return r;
  }

 private:
  void recurse(std::size_t need, std::size_t upper) {
    if (done()) return;
    const bool has_members = !chosen_.empty() || j_.has_value();
    if (need == 0) {
      ++evaluated_;
      if (best_ > 0 &&
          punctured_distance(cols_, in_p_, span_, trivial_, best_) <= best_) {
        return;
      }
      const int d = punctured_distance(cols_, in_p_, span_, trivial_, cap_);
      if (d > best_) {
        best_ = d;
        witness_.punctured = chosen_;
        if (j_) witness_.punctured.push_back(*j_);
        std::sort(witness_.punctured.begin(), witness_.punctured.end());
        witness_.j = j_;
      }
      return;
    }
    if (has_members && best_ > 0 &&
        punctured_distance(cols_, in_p_, span_, trivial_, best_) <= best_) {
      return;
    }
    for (std::size_t e = need - 1; e < upper; ++e) {
      if (in_p_[e]) continue;
      const std::uint64_t reduced = span_.reduce(cols_[e]);
      if (!span_.add(cols_[e])) continue;
      in_p_[e] = true;
      chosen_.push_back(e);
      recurse(need - 1, e);
      chosen_.pop_back();
      in_p_[e] = false;
      span_.pop(reduced);
      if (done()) return;
    }
  }

  std::vector<std::uint64_t> cols_;
  std::vector<bool> in_p_;
  ColumnSpan span_;
  std::vector<std::size_t> chosen_;
  std::optional<std::size_t> j_;
  std::uint64_t trivial_ = 0;
  int cap_;
  int best_ = 0;
  DescendantOrigin witness_;
  std::uint64_t evaluated_ = 0;
};

void check_dmax_args(const TriorthogonalSpace& s, std::size_t k) {
  if (!s.unital) throw std::invalid_argument("space is not unital");
  if (k == 0) throw std::invalid_argument("k must be positive");
}

void no_full_rank(std::size_t size) {
  throw std::invalid_argument("no puncture set of size " +
                              std::to_string(size) + " has full rank");
}

}  // namespace

DistanceResult z_distance(const DescendantCode& code, int cap) {
  check_cap(cap);
  if (code.k() == 0) {
    throw std::invalid_argument("code has no logical operators");
  }
  const std::size_t n = code.n();
  BitMatrix basis = code.g0.empty() ? BitMatrix(0, n) : row_basis(code.g0);
  const std::size_t g0_rank = basis.rows();
  for (const auto& g : code.g1.row_vectors()) {
    if (!in_row_span(basis, g)) basis.append_row(g);
  }
  if (basis.rows() > 64) {
    throw std::invalid_argument("codes of rank above 64 are unsupported");
  }
  std::vector<std::uint64_t> key(n, 0), full(n, 0);
  for (std::size_t row = 0; row < basis.rows(); ++row) {
    for (auto i : basis.row(row).support()) {
      if (row < g0_rank) {
        key[i] |= std::uint64_t{1} << row;
      } else {
        full[i] |= std::uint64_t{1} << (row - g0_rank);
      }
    }
  }
  const int d = SubsetSearch(std::move(key), std::move(full), 0).min_weight(cap);
  return make_result(d, cap);
}

DmaxResult d_max_even(const TriorthogonalSpace& s, std::size_t k, int cap) {
  check_cap(cap);
  check_dmax_args(s, k);
  if (2 * k >= s.c()) throw std::invalid_argument("k must be below c/2");
  if (k > s.r()) no_full_rank(k);
  DmaxSearch search(s, cap);
  search.run(k, std::nullopt);
  if (!search.found()) no_full_rank(k);
  return search.result();
}

DmaxResult d_max_odd(const TriorthogonalSpace& s, std::size_t k, int cap) {
  check_cap(cap);
  check_dmax_args(s, k);
  if (2 * (k + 1) > s.c()) {
    throw std::invalid_argument("k + 1 must be at most c/2");
  }
  if (k + 1 > s.r()) no_full_rank(k + 1);
  DmaxSearch search(s, cap);
  for (std::size_t j = 0; j < s.c() && !search.done(); ++j) {
    search.run(k, j);
  }
  if (!search.found()) no_full_rank(k + 1);
  return search.result();
}

DmaxResult d_max(const TriorthogonalSpace& s, Parity parity, std::size_t k,
                 int cap) {
  return parity == Parity::kEven ? d_max_even(s, k, cap)
                                 : d_max_odd(s, k, cap);
}

DistanceResult descendant_distance(const TriorthogonalSpace& s,
                                   const DescendantOrigin& origin, int cap) {
  check_cap(cap);
  const auto cols = column_masks(s);
  std::vector<bool> in_p(s.c(), false);
  ColumnSpan span;
  for (auto i : origin.punctured) {
    if (i >= s.c()) throw std::out_of_range("puncture coordinate out of range");
    in_p[i] = true;
    if (!span.add(cols[i])) {
      throw std::invalid_argument(
          "restriction to the puncture set is not full rank");
    }
  }
  std::uint64_t trivial = 0;
  if (origin.j) {
    if (!in_p.at(*origin.j)) {
      throw std::invalid_argument("j is not in the puncture set");
    }
    trivial = cols[*origin.j];
    if (origin.punctured.size() < 2) {
      throw std::invalid_argument("code has no logical operators");
    }
  } else if (origin.punctured.empty()) {
    throw std::invalid_argument("code has no logical operators");
  }
  return make_result(punctured_distance(cols, in_p, span, trivial, cap), cap);
}

}  // namespace triortho
