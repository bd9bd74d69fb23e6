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

#include "triortho/equivalence.h"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "triortho/errors.h"

namespace triortho {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct ColoredSet {
  int m = 0;
  std::vector<std::uint16_t> color;
  std::vector<std::uint32_t> points;
  std::vector<std::uint64_t> sig;  // indexed like points
};

ColoredSet build_colored(std::span<const RMPolynomial> fs,
                         const std::vector<bool>& complement) {
  ColoredSet cs;
  cs.m = fs.front().num_vars();
  const std::size_t n = std::size_t{1} << cs.m;
  cs.color.assign(n, 0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const BitVector& t = fs[i].truth();
    for (std::size_t x = 0; x < n; ++x) {
      if (t.get(x) != complement[i]) cs.color[x] |= 1u << i;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (cs.color[x]) cs.points.push_back(static_cast<std::uint32_t>(x));
  }
  const bool multi = fs.size() > 1;
  const auto& pts = cs.points;
  cs.sig.resize(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const std::uint32_t x = pts[k];
    std::uint64_t count = 0;
    std::uint64_t acc = 0;
    for (std::size_t a = 0; a < pts.size(); ++a) {
      if (a == k) continue;
      const std::uint32_t xy = x ^ pts[a];
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        if (b == k) continue;
        const std::uint32_t w = xy ^ pts[b];
        const std::uint16_t cw = cs.color[w];
        if (!cw) continue;
        ++count;
        if (multi) {
          std::uint16_t c3[3] = {cs.color[pts[a]], cs.color[pts[b]], cw};
          std::sort(c3, c3 + 3);
          acc += mix((std::uint64_t{c3[0]} << 32) | (std::uint64_t{c3[1]} << 16) |
                     c3[2]);
        }
      }
    }
    cs.sig[k] = mix(cs.color[x]) ^ mix(count + 0x1234) ^ acc;
  }
  return cs;
}

std::uint64_t extension_count(int m, int d) {
  std::uint64_t total = 1;
  for (int i = d; i < m; ++i) {
    const std::uint64_t f = (std::uint64_t{1} << m) - (std::uint64_t{1} << i);
    if (__builtin_mul_overflow(total, f, &total)) {
      throw std::overflow_error("group order exceeds 64 bits");
    }
  }
  return total;
}

// Appends vectors from `pool` (or unit vectors) until `dirs` spans F2^m.
void complete_basis(std::vector<std::uint32_t>& dirs, int m,
                    std::mt19937_64* rng) {
  std::vector<std::uint32_t> reduced;  // echelon copy for membership tests
  auto reduce = [&](std::uint32_t v) {
    for (auto b : reduced) v = std::min(v, v ^ b);
    return v;
  };
  auto insert = [&](std::uint32_t v) {
    v = reduce(v);
    if (!v) return false;
    reduced.push_back(v);
    std::sort(reduced.begin(), reduced.end(), std::greater<>());
    return true;
  };
  for (auto d : dirs) insert(d);
  const std::uint32_t n = 1u << m;
  while (static_cast<int>(dirs.size()) < m) {
    if (rng) {
      const std::uint32_t v = static_cast<std::uint32_t>((*rng)() % n);
      if (insert(v)) dirs.push_back(v);
    } else {
      for (int j = 0; j < m; ++j) {
        if (insert(1u << j)) {
          dirs.push_back(1u << j);
          break;
        }
      }
    }
  }
}

class Matcher {
 public:
  Matcher(const ColoredSet& q, const ColoredSet& p, std::uint64_t budget)
      : q_(q), p_(p), budget_(budget) {
    const int m = q.m;
    in_span_.assign(std::size_t{1} << m, 0);
    for (std::size_t k = 0; k < p.points.size(); ++k) {
      buckets_[p.sig[k]].push_back(p.points[k]);
    }
    choose_basis();
  }

  bool compatible() const {
    std::vector<std::uint64_t> a = q_.sig, b = p_.sig;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

  int span_dim() const { return static_cast<int>(basis_.size()) - 1; }

  // Calls `leaf(images)` for every consistent assignment; stops when it
  // returns false.
  void search(const std::function<bool(const std::vector<std::uint32_t>&)>& leaf,
              std::mt19937_64* rng) {
    rng_ = rng;
    images_.clear();
    qspan_.clear();
    pspan_.clear();
    stop_ = false;
    recurse(0, leaf);
  }

  AffineMap build_map(const std::vector<std::uint32_t>& images,
                      std::mt19937_64* rng) const {
    const int m = q_.m;
    std::vector<std::uint32_t> dq, dp;
    for (std::size_t i = 1; i < basis_.size(); ++i) {
      dq.push_back(basis_[i] ^ basis_[0]);
      dp.push_back(images[i] ^ images[0]);
    }
    complete_basis(dq, m, nullptr);
    complete_basis(dp, m, rng);
    const AffineMap aq(dq, 0);
    const AffineMap ap(dp, 0);
    const AffineMap lin = compose(ap, aq.inverse());
    return AffineMap(lin.columns(), lin(basis_[0]) ^ images[0]);
  }

 private:
  std::uint64_t sig_of_q(std::uint32_t x) const {
    auto it = std::lower_bound(q_.points.begin(), q_.points.end(), x);
    return q_.sig[it - q_.points.begin()];
  }

  void choose_basis() {
    std::map<std::uint64_t, std::size_t> freq;
    for (auto s : q_.sig) ++freq[s];
    const int m = q_.m;
    std::vector<char> spanned(std::size_t{1} << m, 0);
    std::vector<std::uint32_t> span_pts;
    while (true) {
      std::size_t best = q_.points.size();
      for (std::size_t k = 0; k < q_.points.size(); ++k) {
        if (spanned[q_.points[k]]) continue;
        if (best == q_.points.size() ||
            freq[q_.sig[k]] < freq[q_.sig[best]]) {
          best = k;
        }
      }
      if (best == q_.points.size()) break;
      const std::uint32_t b = q_.points[best];
      basis_.push_back(b);
      if (span_pts.empty()) {
        span_pts.push_back(b);
      } else {
        const std::uint32_t dir = b ^ basis_[0];
        const std::size_t sz = span_pts.size();
        for (std::size_t k = 0; k < sz; ++k) span_pts.push_back(span_pts[k] ^ dir);
      }
      for (auto s : span_pts) spanned[s] = 1;
    }
  }

  void recurse(std::size_t level,
               const std::function<bool(const std::vector<std::uint32_t>&)>& leaf) {
    if (level == basis_.size()) {
      if (!leaf(images_)) stop_ = true;
      return;
    }
    const std::uint32_t b = basis_[level];
    auto it = buckets_.find(sig_of_q(b));
    if (it == buckets_.end()) return;
    std::vector<std::uint32_t> cands = it->second;
    if (rng_) std::shuffle(cands.begin(), cands.end(), *rng_);
    for (std::uint32_t y : cands) {
      if (stop_) return;
      if (budget_ && ++nodes_ > budget_) {
        throw BudgetExceeded("affine equivalence search exceeded node budget");
      }
      if (level == 0) {
        if (q_.color[b] != p_.color[y]) continue;
        images_.push_back(y);
        qspan_.push_back(b);
        pspan_.push_back(y);
        in_span_[y] = 1;
        recurse(1, leaf);
        in_span_[y] = 0;
        qspan_.clear();
        pspan_.clear();
        images_.pop_back();
        continue;
      }
      if (in_span_[y]) continue;
      const std::uint32_t dq = b ^ basis_[0];
      const std::uint32_t dp = y ^ images_[0];
      const std::size_t sz = qspan_.size();
      bool ok = true;
      for (std::size_t k = 0; k < sz; ++k) {
        if (q_.color[qspan_[k] ^ dq] != p_.color[pspan_[k] ^ dp]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (std::size_t k = 0; k < sz; ++k) {
        qspan_.push_back(qspan_[k] ^ dq);
        pspan_.push_back(pspan_[k] ^ dp);
        in_span_[pspan_.back()] = 1;
      }
      images_.push_back(y);
      recurse(level + 1, leaf);
      images_.pop_back();
      for (std::size_t k = sz; k < 2 * sz; ++k) in_span_[pspan_[k]] = 0;
      qspan_.resize(sz);
      pspan_.resize(sz);
    }
  }

  const ColoredSet& q_;
  const ColoredSet& p_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
  std::vector<std::uint32_t> basis_;
  std::vector<std::uint32_t> images_;
  std::vector<std::uint32_t> qspan_, pspan_;
  std::vector<char> in_span_;
  std::mt19937_64* rng_ = nullptr;
  bool stop_ = false;
};

void check_family(std::span<const RMPolynomial> fs) {
  if (fs.empty()) throw std::invalid_argument("empty polynomial family");
  if (fs.size() > 16) throw std::invalid_argument("at most 16 polynomials");
  for (const auto& f : fs) {
    if (f.num_vars() != fs.front().num_vars()) {
      throw std::invalid_argument("polynomials must share the variable count");
    }
  }
}

std::vector<bool> complement_flags(std::span<const RMPolynomial> fs) {
  std::vector<bool> flags;
  const std::size_t half = std::size_t{1} << (fs.front().num_vars() - 1);
  for (const auto& f : fs) {
    flags.push_back(fs.front().num_vars() > 0 && f.weight() > half);
  }
  return flags;
}

}  // namespace

std::uint64_t affine_group_order(int m) {
  return extension_count(m, 0) << m;
}

std::optional<AffineMap> find_joint_equivalence(
    std::span<const RMPolynomial> p, std::span<const RMPolynomial> q,
    std::uint64_t node_budget) {
  check_family(p);
  check_family(q);
  if (p.size() != q.size() || p.front().num_vars() != q.front().num_vars()) {
    throw std::invalid_argument("families differ in shape");
  }
  const int m = p.front().num_vars();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].weight() != q[i].weight()) return std::nullopt;
  }
  const auto flags = complement_flags(p);
  const ColoredSet cp = build_colored(p, flags);
  const ColoredSet cq = build_colored(q, flags);
  if (cq.points.empty()) return AffineMap::identity(m);
  Matcher matcher(cq, cp, node_budget);
  if (!matcher.compatible()) return std::nullopt;
  std::optional<AffineMap> found;
  matcher.search(
      [&](const std::vector<std::uint32_t>& images) {
        found = matcher.build_map(images, nullptr);
        return false;
      },
      nullptr);
  if (found) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!(apply_affine(p[i], *found) == q[i])) {
        throw std::logic_error("equivalence search produced an invalid map");
      }
    }
  }
  return found;
}

std::optional<AffineMap> find_affine_equivalence(const RMPolynomial& p,
                                                 const RMPolynomial& q,
                                                 std::uint64_t node_budget) {
  return find_joint_equivalence(std::span(&p, 1), std::span(&q, 1),
                                node_budget);
}

std::uint64_t count_joint_automorphisms(std::span<const RMPolynomial> p) {
  check_family(p);
  const int m = p.front().num_vars();
  const auto flags = complement_flags(p);
  const ColoredSet cs = build_colored(p, flags);
  if (cs.points.empty()) return affine_group_order(m);
  Matcher matcher(cs, cs, 0);
  std::uint64_t leaves = 0;
  matcher.search(
      [&](const std::vector<std::uint32_t>&) {
        ++leaves;
        return true;
      },
      nullptr);
  std::uint64_t total = 0;
  if (__builtin_mul_overflow(leaves, extension_count(m, matcher.span_dim()),
                             &total)) {
    throw std::overflow_error("automorphism count exceeds 64 bits");
  }
  return total;
}

std::vector<AffineMap> sample_joint_automorphisms(
    std::span<const RMPolynomial> p, int count, std::uint64_t seed) {
  check_family(p);
  const int m = p.front().num_vars();
  const auto flags = complement_flags(p);
  const ColoredSet cs = build_colored(p, flags);
  std::mt19937_64 rng(seed);
  std::vector<AffineMap> out;
  if (cs.points.empty()) {
    for (int i = 0; i < count; ++i) {
      std::vector<std::uint32_t> cols;
      complete_basis(cols, m, &rng);
      out.emplace_back(cols, static_cast<std::uint32_t>(rng() % (1u << m)));
    }
    return out;
  }
  Matcher matcher(cs, cs, 0);
  for (int i = 0; i < count; ++i) {
    matcher.search(
        [&](const std::vector<std::uint32_t>& images) {
          out.push_back(matcher.build_map(images, &rng));
          return false;
        },
        &rng);
  }
  return out;
}

}  // namespace triortho
