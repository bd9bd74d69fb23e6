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

#include "triortho/classify.h"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "triortho/equivalence.h"
#include "triortho/errors.h"
#include "triortho/space.h"

namespace triortho {

namespace {

using u64 = std::uint64_t;

constexpr std::array<u64, 6> kLowHalf = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};

// out[v] = t[v ^ e_i] on six variables.
u64 translate64(u64 t, int i) {
  const int s = 1 << i;
  return ((t & kLowHalf[i]) << s) | ((t >> s) & kLowHalf[i]);
}

// out[v] = t[v ^ (v_j ? e_i : 0)].
u64 transvect64(u64 t, int i, int j) {
  const u64 high_j = ~kLowHalf[j];
  return (t & ~high_j) | (translate64(t, i) & high_j);
}

// Applies an affine map of F2^6 to a truth table: out[v] = t[a(v)].
class TruthPermuter {
 public:
  explicit TruthPermuter(const AffineMap& a) {
    const AffineMap inv = a.inverse();
    for (int byte = 0; byte < 8; ++byte) {
      for (int value = 0; value < 256; ++value) {
        u64 out = 0;
        for (int k = 0; k < 8; ++k) {
          if ((value >> k) & 1) out |= u64{1} << inv(8 * byte + k);
        }
        table_[byte][value] = out;
      }
    }
  }

  u64 operator()(u64 t) const {
    u64 out = 0;
    for (int byte = 0; byte < 8; ++byte) {
      out |= table_[byte][(t >> (8 * byte)) & 0xFF];
    }
    return out;
  }

 private:
  std::array<std::array<u64, 256>, 8> table_;
};

u64 truth64(const RMPolynomial& p) { return p.truth().word0(); }

RMPolynomial poly64(u64 t) {
  return RMPolynomial::from_truth(6, BitVector::from_word(t, 64));
}

// AGL(6) orbit of a truth table.
std::vector<u64> affine_orbit(u64 start) {
  std::unordered_set<u64> seen{start};
  std::vector<u64> out{start};
  for (std::size_t head = 0; head < out.size(); ++head) {
    const u64 t = out[head];
    for (int i = 0; i < 6; ++i) {
      const u64 moved = translate64(t, i);
      if (seen.insert(moved).second) out.push_back(moved);
      for (int j = 0; j < 6; ++j) {
        if (i == j) continue;
        const u64 v = transvect64(t, i, j);
        if (seen.insert(v).second) out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;  // root is the smallest index
  }

 private:
  std::vector<std::size_t> parent_;
};

// One member per orbit of the affine maps fixing h on the AGL(6) orbit of g,
// each the smallest truth table of its orbit. Orbit sizes are certified
// against the stabilizer orders.
std::vector<RMPolynomial> stabilizer_orbit_reps(const RMPolynomial& h,
                                                const RMPolynomial& g) {
  const std::vector<u64> members = affine_orbit(truth64(g));
  const std::vector<RMPolynomial> fixed = {h};
  const std::uint64_t stab_order = count_joint_automorphisms(fixed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<TruthPermuter> gens;
    for (const auto& a : sample_joint_automorphisms(fixed, 8 + 8 * attempt,
                                                    1000 + attempt)) {
      gens.emplace_back(a);
    }
    UnionFind uf(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (const auto& gen : gens) {
        const u64 image = gen(members[i]);
        const auto it = std::lower_bound(members.begin(), members.end(), image);
        uf.unite(i, static_cast<std::size_t>(it - members.begin()));
      }
    }
    std::unordered_map<std::size_t, std::uint64_t> sizes;
    for (std::size_t i = 0; i < members.size(); ++i) ++sizes[uf.find(i)];
    std::vector<std::size_t> roots;
    for (const auto& [root, size] : sizes) roots.push_back(root);
    std::sort(roots.begin(), roots.end());
    bool certified = true;
    std::vector<RMPolynomial> reps;
    for (auto root : roots) {
      const RMPolynomial rep = poly64(members[root]);
      const std::vector<RMPolynomial> both = {h, rep};
      if (sizes[root] * count_joint_automorphisms(both) != stab_order) {
        certified = false;
        break;
      }
      reps.push_back(rep);
    }
    if (certified) return reps;
  }
  throw std::logic_error("stabilizer generators did not certify");
}

// Monomials of degree <= 2 on six variables, by increasing mask.
const std::vector<std::uint32_t>& quadratic_monomials() {
  static const std::vector<std::uint32_t> monos = [] {
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
      if (std::popcount(mask) <= 2) out.push_back(mask);
    }
    return out;
  }();
  return monos;
}

// Linear action of an affine map on the 22 coefficients of u in RM(2,6).
class QuadraticAction {
 public:
  explicit QuadraticAction(const AffineMap& a) {
    const auto& monos = quadratic_monomials();
    std::array<std::uint32_t, 64> index{};
    for (std::size_t i = 0; i < monos.size(); ++i) {
      index[monos[i]] = static_cast<std::uint32_t>(i);
    }
    std::array<std::uint32_t, 22> image{};
    for (std::size_t i = 0; i < monos.size(); ++i) {
      const RMPolynomial moved =
          apply_affine(
          RMPolynomial::from_monomials(6, std::vector<std::uint32_t>{monos[i]}),
          a);
      for (auto mono : moved.monomials()) image[i] |= 1u << index[mono];
    }
    for (int byte = 0; byte < 3; ++byte) {
      for (int value = 0; value < 256; ++value) {
        std::uint32_t out = 0;
        for (int k = 0; k < 8 && 8 * byte + k < 22; ++k) {
          if ((value >> k) & 1) out ^= image[8 * byte + k];
        }
        table_[byte][value] = out;
      }
    }
  }

  std::uint32_t operator()(std::uint32_t u) const {
    return table_[0][u & 0xFF] ^ table_[1][(u >> 8) & 0xFF] ^
           table_[2][(u >> 16) & 0xFF];
  }

 private:
  std::array<std::array<std::uint32_t, 256>, 3> table_;
};

u64 quadratic_truth(std::uint32_t u) {
  const auto& monos = quadratic_monomials();
  std::vector<std::uint32_t> chosen;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    if ((u >> i) & 1u) chosen.push_back(monos[i]);
  }
  return truth64(RMPolynomial::from_monomials(6, chosen));
}

// p = x7 g + x8 h + x7 x8 u on eight variables.
RMPolynomial stack_eight(u64 g, u64 h, u64 u) {
  BitVector truth(256);
  const std::array<u64, 4> blocks = {0, g, h, g ^ h ^ u};
  for (int b = 0; b < 4; ++b) truth.mutable_words()[b] = blocks[b];
  return RMPolynomial::from_truth(8, std::move(truth));
}

// Sixteen-point truth tables for the low-weight search on x3..x6.
struct Small {
  std::vector<std::uint16_t> quad_truth;   // 2^11
  std::vector<std::uint16_t> aff_truth;    // 2^5
  std::vector<std::int32_t> quad_index;    // 2^16, -1 if not quadratic
  std::vector<std::int32_t> aff_index;     // 2^16, -1 if not affine
};

Small make_small() {
  Small s;
  s.quad_index.assign(1 << 16, -1);
  s.aff_index.assign(1 << 16, -1);
  std::vector<std::uint32_t> quad, aff;
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    if (std::popcount(mask) <= 2) quad.push_back(mask);
    if (std::popcount(mask) <= 1) aff.push_back(mask);
  }
  const auto build = [](const std::vector<std::uint32_t>& monos,
                        std::vector<std::uint16_t>& truth,
                        std::vector<std::int32_t>& index) {
    truth.resize(std::size_t{1} << monos.size());
    for (std::uint32_t c = 0; c < truth.size(); ++c) {
      std::uint16_t t = 0;
      for (std::uint32_t y = 0; y < 16; ++y) {
        bool v = false;
        for (std::size_t i = 0; i < monos.size(); ++i) {
          if (((c >> i) & 1u) && (monos[i] & y) == monos[i]) v = !v;
        }
        if (v) t |= static_cast<std::uint16_t>(1u << y);
      }
      truth[c] = t;
      index[t] = static_cast<std::int32_t>(c);
    }
  };
  build(quad, s.quad_truth, s.quad_index);
  build(aff, s.aff_truth, s.aff_index);
  return s;
}

using Perm16 = std::array<std::uint8_t, 16>;

std::uint16_t permute16(std::uint16_t t, const Perm16& p) {
  std::uint16_t out = 0;
  for (int y = 0; y < 16; ++y) {
    if ((t >> p[y]) & 1u) out |= static_cast<std::uint16_t>(1u << y);
  }
  return out;
}

// Variable relabelling with the smallest printed form.
RMPolynomial relabel_variables(const RMPolynomial& p) {
  const int m = p.num_vars();
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  const auto monos = p.monomials();
  RMPolynomial best = p;
  std::string best_text = p.to_string();
  do {
    std::vector<std::uint32_t> moved;
    for (auto mono : monos) {
      std::uint32_t out = 0;
      for (int i = 0; i < m; ++i) {
        if ((mono >> i) & 1u) out |= 1u << perm[i];
      }
      moved.push_back(out);
    }
    RMPolynomial candidate = RMPolynomial::from_monomials(m, moved);
    std::string text = candidate.to_string();
    if (text < best_text) {
      best = std::move(candidate);
      best_text = std::move(text);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool same_num_vars_and_equivalent(const RMPolynomial& a, const RMPolynomial& b) {
  return a.num_vars() == b.num_vars() && affine_equivalent(a, b);
}

void sort_classes(std::vector<EquivalenceClass>& classes) {
  std::sort(classes.begin(), classes.end(),
            [](const EquivalenceClass& a, const EquivalenceClass& b) {
              const auto& p = a.representative;
              const auto& q = b.representative;
              if (a.weight != b.weight) return a.weight < b.weight;
              if (p.num_vars() != q.num_vars()) {
                return p.num_vars() < q.num_vars();
              }
              if (p.monomial_count() != q.monomial_count()) {
                return p.monomial_count() < q.monomial_count();
              }
              return p.to_string() < q.to_string();
            });
}

}  // namespace

std::vector<RMPolynomial> kasami_tokura_reps(int s, int m) {
  if (m < 1 || m > kMaxVars || s < 0 || s > m) {
    throw std::invalid_argument("parameters out of range: s=" +
                                std::to_string(s) + " m=" + std::to_string(m));
  }
  if (s == 0) return {RMPolynomial::constant(m)};
  if (s == 1) return {RMPolynomial::variable(m, 1)};
  const auto bits = [](int lo, int hi) {
    std::uint32_t mask = 0;
    for (int i = lo; i < hi; ++i) mask |= 1u << i;
    return mask;
  };
  std::vector<RMPolynomial> out;
  for (int q = 3; q <= s && s + q <= m; ++q) {
    const std::uint32_t prefix = bits(0, s - q);
    const std::vector<std::uint32_t> monos = {prefix | bits(s - q, s),
                                              prefix | bits(s, s + q)};
    out.push_back(RMPolynomial::from_monomials(m, monos));
  }
  for (int q = 1; 2 * q <= m - s + 2; ++q) {
    const std::uint32_t prefix = bits(0, s - 2);
    std::vector<std::uint32_t> monos;
    for (int t = 0; t < q; ++t) {
      monos.push_back(prefix | bits(s - 2 + 2 * t, s + 2 * t));
    }
    out.push_back(RMPolynomial::from_monomials(m, monos));
  }
  return out;
}

std::size_t add_to_classes(std::vector<EquivalenceClass>& classes,
                           const RMPolynomial& p, std::uint64_t members) {
  const AffineFingerprint fp = affine_fingerprint(p, false);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto& c = classes[i];
    if (!c.fingerprint.same_invariants(fp)) continue;
    if (same_num_vars_and_equivalent(c.representative, p)) {
      c.member_count_seen += members;
      return i;
    }
  }
  EquivalenceClass c;
  c.representative = relabel_variables(minimize_monomials(p));
  c.weight = p.weight();
  c.fingerprint = fp;
  c.fingerprint.min_monomials = c.representative.monomial_count();
  c.member_count_seen = members;
  classes.push_back(std::move(c));
  return classes.size() - 1;
}

std::vector<EquivalenceClass> classify_rm36_low_weight(std::size_t max_weight) {
  const Small small = make_small();
  // Generators of a group of affine maps of F2^6 preserving the form.
  std::vector<Perm16> perms;
  for (int i = 0; i < 4; ++i) {
    Perm16 p;
    for (int y = 0; y < 16; ++y) p[y] = static_cast<std::uint8_t>(y ^ (1 << i));
    perms.push_back(p);
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      Perm16 q;
      for (int y = 0; y < 16; ++y) {
        q[y] = static_cast<std::uint8_t>(((y >> j) & 1) ? y ^ (1 << i) : y);
      }
      perms.push_back(q);
    }
  }
  const auto weight16 = [](std::uint16_t t) { return std::popcount(t); };
  const auto encode = [&](std::uint16_t g, std::uint16_t h, std::uint16_t u) {
    return static_cast<std::uint32_t>(small.quad_index[g]) |
           (static_cast<std::uint32_t>(small.quad_index[h]) << 11) |
           (static_cast<std::uint32_t>(small.aff_index[u]) << 22);
  };
  std::vector<u64> visited((std::size_t{1} << 27) / 64, 0);
  const auto mark = [&](std::uint32_t idx) {
    u64& w = visited[idx >> 6];
    const u64 bit = u64{1} << (idx & 63);
    if (w & bit) return false;
    w |= bit;
    return true;
  };
  std::vector<EquivalenceClass> classes;
  std::vector<std::uint32_t> queue;
  for (std::uint32_t u = 0; u < 32; ++u) {
    const std::uint16_t tu = small.aff_truth[u];
    for (std::uint32_t h = 0; h < 2048; ++h) {
      const std::uint16_t th = small.quad_truth[h];
      const int wh = weight16(th);
      for (std::uint32_t g = 0; g < 2048; ++g) {
        const std::uint16_t tg = small.quad_truth[g];
        const int w = weight16(tg) + wh + weight16(tg ^ th ^ tu);
        if (w == 0 || static_cast<std::size_t>(w) > max_weight) continue;
        const std::uint32_t start = g | (h << 11) | (u << 22);
        if (!mark(start)) continue;
        queue.assign(1, start);
        for (std::size_t head = 0; head < queue.size(); ++head) {
          const std::uint32_t idx = queue[head];
          const std::uint16_t a = small.quad_truth[idx & 2047];
          const std::uint16_t b = small.quad_truth[(idx >> 11) & 2047];
          const std::uint16_t c = small.aff_truth[idx >> 22];
          const auto visit = [&](std::uint16_t x, std::uint16_t y,
                                 std::uint16_t z) {
            const std::uint32_t next = encode(x, y, z);
            if (mark(next)) queue.push_back(next);
          };
          visit(b, a, c);
          visit(a, a ^ b ^ c, c);
          for (const auto& p : perms) {
            visit(permute16(a, p), permute16(b, p), permute16(c, p));
          }
          for (int i = 0; i < 4; ++i) {
            const auto& shift = perms[4 * i];
            const std::uint16_t as = permute16(a, shift);
            const std::uint16_t bs = permute16(b, shift);
            const std::uint16_t cs = permute16(c, shift);
            visit(as, b, static_cast<std::uint16_t>(bs ^ cs ^ b));
            visit(a, bs, static_cast<std::uint16_t>(as ^ cs ^ a));
          }
        }
        u64 truth = 0;
        for (int v = 0; v < 64; ++v) {
          const int x1 = v & 1, x2 = (v >> 1) & 1, y = v >> 2;
          const std::uint16_t t = x1 && x2 ? tg ^ th ^ tu : x1 ? tg : x2 ? th : 0;
          if ((t >> y) & 1u) truth |= u64{1} << v;
        }
        add_to_classes(classes, poly64(truth), queue.size());
      }
    }
  }
  sort_classes(classes);
  return classes;
}

const std::vector<RMPolynomial>& rm36_table_reps() {
  static const std::vector<RMPolynomial> reps = [] {
    const char* texts[] = {
        "x1*x2*x3",
        "x1*x2*x3 + x1*x4*x5",
        "x1*x2*x3 + x4*x5*x6",
        "x1*x2",
        "x1*x2 + x1*x3*x4",
        "x1*x2 + x1*x3*x4 + x1*x5*x6",
        "x1*x2*x3 + x2*x3 + x1*x4*x5",
        "x2*x3*x4 + x1*x3*x5 + x1*x2*x6",
        "x1*x2 + x2*x3*x5 + x1*x4*x6",
        "x1*x2*x3 + x2*x3*x4 + x1*x2*x5 + x1*x3*x6 + x4*x5*x6",
    };
    std::vector<RMPolynomial> out;
    for (const char* t : texts) out.push_back(RMPolynomial::parse(t, 6));
    return out;
  }();
  return reps;
}

std::vector<BasePair> enumerate_base_pairs(int case_id) {
  const auto& reps = rm36_table_reps();
  const RMPolynomial zero(6);
  std::vector<BasePair> out;
  const auto with_zero = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) out.push_back({zero, reps[i], case_id});
  };
  switch (case_id) {
    case 1:
      out.push_back({zero, zero, 1});
      break;
    case 2:
      with_zero(0, 1);
      break;
    case 3:
      with_zero(1, 2);
      break;
    case 4:
      with_zero(2, 3);
      break;
    case 5:
      with_zero(3, 8);
      break;
    case 6:
      with_zero(8, 10);
      break;
    case 7: {
      // Linear 3-spaces meeting span(e4, e5, e6) in dimension d, translated
      // along span(e1, e2, e3), then shifted so the fixed one is x1 x2 x3.
      const std::array<std::array<std::uint32_t, 3>, 4> bases = {{
          {1u << 0, 1u << 1, 1u << 2},
          {1u << 3, 1u << 0, 1u << 1},
          {1u << 3, 1u << 4, 1u << 0},
          {1u << 3, 1u << 4, 1u << 5},
      }};
      for (const auto& basis : bases) {
        for (std::uint32_t t = 0; t < 8; ++t) {
          BitVector truth(64);
          for (std::uint32_t c = 0; c < 8; ++c) {
            std::uint32_t x = t ^ 7u;
            for (int i = 0; i < 3; ++i) {
              if ((c >> i) & 1u) x ^= basis[i];
            }
            truth.set(x);
          }
          out.push_back({reps[0], RMPolynomial::from_truth(6, truth), 7});
        }
      }
      break;
    }
    case 8:
      for (const auto& g : stabilizer_orbit_reps(reps[1], reps[0])) {
        out.push_back({g, reps[1], 8});
      }
      break;
    case 9:
      for (const auto& g : stabilizer_orbit_reps(reps[2], reps[0])) {
        out.push_back({g, reps[2], 9});
      }
      break;
    case 10:
      for (const auto& g : stabilizer_orbit_reps(reps[1], reps[1])) {
        out.push_back({g, reps[1], 10});
      }
      break;
    default:
      throw std::invalid_argument("base-pair case must be in 1..10");
  }
  return out;
}

SweepResult u_sweep(const BasePair& pair, const std::set<std::size_t>& targets,
                    const SweepOptions& opts) {
  if (pair.g.num_vars() != 6 || pair.h.num_vars() != 6) {
    throw std::invalid_argument("base polynomials must have six variables");
  }
  if (pair.g.degree() > 3 || pair.h.degree() > 3) {
    throw std::invalid_argument("base polynomials must have degree <= 3");
  }
  const u64 tg = truth64(pair.g);
  const u64 th = truth64(pair.h);
  const std::size_t base_weight = pair.g.weight() + pair.h.weight();
  std::array<u64, 22> mono_truth;
  for (int i = 0; i < 22; ++i) mono_truth[i] = quadratic_truth(1u << i);

  SweepResult result;
  std::vector<std::uint32_t> matches;
  const std::uint64_t total = std::uint64_t{1} << 22;
  const std::uint64_t limit =
      opts.budget == 0 ? total : std::min<std::uint64_t>(opts.budget, total);
  u64 tu = 0;
  std::uint32_t u = 0;
  for (std::uint64_t step = 0; step < limit; ++step) {
    if (step > 0) {
      const int bit = std::countr_zero(step);
      u ^= 1u << bit;
      tu ^= mono_truth[bit];
    }
    const std::uint32_t visit_u = opts.reverse_order ? u ^ ((1u << 22) - 1) : u;
    const u64 visit_t =
        opts.reverse_order ? tu ^ quadratic_truth((1u << 22) - 1) : tu;
    const std::size_t w = base_weight + std::popcount(tg ^ th ^ visit_t);
    if (targets.count(w)) matches.push_back(visit_u);
  }
  result.visited = limit;
  result.exhaustive = limit == total;
  result.matches = matches.size();
  std::sort(matches.begin(), matches.end());

  const std::vector<RMPolynomial> fixed = {pair.g, pair.h};
  std::vector<QuadraticAction> gens;
  for (const auto& a : sample_joint_automorphisms(fixed, 12, opts.seed)) {
    gens.emplace_back(a);
  }
  UnionFind uf(matches.size());
  for (std::size_t i = 0; i < matches.size(); ++i) {
    for (const auto& gen : gens) {
      const std::uint32_t image = gen(matches[i]);
      const auto it = std::lower_bound(matches.begin(), matches.end(), image);
      if (it != matches.end() && *it == image) {
        uf.unite(i, static_cast<std::size_t>(it - matches.begin()));
      }
    }
  }
  std::vector<EquivalenceClass> classes;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (uf.find(i) != i) continue;
    add_to_classes(classes, stack_eight(tg, th, quadratic_truth(matches[i])));
  }
  sort_classes(classes);
  for (auto& c : classes) result.polynomials.push_back(c.representative);
  return result;
}

RMPolynomial strip_linear_factors(const RMPolynomial& p) {
  RMPolynomial cur = p;
  while (cur.num_vars() > 0) {
    const auto factor = linear_factor(cur);
    if (!factor) break;
    const int m = cur.num_vars();
    std::uint32_t a = 0;
    bool c = false;
    for (auto mono : factor->monomials()) {
      if (mono == 0) {
        c = true;
      } else {
        a |= mono;
      }
    }
    const int i = std::countr_zero(a);
    const std::uint32_t low = (1u << i) - 1;
    BitVector truth(std::size_t{1} << (m - 1));
    for (std::uint32_t y = 0; y < (1u << (m - 1)); ++y) {
      std::uint32_t x = (y & low) | ((y & ~low) << 1);
      const bool xi = !c ^ (std::popcount(x & a) & 1);
      if (xi) x |= 1u << i;
      if (cur(x)) truth.set(y);
    }
    cur = RMPolynomial::from_truth(m - 1, std::move(truth));
  }
  return cur;
}

namespace {

struct SweepPosition {
  int case_id = 1;
  std::size_t pair = 0;
};

struct Checkpoint {
  SweepPosition position;
  std::vector<std::pair<RMPolynomial, std::uint64_t>> classes;
};

std::optional<Checkpoint> load_checkpoint(const std::string& path,
                                          std::size_t max_c) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("checkpoint " + path + ": " + e.what(), 0);
  }
  if (j.value("max_c", std::size_t{0}) != max_c) {
    throw std::invalid_argument("checkpoint " + path +
                                " was written for a different max_c");
  }
  Checkpoint c;
  c.position = {j.at("case").get<int>(), j.at("pair").get<std::size_t>()};
  for (const auto& e : j.at("classes")) {
    c.classes.emplace_back(
        RMPolynomial::parse(e.at("polynomial").get<std::string>(),
                            e.at("m").get<int>()),
        e.at("members").get<std::uint64_t>());
  }
  return c;
}

void save_checkpoint(const std::string& path, std::size_t max_c,
                     const SweepPosition& pos,
                     const std::vector<EquivalenceClass>& classes) {
  nlohmann::json j;
  j["max_c"] = max_c;
  j["case"] = pos.case_id;
  j["pair"] = pos.pair;
  j["classes"] = nlohmann::json::array();
  for (const auto& c : classes) {
    j["classes"].push_back({{"polynomial", c.representative.to_string()},
                            {"m", c.representative.num_vars()},
                            {"members", c.member_count_seen}});
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(1) << "\n";
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::vector<EquivalenceClass> classify_unital_spaces(
    const ClassifyOptions& opts) {
  std::vector<EquivalenceClass> classes;
  const auto note = [&](const std::string& msg) {
    if (opts.progress) opts.progress(msg);
  };
  const auto accept = [&](const RMPolynomial& p, std::uint64_t members) {
    const RMPolynomial f = strip_linear_factors(p);
    if (f.is_zero() || f.weight() > opts.max_c) return;
    indicator_to_generator(f);
    add_to_classes(classes, f, members);
  };
  for (int m = 4; m <= kMaxVars; ++m) {
    for (const auto& f : kasami_tokura_reps(m - 4, m)) {
      if (f.weight() <= opts.max_c && !linear_factor(f)) accept(f, 1);
    }
  }
  note("closed forms: " + std::to_string(classes.size()) + " classes");
  if (opts.max_c >= 32) {
    accept(RMPolynomial::constant(5), 1);
    std::set<std::size_t> targets;
    for (std::size_t w = 32; w <= opts.max_c && w < 40; w += 2) targets.insert(w);
    const int last_case = opts.heavy ? 10 : 9;
    SweepPosition pos;
    if (!opts.checkpoint.empty()) {
      if (auto saved = load_checkpoint(opts.checkpoint, opts.max_c)) {
        classes.clear();
        for (const auto& [p, members] : saved->classes) {
          add_to_classes(classes, p, members);
        }
        pos = saved->position;
        note("resumed at case " + std::to_string(pos.case_id) + ", pair " +
             std::to_string(pos.pair));
      }
    }
    const std::size_t workers = std::max(1, opts.workers);
    for (int case_id = pos.case_id; case_id <= last_case; ++case_id) {
      const auto pairs = enumerate_base_pairs(case_id);
      std::size_t next = case_id == pos.case_id ? pos.pair : 0;
      const std::size_t batch = std::max<std::size_t>(64, 4 * workers);
      while (next < pairs.size()) {
        const std::size_t end = std::min(pairs.size(), next + batch);
        std::vector<std::vector<RMPolynomial>> found(end - next);
        const auto work = [&](std::size_t tid) {
          for (std::size_t i = next + tid; i < end; i += workers) {
            found[i - next] = u_sweep(pairs[i], targets).polynomials;
          }
        };
        if (workers == 1) {
          work(0);
        } else {
          std::vector<std::thread> threads;
          for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(work, t);
          for (auto& t : threads) t.join();
        }
        for (const auto& polys : found) {
          for (const auto& p : polys) accept(p, 1);
        }
        next = end;
        if (!opts.checkpoint.empty()) {
          SweepPosition at{case_id, next};
          if (next == pairs.size()) at = {case_id + 1, 0};
          save_checkpoint(opts.checkpoint, opts.max_c, at, classes);
        }
      }
      note("case " + std::to_string(case_id) + ": " +
           std::to_string(pairs.size()) + " pairs, " +
           std::to_string(classes.size()) + " classes");
    }
  }
  for (const auto& p : opts.extra_reps) accept(p, 1);
  sort_classes(classes);
  return classes;
}

}  // namespace triortho
