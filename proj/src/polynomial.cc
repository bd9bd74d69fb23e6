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

#include "triortho/polynomial.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

namespace triortho {

namespace {

constexpr std::uint64_t kLowMask[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
    0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL};

void check_vars(int m) {
  if (m < 0 || m > kMaxVars) {
    throw std::invalid_argument("variable count " + std::to_string(m) +
                                " outside [0, " + std::to_string(kMaxVars) +
                                "]");
  }
}

std::size_t table_size(int m) { return std::size_t{1} << m; }

// Positions of a length-2^m table whose index has bit j set.
BitVector bit_set_mask(int m, int j) {
  BitVector mask(table_size(m));
  auto w = mask.mutable_words();
  if (j < 6) {
    const std::uint64_t pat = ~kLowMask[j];
    for (auto& x : w) x = pat;
    if (m < 6) w[0] &= (std::uint64_t{1} << table_size(m)) - 1;
  } else {
    for (std::size_t k = 0; k < w.size(); ++k) {
      if ((k >> (j - 6)) & 1u) w[k] = ~std::uint64_t{0};
    }
  }
  return mask;
}

int rank_of_masks(std::vector<std::uint32_t> vecs) {
  int r = 0;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (!vecs[i]) continue;
    const std::uint32_t low = vecs[i] & (~vecs[i] + 1);
    for (std::size_t k = i + 1; k < vecs.size(); ++k) {
      if (vecs[k] & low) vecs[k] ^= vecs[i];
    }
    ++r;
  }
  return r;
}

}  // namespace

void mobius_transform(std::span<std::uint64_t> words, int m) {
  for (int i = 0; i < std::min(m, 6); ++i) {
    const unsigned s = 1u << i;
    for (auto& w : words) w ^= (w & kLowMask[i]) << s;
  }
  for (int i = 6; i < m; ++i) {
    const std::size_t step = std::size_t{1} << (i - 6);
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (k & step) words[k] ^= words[k ^ step];
    }
  }
}

RMPolynomial::RMPolynomial(int num_vars)
    : m_(num_vars),
      anf_((check_vars(num_vars), table_size(num_vars))),
      truth_(table_size(num_vars)) {}

RMPolynomial RMPolynomial::from_anf(int num_vars, BitVector anf) {
  check_vars(num_vars);
  if (anf.size() != table_size(num_vars)) {
    throw std::invalid_argument("ANF length does not match 2^m");
  }
  RMPolynomial p(num_vars);
  p.truth_ = anf;
  mobius_transform(p.truth_.mutable_words(), num_vars);
  p.anf_ = std::move(anf);
  return p;
}

RMPolynomial RMPolynomial::from_truth(int num_vars, BitVector truth) {
  check_vars(num_vars);
  if (truth.size() != table_size(num_vars)) {
    throw std::invalid_argument("truth table length does not match 2^m");
  }
  RMPolynomial p(num_vars);
  p.anf_ = truth;
  mobius_transform(p.anf_.mutable_words(), num_vars);
  p.truth_ = std::move(truth);
  return p;
}

RMPolynomial RMPolynomial::from_monomials(
    int num_vars, std::span<const std::uint32_t> masks) {
  check_vars(num_vars);
  BitVector anf(table_size(num_vars));
  for (auto mask : masks) {
    if (mask >= table_size(num_vars)) {
      throw std::invalid_argument("monomial uses a variable beyond m");
    }
    anf.flip(mask);
  }
  return from_anf(num_vars, std::move(anf));
}

RMPolynomial RMPolynomial::constant(int num_vars, bool value) {
  RMPolynomial p(num_vars);
  if (value) {
    p.anf_.set(0);
    p.truth_ = BitVector::ones(table_size(num_vars));
  }
  return p;
}

RMPolynomial RMPolynomial::variable(int num_vars, int i) {
  if (i < 1 || i > num_vars) throw std::invalid_argument("variable index");
  const std::uint32_t mask = 1u << (i - 1);
  return from_monomials(num_vars, std::span(&mask, 1));
}

RMPolynomial RMPolynomial::parse(std::string_view text, int num_vars) {
  std::vector<std::uint32_t> monos;
  int max_index = 0;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("polynomial parse error at offset " +
                                std::to_string(pos) + ": " + why);
  };
  skip_ws();
  if (pos == text.size()) fail("empty polynomial");
  while (true) {
    std::uint32_t mask = 0;
    bool zero = false;
    int factors = 0;
    while (true) {
      skip_ws();
      if (pos < text.size() && (text[pos] == 'x' || text[pos] == 'X')) {
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
        if (start == pos) fail("expected variable index after 'x'");
        const int idx = std::stoi(std::string(text.substr(start, pos - start)));
        if (idx < 1 || idx > kMaxVars) fail("variable index out of range");
        max_index = std::max(max_index, idx);
        mask |= 1u << (idx - 1);
      } else if (pos < text.size() && (text[pos] == '1' || text[pos] == '0')) {
        if (text[pos] == '0') zero = true;
        ++pos;
      } else {
        fail("expected factor");
      }
      ++factors;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      if (pos < text.size() && (text[pos] == 'x' || text[pos] == 'X')) continue;
      break;
    }
    if (!zero) monos.push_back(mask);
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '+') fail("expected '+'");
    ++pos;
  }
  int m = num_vars > 0 ? num_vars : max_index;
  if (max_index > m) {
    throw std::invalid_argument("polynomial uses x" + std::to_string(max_index) +
                                " but only " + std::to_string(m) +
                                " variables were requested");
  }
  return from_monomials(m, monos);
}

std::vector<std::uint32_t> RMPolynomial::monomials() const {
  std::vector<std::uint32_t> out;
  for (auto i : anf_.support()) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

int RMPolynomial::degree() const {
  int d = 0;
  for (auto i : anf_.support()) d = std::max(d, std::popcount(i));
  return d;
}

std::vector<std::uint32_t> RMPolynomial::support() const {
  std::vector<std::uint32_t> out;
  for (auto i : truth_.support()) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

RMPolynomial RMPolynomial::operator+(const RMPolynomial& other) const {
  if (m_ != other.m_) throw std::invalid_argument("variable count mismatch");
  return from_anf(m_, anf_ ^ other.anf_);
}

RMPolynomial RMPolynomial::operator*(const RMPolynomial& other) const {
  if (m_ != other.m_) throw std::invalid_argument("variable count mismatch");
  return from_truth(m_, truth_ & other.truth_);
}

RMPolynomial RMPolynomial::extend(int num_vars) const {
  if (num_vars < m_) throw std::invalid_argument("extend: fewer variables");
  return from_monomials(num_vars, monomials());
}

int RMPolynomial::used_vars() const {
  std::uint32_t all = 0;
  for (auto mono : monomials()) all |= mono;
  return all ? 32 - std::countl_zero(all) : 0;
}

std::string RMPolynomial::to_string() const {
  std::vector<std::vector<int>> terms;
  for (auto mono : monomials()) {
    std::vector<int> vars;
    for (int i = 0; i < m_; ++i) {
      if ((mono >> i) & 1u) vars.push_back(i + 1);
    }
    terms.push_back(std::move(vars));
  }
  if (terms.empty()) return "0";
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  std::string out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (t) out += " + ";
    if (terms[t].empty()) {
      out += "1";
      continue;
    }
    for (std::size_t k = 0; k < terms[t].size(); ++k) {
      if (k) out += "*";
      out += "x" + std::to_string(terms[t][k]);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const RMPolynomial& p) {
  return os << p.to_string() << " [m=" << p.num_vars() << "]";
}

BitVector truth_table(const RMPolynomial& p) { return p.truth(); }

RMPolynomial anf_from_truth(const BitVector& truth, int num_vars) {
  return RMPolynomial::from_truth(num_vars, truth);
}

AffineMap::AffineMap(std::vector<std::uint32_t> columns, std::uint32_t shift)
    : cols_(std::move(columns)), shift_(shift) {
  const int m = static_cast<int>(cols_.size());
  check_vars(m);
  const std::uint32_t limit = m == 32 ? ~0u : (1u << m);
  if (shift_ >= limit) throw std::invalid_argument("affine shift out of range");
  for (auto c : cols_) {
    if (c >= limit) throw std::invalid_argument("affine column out of range");
  }
  if (rank_of_masks(cols_) != m) {
    throw std::invalid_argument("affine map is not invertible");
  }
}

AffineMap::AffineMap(const BitMatrix& linear, const BitVector& shift) {
  if (linear.rows() != linear.cols() || shift.size() != linear.rows()) {
    throw std::invalid_argument("affine map dimensions");
  }
  std::vector<std::uint32_t> cols(linear.cols(), 0);
  for (std::size_t c = 0; c < linear.cols(); ++c) {
    for (std::size_t r = 0; r < linear.rows(); ++r) {
      if (linear.get(r, c)) cols[c] |= 1u << r;
    }
  }
  std::uint32_t s = 0;
  for (auto i : shift.support()) s |= 1u << i;
  *this = AffineMap(std::move(cols), s);
}

AffineMap AffineMap::identity(int m) { return translation(m, 0); }

AffineMap AffineMap::translation(int m, std::uint32_t shift) {
  std::vector<std::uint32_t> cols(m);
  for (int j = 0; j < m; ++j) cols[j] = 1u << j;
  return AffineMap(std::move(cols), shift);
}

AffineMap AffineMap::transvection(int m, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= m || j >= m) {
    throw std::invalid_argument("transvection indices");
  }
  AffineMap a = identity(m);
  a.cols_[j] |= 1u << i;
  return a;
}

AffineMap AffineMap::swap(int m, int i, int j) {
  AffineMap a = identity(m);
  std::swap(a.cols_[i], a.cols_[j]);
  return a;
}

BitMatrix AffineMap::linear() const {
  const std::size_t m = cols_.size();
  BitMatrix out(m, m);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t r = 0; r < m; ++r) {
      if ((cols_[c] >> r) & 1u) out.set(r, c);
    }
  }
  return out;
}

AffineMap AffineMap::inverse() const {
  const int m = dim();
  const BitMatrix inv = triortho::inverse(linear());
  std::vector<std::uint32_t> cols(m, 0);
  for (int c = 0; c < m; ++c) {
    for (int r = 0; r < m; ++r) {
      if (inv.get(r, c)) cols[c] |= 1u << r;
    }
  }
  AffineMap lin(std::move(cols), 0);
  return AffineMap(lin.cols_, lin(shift_));
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
  if (outer.dim() != inner.dim()) {
    throw std::invalid_argument("compose: dimension mismatch");
  }
  AffineMap lin_outer(outer.columns(), 0);
  std::vector<std::uint32_t> cols;
  cols.reserve(inner.columns().size());
  for (auto c : inner.columns()) cols.push_back(lin_outer(c));
  return AffineMap(std::move(cols), outer(inner.shift()));
}

BitVector permute_truth(const BitVector& t, int m, const AffineMap& a) {
  if (a.dim() != m || t.size() != table_size(m)) {
    throw std::invalid_argument("permute_truth: dimension mismatch");
  }
  BitVector out(t.size());
  std::uint32_t img = a.shift();
  const auto& cols = a.columns();
  const std::uint32_t n = static_cast<std::uint32_t>(t.size());
  for (std::uint32_t v = 0; v < n; ++v) {
    if (v) img ^= cols[std::countr_zero(v)];
    if (t.get(img)) {
      // Gray-code order visits g = v ^ (v >> 1).
      out.set(v ^ (v >> 1));
    }
  }
  return out;
}

BitVector translate_truth(const BitVector& t, int m, std::uint32_t e) {
  BitVector out(t.size());
  auto src = t.words();
  auto dst = out.mutable_words();
  const std::size_t high = e >> 6;
  for (std::size_t k = 0; k < src.size(); ++k) {
    std::uint64_t w = src[k ^ high];
    for (int i = 0; i < std::min(m, 6); ++i) {
      if ((e >> i) & 1u) {
        const unsigned s = 1u << i;
        w = ((w & kLowMask[i]) << s) | ((w >> s) & kLowMask[i]);
      }
    }
    dst[k] = w;
  }
  return out;
}

RMPolynomial apply_affine(const RMPolynomial& p, const AffineMap& a) {
  if (a.dim() != p.num_vars()) {
    throw std::invalid_argument("apply_affine: dimension mismatch");
  }
  return RMPolynomial::from_truth(p.num_vars(),
                                  permute_truth(p.truth(), p.num_vars(), a));
}

int affine_span_dim(const RMPolynomial& p) {
  const auto supp = p.support();
  if (supp.empty()) return -1;
  std::vector<std::uint32_t> dirs;
  dirs.reserve(supp.size());
  for (auto x : supp) dirs.push_back(x ^ supp[0]);
  return rank_of_masks(std::move(dirs));
}

std::optional<RMPolynomial> linear_factor(const RMPolynomial& p) {
  if (p.is_zero()) {
    throw std::invalid_argument("linear_factor: zero polynomial");
  }
  const int m = p.num_vars();
  if (affine_span_dim(p) == m) return std::nullopt;
  const auto supp = p.support();
  for (std::uint32_t a = 1; a < (1u << m); ++a) {
    const int c = std::popcount(a & supp[0]) & 1;
    bool ok = true;
    for (auto x : supp) {
      if ((std::popcount(a & x) & 1) != c) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<std::uint32_t> monos;
    if (c == 0) monos.push_back(0);
    for (int i = 0; i < m; ++i) {
      if ((a >> i) & 1u) monos.push_back(1u << i);
    }
    return RMPolynomial::from_monomials(m, monos);
  }
  return std::nullopt;
}

namespace {

struct MoveContext {
  int m;
  std::vector<BitVector> bit_masks;

  explicit MoveContext(int num_vars) : m(num_vars) {
    for (int j = 0; j < m; ++j) bit_masks.push_back(bit_set_mask(m, j));
  }

  // Move index < m*m: if i != j transvection x_i <- x_i + x_j, else
  // translation x_i <- x_i + 1.
  BitVector apply(const BitVector& t, int move) const {
    const int i = move / m;
    const int j = move % m;
    BitVector flipped = translate_truth(t, m, 1u << i);
    if (i == j) return flipped;
    const BitVector& mask = bit_masks[j];
    auto out = t;
    auto o = out.mutable_words();
    auto f = flipped.words();
    auto k = mask.words();
    for (std::size_t w = 0; w < o.size(); ++w) {
      o[w] = (o[w] & ~k[w]) | (f[w] & k[w]);
    }
    return out;
  }
};

std::size_t anf_count(BitVector t, int m) {
  mobius_transform(t.mutable_words(), m);
  return t.weight();
}

BitVector descend(BitVector t, const MoveContext& ctx) {
  std::size_t current = anf_count(t, ctx.m);
  while (true) {
    int best_move = -1;
    std::size_t best = current;
    BitVector best_t;
    for (int mv = 0; mv < ctx.m * ctx.m; ++mv) {
      BitVector cand = ctx.apply(t, mv);
      const std::size_t c = anf_count(cand, ctx.m);
      if (c < best) {
        best = c;
        best_move = mv;
        best_t = std::move(cand);
      }
    }
    if (best_move < 0) return t;
    t = std::move(best_t);
    current = best;
  }
}

}  // namespace

RMPolynomial minimize_monomials(const RMPolynomial& p,
                                const MinimizeOptions& opts) {
  const int m = p.num_vars();
  if (m == 0 || p.monomial_count() <= 1) return p;
  MoveContext ctx(m);
  std::mt19937_64 rng(opts.seed);
  BitVector best = descend(p.truth(), ctx);
  std::size_t best_count = anf_count(best, m);
  for (int r = 0; r < opts.restarts && best_count > 1; ++r) {
    BitVector t = best;
    const int kicks = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < kicks; ++k) {
      t = ctx.apply(t, static_cast<int>(rng() % (m * m)));
    }
    t = descend(std::move(t), ctx);
    const std::size_t c = anf_count(t, m);
    if (c < best_count) {
      best_count = c;
      best = std::move(t);
    }
  }
  return RMPolynomial::from_truth(m, std::move(best));
}

AffineFingerprint affine_fingerprint(const RMPolynomial& p,
                                     bool with_minimized,
                                     const MinimizeOptions& opts) {
  AffineFingerprint fp;
  fp.weight = p.weight();
  fp.degree = p.degree();
  const int m = p.num_vars();
  std::map<std::size_t, std::size_t> hist;
  for (std::uint32_t e = 1; e < (1u << m); ++e) {
    BitVector d = translate_truth(p.truth(), m, e);
    d ^= p.truth();
    ++hist[d.weight()];
  }
  fp.derivative_profile.assign(hist.begin(), hist.end());
  if (with_minimized) {
    fp.min_monomials = minimize_monomials(p, opts).monomial_count();
  }
  return fp;
}

}  // namespace triortho
