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

#include <bit>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include "triortho/errors.h"

namespace triortho {
namespace {

int mod(int x, int n) { return ((x % n) + n) % n; }

int parity(std::uint32_t x) { return std::popcount(x) & 1; }

double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::uint32_t> column_masks(const BitMatrix& g) {
  std::vector<std::uint32_t> cols(g.cols(), 0);
  for (std::size_t b = 0; b < g.rows(); ++b) {
    for (std::size_t l : g.row(b).support()) cols[l] |= 1u << b;
  }
  return cols;
}

std::uint32_t to_mask(const BitVector& v) {
  return static_cast<std::uint32_t>(v.word0());
}

void check_code(const DescendantCode& code) {
  if (code.k() == 0) throw std::invalid_argument("code has k = 0");
  if (!verify_triorthogonal_matrix(code.g1, code.g0)) {
    throw std::invalid_argument("matrix is not triorthogonal");
  }
  if (code.k() + code.g0_rows() > kMaxSimulatedQubits) {
    throw BudgetExceeded("k + g0 = " +
                         std::to_string(code.k() + code.g0_rows()) +
                         " exceeds the simulation limit of " +
                         std::to_string(kMaxSimulatedQubits) + " qubits");
  }
}

// Final diagonal Clifford of the protocol as a Z4 form.
QuadraticFormZ4 final_correction(const DescendantCode& code,
                                 ProtocolVariant variant,
                                 const std::vector<std::size_t>& corrections) {
  QuadraticFormZ4 form = clifford_form(-correction_SG(code));
  if (variant == ProtocolVariant::kDelayed) {
    const BitMatrix g = code.stacked();
    form += s_phase_from_set(g.select_columns(corrections).transpose());
  }
  return form;
}

// Exponent of i in the phase of S(W) Z(diag d) at z.
int clifford_exponent(const FormDecomposition& dec, std::uint32_t z) {
  int e = 2 * parity(z & to_mask(dec.d));
  for (const auto& w : dec.w.row_vectors()) e += parity(z & to_mask(w));
  return e & 3;
}

}  // namespace

QuadraticFormZ4::QuadraticFormZ4(int m)
    : m_(m), mat_(static_cast<std::size_t>(m) * m, 0) {
  if (m < 0) throw std::invalid_argument("negative form size");
}

void QuadraticFormZ4::set(int i, int j, int value) {
  mat_[i * m_ + j] = mat_[j * m_ + i] = static_cast<std::uint8_t>(mod(value, 4));
}

int QuadraticFormZ4::operator()(std::uint32_t z) const {
  int q = 0;
  for (int i = 0; i < m_; ++i) {
    if (!((z >> i) & 1u)) continue;
    q += at(i, i);
    for (int j = i + 1; j < m_; ++j) {
      if ((z >> j) & 1u) q += 2 * at(i, j);
    }
  }
  return q & 3;
}

QuadraticFormZ4& QuadraticFormZ4::operator+=(const QuadraticFormZ4& other) {
  if (other.m_ != m_) throw std::invalid_argument("form size mismatch");
  for (std::size_t i = 0; i < mat_.size(); ++i) {
    mat_[i] = static_cast<std::uint8_t>((mat_[i] + other.mat_[i]) & 3);
  }
  return *this;
}

int eval_form(const QuadraticFormZ4& f, const BitVector& z) {
  if (static_cast<int>(z.size()) != f.m()) {
    throw std::invalid_argument("vector length " + std::to_string(z.size()) +
                                " does not match form size " +
                                std::to_string(f.m()));
  }
  const auto s = z.support();
  int q = 0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    q += f.at(static_cast<int>(s[a]), static_cast<int>(s[a]));
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      q += 2 * f.at(static_cast<int>(s[a]), static_cast<int>(s[b]));
    }
  }
  return q & 3;
}

std::size_t form_rank(const QuadraticFormZ4& f) {
  BitMatrix a(f.m(), f.m());
  for (int i = 0; i < f.m(); ++i) {
    for (int j = 0; j < f.m(); ++j) a.set(i, j, f.at(i, j) & 1);
  }
  return rank(a);
}

FormDecomposition decompose_form(const QuadraticFormZ4& f) {
  const int m = f.m();
  std::vector<BitVector> a(m, BitVector(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a[i].set(j, f.at(i, j) & 1);
  }
  std::vector<BitVector> rows;
  // A <- A + e^T e.
  for (;;) {
    int b = 0;
    while (b < m && !a[b].get(b)) ++b;
    if (b == m) break;
    const BitVector e = a[b];
    for (std::size_t i : e.support()) a[i] ^= e;
    rows.push_back(e);
  }
  // A <- A + u^T v + v^T u, using
  // e^T e + u^T v + v^T u = (e+u)^T (e+u) + (e+v)^T (e+v) + (e+u+v)^T (e+u+v).
  std::optional<std::size_t> last;
  if (!rows.empty()) last = rows.size() - 1;
  for (int b = 0; b < m; ++b) {
    if (a[b].none()) continue;
    const int c = static_cast<int>(a[b].first_set());
    const BitVector u = a[b];
    const BitVector v = a[c];
    for (std::size_t i : u.support()) a[i] ^= v;
    for (std::size_t i : v.support()) a[i] ^= u;
    const BitVector e = last ? rows[*last] : BitVector(m);
    if (last) {
      rows[*last] = e ^ u;
    } else {
      rows.push_back(u);
    }
    rows.push_back(e ^ v);
    rows.push_back(e ^ u ^ v);
    last = rows.size() - 1;
  }
  FormDecomposition dec{BitMatrix(rows, m), BitVector(m)};
  for (int b = 0; b < m; ++b) {
    int count = 0;
    for (const auto& w : rows) count += w.get(b);
    dec.d.set(b, mod(f.at(b, b) - count, 4) >> 1);
  }
  return dec;
}

QuadraticFormZ4 form_of(const FormDecomposition& dec) {
  const int m = static_cast<int>(dec.d.size());
  QuadraticFormZ4 f(m);
  for (const auto& w : dec.w.row_vectors()) {
    const auto s = w.support();
    for (std::size_t i : s) {
      for (std::size_t j : s) {
        if (i <= j) f.set(static_cast<int>(i), static_cast<int>(j),
                          f.at(static_cast<int>(i), static_cast<int>(j)) + 1);
      }
    }
  }
  for (std::size_t b : dec.d.support()) {
    const int i = static_cast<int>(b);
    f.set(i, i, f.at(i, i) + 2);
  }
  return f;
}

int PhasePolynomial8::operator()(std::uint32_t z) const {
  int e = 0;
  for (const auto& t : cubic) {
    if (((z >> t[0]) & (z >> t[1]) & (z >> t[2])) & 1u) e += 4;
  }
  for (const auto& [bc, coeff] : quadratic) {
    if (((z >> bc.first) & (z >> bc.second)) & 1u) e += 2 * coeff;
  }
  for (const auto& [b, coeff] : linear) {
    if ((z >> b) & 1u) e += coeff;
  }
  return e & 7;
}

int PhasePolynomial8::eval(const BitVector& z) const {
  if (static_cast<int>(z.size()) != m) {
    throw std::invalid_argument("vector length does not match phase size");
  }
  int e = 0;
  for (const auto& t : cubic) {
    if (z.get(t[0]) && z.get(t[1]) && z.get(t[2])) e += 4;
  }
  for (const auto& [bc, coeff] : quadratic) {
    if (z.get(bc.first) && z.get(bc.second)) e += 2 * coeff;
  }
  for (const auto& [b, coeff] : linear) {
    if (z.get(b)) e += coeff;
  }
  return e & 7;
}

PhasePolynomial8 PhasePolynomial8::operator+(const PhasePolynomial8& other) const {
  if (other.m != m) throw std::invalid_argument("phase size mismatch");
  PhasePolynomial8 r = *this;
  for (const auto& t : other.cubic) {
    if (!r.cubic.erase(t)) r.cubic.insert(t);
  }
  for (const auto& [bc, coeff] : other.quadratic) {
    const int v = (r.quadratic[bc] + coeff) & 3;
    if (v) {
      r.quadratic[bc] = v;
    } else {
      r.quadratic.erase(bc);
    }
  }
  for (const auto& [b, coeff] : other.linear) {
    const int v = (r.linear[b] + coeff) & 7;
    if (v) {
      r.linear[b] = v;
    } else {
      r.linear.erase(b);
    }
  }
  return r;
}

PhasePolynomial8 PhasePolynomial8::operator-() const {
  PhasePolynomial8 r = *this;
  for (auto& [bc, coeff] : r.quadratic) coeff = mod(-coeff, 4);
  for (auto& [b, coeff] : r.linear) coeff = mod(-coeff, 8);
  return r;
}

QuadraticFormZ4 s_phase_from_set(const BitMatrix& v) {
  const int m = static_cast<int>(v.cols());
  std::vector<int> acc(static_cast<std::size_t>(m) * m, 0);
  for (const auto& row : v.row_vectors()) {
    const auto s = row.support();
    for (std::size_t i : s) {
      for (std::size_t j : s) ++acc[i * m + j];
    }
  }
  QuadraticFormZ4 f(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) f.set(i, j, acc[i * m + j]);
  }
  return f;
}

PhasePolynomial8 t_phase_from_set(const BitMatrix& v) {
  PhasePolynomial8 p;
  p.m = static_cast<int>(v.cols());
  std::map<std::array<int, 3>, int> cubic;
  std::map<std::pair<int, int>, int> quadratic;
  std::map<int, int> linear;
  for (const auto& row : v.row_vectors()) {
    std::vector<int> s;
    for (std::size_t b : row.support()) s.push_back(static_cast<int>(b));
    for (std::size_t a = 0; a < s.size(); ++a) {
      ++linear[s[a]];
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        ++quadratic[{s[a], s[b]}];
        for (std::size_t c = b + 1; c < s.size(); ++c) {
          ++cubic[{s[a], s[b], s[c]}];
        }
      }
    }
  }
  for (const auto& [t, n] : cubic) {
    if (n & 1) p.cubic.insert(t);
  }
  for (const auto& [bc, n] : quadratic) {
    if (mod(-n, 4)) p.quadratic[bc] = mod(-n, 4);
  }
  for (const auto& [b, n] : linear) {
    if (n & 7) p.linear[b] = n & 7;
  }
  return p;
}

PhasePolynomial8 correction_SG(const DescendantCode& code) {
  if (!verify_triorthogonal_matrix(code.g1, code.g0)) {
    throw std::invalid_argument("matrix is not triorthogonal");
  }
  const BitMatrix g = code.stacked();
  PhasePolynomial8 p;
  p.m = static_cast<int>(g.rows());
  for (int b = 0; b < p.m; ++b) {
    const int w = static_cast<int>(g.row(b).weight());
    if ((w - (w & 1)) & 7) p.linear[b] = (w - (w & 1)) & 7;
    for (int c = b + 1; c < p.m; ++c) {
      const int n = static_cast<int>(g.row(b).overlap(g.row(c)));
      if (mod(-n, 4)) p.quadratic[{b, c}] = mod(-n, 4);
    }
  }
  return p;
}

QuadraticFormZ4 clifford_form(const PhasePolynomial8& p) {
  if (!p.cubic.empty()) {
    throw std::invalid_argument("phase has a cubic term");
  }
  QuadraticFormZ4 f(p.m);
  for (const auto& [bc, coeff] : p.quadratic) {
    if (coeff & 1) throw std::invalid_argument("phase has an odd quadratic term");
    f.set(bc.first, bc.second, coeff >> 1);
  }
  for (const auto& [b, coeff] : p.linear) {
    if (coeff & 1) throw std::invalid_argument("phase has an odd linear term");
    f.set(b, b, coeff >> 1);
  }
  return f;
}

const char* variant_name(ProtocolVariant v) {
  return v == ProtocolVariant::kStandard ? "standard" : "delayed";
}

ProtocolVariant parse_variant(std::string_view s) {
  if (s == "standard") return ProtocolVariant::kStandard;
  if (s == "delayed") return ProtocolVariant::kDelayed;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "'");
}

ProtocolTrace simulate_protocol(const DescendantCode& code,
                                const ProtocolOptions& opts,
                                std::mt19937_64& rng) {
  check_code(code);
  using Amp = std::complex<double>;
  const int k = static_cast<int>(code.k());
  const int nq = k + static_cast<int>(code.g0_rows());
  const std::size_t dim = std::size_t{1} << nq;
  const auto cols = column_masks(code.stacked());
  const Amp omega = std::polar(1.0, M_PI / 4);
  const Amp unit(0.0, 1.0);
  const double half = std::sqrt(0.5);
  std::vector<Amp> psi(dim, Amp(1.0 / std::sqrt(static_cast<double>(dim))));
  const auto normalize = [&] {
    double norm = 0;
    for (const auto& x : psi) norm += std::norm(x);
    const double s = 1.0 / std::sqrt(norm);
    for (auto& x : psi) x *= s;
  };

  ProtocolTrace trace;
  for (std::size_t l = 0; l < cols.size(); ++l) {
    const std::uint32_t col = cols[l];
    const bool flipped = uniform(rng) < opts.noise;
    const Amp anc[2] = {
        half, (flipped ? -half : half) *
                  (opts.correct_on_plus ? std::conj(omega) : omega)};
    double p_plus = 0;
    for (std::uint32_t z = 0; z < dim; ++z) {
      p_plus += std::norm(psi[z]) * std::norm(anc[parity(z & col)]);
    }
    const int t = uniform(rng) < p_plus ? 1 : -1;
    trace.outcomes.push_back(t);
    const bool x_minus = uniform(rng) < 0.5;
    for (std::uint32_t z = 0; z < dim; ++z) {
      const int p = parity(z & col);
      const int a = t == 1 ? p : p ^ 1;
      psi[z] *= anc[a];
      if (x_minus && ((a ^ p) & 1)) psi[z] = -psi[z];
    }
    normalize();
    if ((t == -1) != opts.correct_on_plus) {
      trace.correction_set.push_back(l);
      if (opts.variant == ProtocolVariant::kStandard) {
        for (std::uint32_t z = 0; z < dim; ++z) {
          if (parity(z & col)) psi[z] *= unit;
        }
      }
    }
  }

  trace.reduced = decompose_form(
      final_correction(code, opts.variant, trace.correction_set));
  trace.s_injection_count = trace.reduced.w.rows();
  if (opts.variant == ProtocolVariant::kStandard) {
    trace.s_injection_count += trace.correction_set.size();
  }
  static const Amp powers[4] = {1.0, unit, -1.0, -unit};
  for (std::uint32_t z = 0; z < dim; ++z) {
    psi[z] *= powers[clifford_exponent(trace.reduced, z)];
  }

  const std::size_t out_dim = std::size_t{1} << k;
  const double proj = 1.0 / std::sqrt(static_cast<double>(dim / out_dim));
  std::vector<Amp> out(out_dim, 0.0);
  for (std::uint32_t z = 0; z < dim; ++z) out[z & (out_dim - 1)] += psi[z] * proj;
  Amp overlap = 0.0;
  for (std::uint32_t x = 0; x < out_dim; ++x) {
    trace.pass_probability += std::norm(out[x]);
    overlap += std::conj(std::pow(omega, std::popcount(x))) * out[x];
  }
  overlap /= std::sqrt(static_cast<double>(out_dim));
  trace.postselect_pass = uniform(rng) < trace.pass_probability;
  if (trace.pass_probability > 1e-12) {
    trace.output_fidelity =
        std::min(1.0, std::norm(overlap) / trace.pass_probability);
  }
  return trace;
}

ProtocolTrace simulate_protocol(const DescendantCode& code,
                                const ProtocolOptions& opts,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return simulate_protocol(code, opts, rng);
}

ProtocolSummary simulate_shots(const DescendantCode& code,
                               const ProtocolOptions& opts, std::size_t shots,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ProtocolSummary s;
  s.shots = shots;
  std::size_t passed = 0;
  double fidelity = 0, injections = 0, corrections = 0;
  for (std::size_t i = 0; i < shots; ++i) {
    const ProtocolTrace t = simulate_protocol(code, opts, rng);
    injections += static_cast<double>(t.s_injection_count);
    corrections += static_cast<double>(t.correction_set.size());
    s.max_s_injections = std::max(s.max_s_injections, t.s_injection_count);
    if (t.postselect_pass) {
      ++passed;
      fidelity += t.output_fidelity;
      s.min_fidelity_on_pass = std::min(s.min_fidelity_on_pass, t.output_fidelity);
    }
  }
  if (shots) {
    const double n = static_cast<double>(shots);
    s.pass_rate = static_cast<double>(passed) / n;
    s.mean_s_injections = injections / n;
    s.mean_corrections = corrections / n;
  }
  if (passed) s.mean_fidelity_on_pass = fidelity / static_cast<double>(passed);
  return s;
}

std::vector<int> protocol_phase(const DescendantCode& code,
                                ProtocolVariant variant,
                                const std::vector<int>& outcomes) {
  check_code(code);
  const auto cols = column_masks(code.stacked());
  if (outcomes.size() != cols.size()) {
    throw std::invalid_argument("expected one outcome per column");
  }
  const std::size_t dim = std::size_t{1} << (code.k() + code.g0_rows());
  std::vector<int> e(dim, 0);
  std::vector<std::size_t> corrections;
  for (std::size_t l = 0; l < cols.size(); ++l) {
    if (outcomes[l] != 1 && outcomes[l] != -1) {
      throw std::invalid_argument("outcomes must be +1 or -1");
    }
    const bool minus = outcomes[l] == -1;
    if (minus) corrections.push_back(l);
    for (std::uint32_t z = 0; z < dim; ++z) {
      const int p = parity(z & cols[l]);
      e[z] += minus ? 1 - p : p;
      if (minus && variant == ProtocolVariant::kStandard) e[z] += 2 * p;
    }
  }
  const auto dec = decompose_form(final_correction(code, variant, corrections));
  for (std::uint32_t z = 0; z < dim; ++z) e[z] += 2 * clifford_exponent(dec, z);
  const int base = e[0];
  for (auto& x : e) x = mod(x - base, 8);
  return e;
}

bool mod8_identity_check() {
  for (int x = 0; x < 8; ++x) {
    if (x % 2 != mod(2 * x * x * x + x * x - 2 * x, 8)) return false;
  }
  for (int x = 0; x < 4; ++x) {
    if (x % 2 != (x * x) % 4) return false;
  }
  return true;
}

}  // namespace triortho
