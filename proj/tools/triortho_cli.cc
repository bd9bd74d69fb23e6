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


// Command-line front end for the triortho library.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "triortho/bit_matrix.h"
#include "triortho/classify.h"
#include "triortho/distance.h"
#include "triortho/errors.h"
#include "triortho/io.h"
#include "triortho/level3.h"
#include "triortho/magic.h"
#include "triortho/polynomial.h"
#include "triortho/space.h"

namespace {

using nlohmann::json;
using namespace triortho;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Common {
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  int workers = 1;
};

struct SpaceInput {
  std::string polynomial;
  int m = 0;
  std::string space_file;
};

void add_space_options(CLI::App* cmd, SpaceInput& in) {
  auto* p = cmd->add_option("--polynomial", in.polynomial,
                            "indicator polynomial, e.g. \"x1*x2 + x3*x4\"");
  cmd->add_option("--m", in.m, "number of variables (default: inferred)");
  auto* s = cmd->add_option("--space", in.space_file,
                            "file with a generator matrix of the space");
  p->excludes(s);
}

struct LoadedSpace {
  TriorthogonalSpace space;
  std::optional<RMPolynomial> indicator;
};

LoadedSpace load_space(const SpaceInput& in) {
  if (!in.polynomial.empty()) {
    const auto p = RMPolynomial::parse(in.polynomial, in.m);
    return {indicator_to_generator(p), p};
  }
  if (in.space_file.empty()) {
    throw CLI::ValidationError("one of --polynomial or --space is required");
  }
  std::ifstream f(in.space_file);
  if (!f) throw ParseError("cannot open " + in.space_file, 0);
  const BitMatrix h = read_matrix(f);
  if (!is_triorthogonal_space(h)) {
    throw std::invalid_argument("space in " + in.space_file +
                                " is not triorthogonal");
  }
  return {make_space(h), std::nullopt};
}

json distance_json(const DistanceResult& d) {
  if (d.exact) return *d.value;
  return ">" + std::to_string(d.cap);
}

void emit(const Common& c, const json& j, const std::string& csv,
          const std::string& summary) {
  const std::string body = c.format == "csv" ? csv : j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << body;
    std::cerr << summary << "\n";
    return;
  }
  std::ofstream f(c.out);
  f << body;
  if (!f) throw std::runtime_error("cannot write " + c.out);
  std::cout << summary << "\n";
}

std::string csv_from_object(const json& j) {
  std::string head, row;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!head.empty()) {
      head += ",";
      row += ",";
    }
    head += it.key();
    row += it->is_string() ? it->get<std::string>() : it->dump();
  }
  return head + "\n" + row + "\n";
}

// Feasible k for each parity, with d_max for each.
std::pair<json, json> dmax_tables(const TriorthogonalSpace& s, int cap,
                                  std::optional<std::size_t> only_k,
                                  std::set<Parity> parities) {
  json even = json::object(), odd = json::object();
  for (const Parity parity : parities) {
    json& table = parity == Parity::kEven ? even : odd;
    for (std::size_t k = 1;; ++k) {
      const std::size_t punct = parity == Parity::kEven ? k : k + 1;
      if (2 * punct > s.c() || (parity == Parity::kEven && 2 * k == s.c())) break;
      if (punct > s.r()) break;
      if (only_k && k != *only_k) continue;
      try {
        table[std::to_string(k)] = distance_json(d_max(s, parity, k, cap).distance);
      } catch (const std::invalid_argument&) {
        break;
      }
      if (only_k) break;
    }
  }
  return {even, odd};
}

int run_check(const Common& c, const std::string& path) {
  const DescendantCode code = load_code(path);
  const bool ok = verify_triorthogonal_matrix(code.g1, code.g0);
  json j = {{"triorthogonal", ok},
            {"n", code.n()},
            {"k", code.k()},
            {"g0_rows", code.g0_rows()},
            {"parity", parity_name(code.parity)}};
  emit(c, j, csv_from_object(j),
       std::string(ok ? "triorthogonal" : "NOT triorthogonal") +
           " n=" + std::to_string(code.n()) + " k=" + std::to_string(code.k()));
  return ok ? kExitOk : kExitVerify;
}

int run_descend(const Common& c, const SpaceInput& in,
                std::vector<std::size_t> punctured, std::optional<std::size_t> j,
                const std::string& code_out) {
  const auto loaded = load_space(in);
  std::sort(punctured.begin(), punctured.end());
  const DescendantCode code = j ? odd_descendant(loaded.space, punctured, *j)
                                : even_descendant(loaded.space, punctured);
  if (!code_out.empty()) {
    std::ofstream f(code_out);
    if (code_out.ends_with(".json")) {
      f << code_to_json(code).dump(2) << "\n";
    } else {
      f << format_code(code);
    }
    if (!f) throw std::runtime_error("cannot write " + code_out);
  }
  json out = {{"n", code.n()},
              {"k", code.k()},
              {"g0_rows", code.g0_rows()},
              {"parity", parity_name(code.parity)},
              {"triorthogonal", verify_triorthogonal_matrix(code.g1, code.g0)}};
  if (code_out.empty()) out["code"] = code_to_json(code);
  emit(c, out, csv_from_object(out),
       "descendant n=" + std::to_string(code.n()) + " k=" +
           std::to_string(code.k()));
  return kExitOk;
}

int run_distance(const Common& c, const std::string& path, int cap) {
  const DescendantCode code = load_code(path);
  const DistanceResult d = z_distance(code, cap);
  json j = {{"d", distance_json(d)},
            {"exact", d.exact},
            {"cap", d.cap},
            {"n", code.n()},
            {"k", code.k()}};
  emit(c, j, csv_from_object(j),
       "z distance " + (d.exact ? std::to_string(*d.value)
                                : "> " + std::to_string(cap)));
  return kExitOk;
}

int run_dmax(const Common& c, const SpaceInput& in, const std::string& parity,
             std::size_t k, int cap) {
  const auto loaded = load_space(in);
  std::set<Parity> parities;
  if (parity == "even" || parity == "both") parities.insert(Parity::kEven);
  if (parity == "odd" || parity == "both") parities.insert(Parity::kOdd);
  const auto [even, odd] = dmax_tables(
      loaded.space, cap, k ? std::optional<std::size_t>(k) : std::nullopt,
      parities);
  json j = {{"c", loaded.space.c()}, {"r", loaded.space.r()}, {"cap", cap}};
  if (parities.count(Parity::kEven)) j["dmax_even"] = even;
  if (parities.count(Parity::kOdd)) j["dmax_odd"] = odd;
  std::string csv = "parity,k,dmax\n";
  for (const auto& [name, t] : {std::pair{"even", even}, std::pair{"odd", odd}}) {
    for (auto it = t.begin(); it != t.end(); ++it) {
      csv += std::string(name) + "," + it.key() + "," +
             (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
    }
  }
  emit(c, j, csv, "dmax over c=" + std::to_string(loaded.space.c()));
  return kExitOk;
}

int run_divisible(const Common& c, const SpaceInput& in, bool brute,
                  int max_free) {
  const auto loaded = load_space(in);
  const DivisibilityVerdict v = brute ? brute_force_divisible(loaded.space, max_free)
                                      : is_level3_divisible(loaded.space);
  json j = {{"divisible", v.divisible},
            {"witness", v.witness ? json(*v.witness) : json(nullptr)},
            {"obstruction", v.obstruction ? json(*v.obstruction) : json(nullptr)},
            {"method", brute ? "brute_force" : "elimination"}};
  if (v.witness) {
    j["witness_verified"] = check_conditions_0_to_3(loaded.space, *v.witness);
  }
  std::string csv = "divisible,method\n" + std::string(v.divisible ? "true" : "false") +
                    "," + j["method"].get<std::string>() + "\n";
  emit(c, j, csv, v.divisible ? "divisible at level 3" : "not divisible at level 3");
  return v.witness && !j["witness_verified"].get<bool>() ? kExitVerify : kExitOk;
}

int run_classify(const Common& c, std::size_t max_c, bool heavy, bool with_dmax,
                 int cap, const std::string& checkpoint) {
  ClassifyOptions opts;
  opts.max_c = max_c;
  opts.heavy = heavy;
  opts.workers = c.workers;
  opts.checkpoint = checkpoint;
  opts.progress = [](const std::string& msg) { std::cerr << msg << "\n"; };
  const auto classes = classify_unital_spaces(opts);
  json rows = json::array();
  std::set<std::size_t> even_ks, odd_ks;
  for (const auto& cl : classes) {
    const RMPolynomial& p = cl.representative;
    const TriorthogonalSpace s = indicator_to_generator(p);
    json row = {{"polynomial", p.to_string()},
                {"m", p.num_vars()},
                {"weight", cl.weight},
                {"r", s.r()},
                {"unital", s.unital},
                {"divisible_level3", is_level3_divisible(s).divisible}};
    if (with_dmax) {
      auto [even, odd] = dmax_tables(s, cap, std::nullopt, {Parity::kEven, Parity::kOdd});
      for (auto it = even.begin(); it != even.end(); ++it) even_ks.insert(std::stoul(it.key()));
      for (auto it = odd.begin(); it != odd.end(); ++it) odd_ks.insert(std::stoul(it.key()));
      row["dmax_even"] = even;
      row["dmax_odd"] = odd;
    }
    rows.push_back(row);
  }
  std::string csv = "id,polynomial,m,weight,divisible";
  for (std::size_t k : even_ks) csv += ",dmax_even_k" + std::to_string(k);
  for (std::size_t k : odd_ks) csv += ",dmax_odd_k" + std::to_string(k);
  csv += "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& r = rows[i];
    csv += std::to_string(i + 1) + ",\"" + r["polynomial"].get<std::string>() +
           "\"," + r["m"].dump() + "," + r["weight"].dump() + "," +
           r["divisible_level3"].dump();
    const auto cell = [&](const char* key, std::size_t k) {
      csv += ",";
      if (!r.contains(key)) return;
      const auto it = r[key].find(std::to_string(k));
      if (it != r[key].end()) {
        csv += it->is_string() ? it->get<std::string>() : it->dump();
      }
    };
    for (std::size_t k : even_ks) cell("dmax_even", k);
    for (std::size_t k : odd_ks) cell("dmax_odd", k);
    csv += "\n";
  }
  emit(c, rows, csv, std::to_string(classes.size()) + " classes with c <= " +
                         std::to_string(max_c));
  return kExitOk;
}

int run_classify_rm36(const Common& c, std::size_t max_weight) {
  const auto classes = classify_rm36_low_weight(max_weight);
  json rows = json::array();
  std::string csv = "id,polynomial,weight,members\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& cl = classes[i];
    rows.push_back({{"polynomial", cl.representative.to_string()},
                    {"weight", cl.weight},
                    {"members", cl.member_count_seen}});
    csv += std::to_string(i + 1) + ",\"" + cl.representative.to_string() + "\"," +
           std::to_string(cl.weight) + "," + std::to_string(cl.member_count_seen) +
           "\n";
  }
  emit(c, rows, csv, std::to_string(classes.size()) + " classes of weight <= " +
                         std::to_string(max_weight));
  return kExitOk;
}

int run_simulate(const Common& c, const std::string& path,
                 const std::string& variant, std::size_t shots, double noise,
                 bool flip) {
  const DescendantCode code = load_code(path);
  ProtocolOptions opts;
  opts.variant = parse_variant(variant);
  opts.noise = noise;
  opts.correct_on_plus = flip;
  const ProtocolSummary s = simulate_shots(code, opts, shots, c.seed);
  json j = {{"shots", s.shots},
            {"pass_rate", s.pass_rate},
            {"mean_fidelity_on_pass", s.mean_fidelity_on_pass},
            {"mean_s_injections", s.mean_s_injections},
            {"max_s_injections", s.max_s_injections},
            {"mean_corrections", s.mean_corrections},
            {"variant", variant_name(opts.variant)},
            {"seed", c.seed}};
  std::ostringstream summary;
  summary << s.shots << " shots, pass rate " << s.pass_rate
          << ", mean fidelity " << s.mean_fidelity_on_pass;
  emit(c, j, csv_from_object(j), summary.str());
  return kExitOk;
}

int default_workers() {
  if (const char* env = std::getenv("TRIORTHO_WORKERS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triorthogonal codes and Reed-Muller classification"};
  app.require_subcommand(1);
  Common common;
  common.workers = default_workers();
  app.add_option("--out", common.out, "write the machine-readable result here");
  app.add_option("--format", common.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", common.seed, "random seed (default 0)");
  app.add_option("--workers", common.workers,
                 "worker threads (default: TRIORTHO_WORKERS or 1)")
      ->check(CLI::PositiveNumber);

  std::string code_file;
  int cap = kDefaultDistanceCap;
  SpaceInput space_in;

  auto* check = app.add_subcommand("check", "verify a triorthogonal matrix");
  check->add_option("--matrix,--code", code_file, "code file")->required();

  auto* descend = app.add_subcommand("descend", "build a descendant code");
  add_space_options(descend, space_in);
  std::vector<std::size_t> punctured;
  std::optional<std::size_t> odd_j;
  std::string code_out;
  descend->add_option("--puncture", punctured, "punctured coordinates, 0-based")
      ->delimiter(',')
      ->required();
  descend->add_option("--j", odd_j, "distinguished coordinate (odd case)");
  descend->add_option("--code-out", code_out,
                      "write the code (.json for JSON, else text)");

  auto* distance = app.add_subcommand("distance", "Z distance of a code");
  distance->add_option("--code", code_file, "code file")->required();
  distance->add_option("--cap", cap, "search cap")->check(CLI::PositiveNumber);

  auto* dmax = app.add_subcommand("dmax", "maximum descendant distance");
  add_space_options(dmax, space_in);
  std::string parity = "both";
  std::size_t dmax_k = 0;
  dmax->add_option("--parity", parity)->check(CLI::IsMember({"even", "odd", "both"}));
  dmax->add_option("--k", dmax_k, "number of logical qubits (0 = all feasible)");
  dmax->add_option("--cap", cap, "distance cap")->check(CLI::PositiveNumber);

  auto* divisible = app.add_subcommand("divisible", "level-3 divisibility");
  add_space_options(divisible, space_in);
  bool brute = false;
  int max_free = 24;
  divisible->add_flag("--brute-force", brute, "exhaustive search instead");
  divisible->add_option("--max-free", max_free,
                        "brute-force budget: largest c - r searched")
      ->check(CLI::Range(0, 40));

  auto* classify = app.add_subcommand("classify", "classify unital spaces");
  std::size_t max_c = 30;
  bool heavy = false, no_dmax = false;
  std::string checkpoint;
  classify->add_option("--max-c", max_c, "largest c")->check(CLI::Range(16, 38));
  classify->add_flag("--heavy", heavy, "include case 10");
  classify->add_flag("--no-dmax", no_dmax, "skip the d_max columns");
  classify->add_option("--cap", cap, "distance cap")->check(CLI::PositiveNumber);
  classify->add_option("--checkpoint", checkpoint, "resumable progress file");

  auto* rm36 = app.add_subcommand("classify-rm36", "low-weight RM(3,6) classes");
  std::size_t max_weight = 18;
  rm36->add_option("--max-weight", max_weight)->check(CLI::Range(1, 64));

  auto* simulate = app.add_subcommand("simulate", "simulate distillation");
  std::string variant = "delayed";
  std::size_t shots = 1000;
  double noise = 0.0;
  bool flip = false;
  simulate->add_option("--code", code_file, "code file")->required();
  simulate->add_option("--variant", variant)
      ->check(CLI::IsMember({"standard", "delayed"}));
  simulate->add_option("--shots", shots);
  simulate->add_option("--noise", noise)->check(CLI::Range(0.0, 1.0));
  simulate->add_flag("--correct-on-plus", flip,
                     "inject T-dagger states and correct on +1 outcomes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check) return run_check(common, code_file);
    if (*descend) return run_descend(common, space_in, punctured, odd_j, code_out);
    if (*distance) return run_distance(common, code_file, cap);
    if (*dmax) return run_dmax(common, space_in, parity, dmax_k, cap);
    if (*divisible) return run_divisible(common, space_in, brute, max_free);
    if (*classify) return run_classify(common, max_c, heavy, !no_dmax, cap, checkpoint);
    if (*rm36) return run_classify_rm36(common, max_weight);
    if (*simulate) return run_simulate(common, code_file, variant, shots, noise, flip);
  } catch (const BudgetExceeded& e) {
    std::cout << json{{"partial", true}, {"error", e.what()}}.dump(2) << "\n";
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  }
  return kExitUsage;
}
