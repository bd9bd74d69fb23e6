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

#include "triortho/io.h"

#include <fstream>
#include <sstream>

#include "triortho/errors.h"

namespace triortho {

namespace {

Parity parity_of(const DescendantCode& code) {
  return (code.n() + code.k()) % 2 == 0 ? Parity::kEven : Parity::kOdd;
}

BitMatrix rows_from_json(const nlohmann::json& rows, std::size_t n) {
  if (!rows.is_array()) throw ParseError("matrix must be an array", 0);
  BitMatrix m(0, n);
  for (const auto& row : rows) {
    if (!row.is_string()) throw ParseError("row must be a string", 0);
    BitVector v;
    try {
      v = BitVector::from_string(row.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), 0);
    }
    if (v.size() != n) throw ParseError("row length differs from n", 0);
    m.append_row(v);
  }
  return m;
}

}  // namespace

DescendantCode read_code(std::istream& in) {
  int line = 0;
  DescendantCode code;
  code.g1 = read_matrix(in, &line);
  code.g0 = read_matrix(in, &line);
  std::string rest;
  while (std::getline(in, rest)) {
    ++line;
    if (rest.find_first_not_of(" \t\r") != std::string::npos) {
      throw ParseError("unexpected content after G0 block", line);
    }
  }
  if (code.g1.empty() && code.g0.empty()) {
    throw ParseError("code has no rows", line);
  }
  if (!code.g1.empty() && !code.g0.empty() &&
      code.g1.cols() != code.g0.cols()) {
    throw ParseError("G1 and G0 have different lengths", line);
  }
  code.parity = parity_of(code);
  return code;
}

DescendantCode parse_code(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_code(in);
}

std::string format_code(const DescendantCode& code) {
  return format_matrix(code.g1) + "---\n" + format_matrix(code.g0);
}

nlohmann::json code_to_json(const DescendantCode& code) {
  nlohmann::json j;
  j["n"] = code.n();
  j["k"] = code.k();
  j["parity"] = parity_name(code.parity);
  j["g1"] = code.g1.to_strings();
  j["g0"] = code.g0.to_strings();
  return j;
}

DescendantCode code_from_json(const nlohmann::json& j) {
  try {
    const std::size_t n = j.at("n").get<std::size_t>();
    DescendantCode code;
    code.g1 = rows_from_json(j.at("g1"), n);
    code.g0 = rows_from_json(j.at("g0"), n);
    if (code.g1.rows() != j.at("k").get<std::size_t>()) {
      throw ParseError("k does not match the number of G1 rows", 0);
    }
    code.parity = j.contains("parity")
                      ? parse_parity(j.at("parity").get<std::string>())
                      : parity_of(code);
    return code;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

DescendantCode load_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return code_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what(), 0);
    }
  }
  return parse_code(text);
}

}  // namespace triortho
