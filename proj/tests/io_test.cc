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

#include <gtest/gtest.h>

#include "corpus.h"
#include "triortho/errors.h"

namespace triortho {
namespace {

TEST(CodeText, RoundTrip) {
  const auto code = testing::gen35_code();
  EXPECT_EQ(code.parity, Parity::kEven);
  const auto again = parse_code(format_code(code));
  EXPECT_EQ(again.g1, code.g1);
  EXPECT_EQ(again.g0, code.g0);
}

TEST(CodeText, Errors) {
  try {
    parse_code("111\n---\n110\n1x0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  EXPECT_THROW(parse_code("111\n---\n11\n"), ParseError);
  EXPECT_THROW(parse_code("---\n"), ParseError);
  EXPECT_THROW(parse_code("1\n---\n0\n---\n1\n"), ParseError);
}

TEST(CodeText, EmptyG0) {
  const auto code = parse_code("1\n---\n");
  EXPECT_EQ(code.n(), 1u);
  EXPECT_EQ(code.k(), 1u);
  EXPECT_EQ(code.g0_rows(), 0u);
  EXPECT_EQ(code.parity, Parity::kEven);
}

TEST(CodeJson, RoundTrip) {
  const auto code = testing::gen35_code();
  const auto j = code_to_json(code);
  EXPECT_EQ(j.at("n"), 35);
  EXPECT_EQ(j.at("k"), 3);
  EXPECT_EQ(j.at("parity"), "even");
  const auto again = code_from_json(j);
  EXPECT_EQ(again.g1, code.g1);
  EXPECT_EQ(again.g0, code.g0);
}

TEST(CodeJson, Errors) {
  EXPECT_THROW(code_from_json(nlohmann::json::parse(
                   R"({"n": 3, "k": 2, "g1": ["111"], "g0": []})")),
               ParseError);
  EXPECT_THROW(code_from_json(nlohmann::json::parse(
                   R"({"n": 3, "k": 1, "g1": ["11"], "g0": []})")),
               ParseError);
  EXPECT_THROW(code_from_json(nlohmann::json::parse(R"({"n": 3})")),
               ParseError);
  EXPECT_THROW(load_code("/nonexistent/code.txt"), std::runtime_error);
}

}  // namespace
}  // namespace triortho
