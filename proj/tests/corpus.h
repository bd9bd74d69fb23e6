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

#ifndef TRIORTHO_TESTS_CORPUS_H_
#define TRIORTHO_TESTS_CORPUS_H_

#include <string>
#include <vector>

#include "triortho/io.h"
#include "triortho/polynomial.h"
#include "triortho/space.h"

namespace triortho::testing {

struct CorpusEntry {
  const char* text;
  int m;
  std::size_t weight;
};

// Indicator polynomials of the five unital spaces with c <= 30.
inline const std::vector<CorpusEntry>& five_classes() {
  static const std::vector<CorpusEntry> entries = {
      {"1", 4, 16},
      {"x1*x2 + x3*x4", 6, 24},
      {"x1*x2 + x3*x4 + x5*x6", 6, 28},
      {"x1*x2*x3 + x4*x5*x6", 7, 28},
      {"x1*x2*x3*x4 + x5*x6*x7*x8", 8, 30},
  };
  return entries;
}

inline TriorthogonalSpace corpus_space(const CorpusEntry& e) {
  return indicator_to_generator(RMPolynomial::parse(e.text, e.m));
}

inline TriorthogonalSpace rm14_space() { return corpus_space(five_classes()[0]); }

inline std::string data_path(const std::string& name) {
  return std::string(TRIORTHO_TEST_DATA_DIR) + "/" + name;
}

// The [[15,1,3]] code: RM(1,4) punctured at one coordinate.
inline DescendantCode fifteen_one_code() {
  const std::vector<std::size_t> p = {0};
  return even_descendant(rm14_space(), p);
}

// The [[35,3,3]] code.
inline DescendantCode gen35_code() { return load_code(data_path("gen35.txt")); }

}  // namespace triortho::testing

#endif  // TRIORTHO_TESTS_CORPUS_H_
