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

#ifndef TRIORTHO_IO_H_
#define TRIORTHO_IO_H_

#include <istream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "triortho/space.h"

namespace triortho {

// Two matrix blocks, G1 then G0, separated by a line "---". Parity is even
// when n + k is even. Throws ParseError.
DescendantCode read_code(std::istream& in);
DescendantCode parse_code(std::string_view text);
std::string format_code(const DescendantCode& code);

// {n, k, parity, g1: [...], g0: [...]} with one "0"/"1" string per row.
nlohmann::json code_to_json(const DescendantCode& code);
DescendantCode code_from_json(const nlohmann::json& j);

// Accepts either format, chosen by the first non-blank character.
DescendantCode load_code(const std::string& path);

}  // namespace triortho

#endif  // TRIORTHO_IO_H_
