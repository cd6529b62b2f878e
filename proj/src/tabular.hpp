// Copyright 2026 The etr Authors. All Rights Reserved.
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

// Line-level helpers shared by the FSA and FST text readers.

#ifndef ETR_SRC_TABULAR_HPP_
#define ETR_SRC_TABULAR_HPP_

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "etr/text.hpp"

namespace etr::tabular {

inline bool is_space(char c) { return c == ' ' || c == '\t'; }

// Splits off the next whitespace-delimited field and advances `rest` past
// exactly one separator character.
inline std::string_view next_field(std::string_view& rest) {
  std::size_t begin = 0;
  while (begin < rest.size() && is_space(rest[begin])) ++begin;
  std::size_t end = begin;
  while (end < rest.size() && !is_space(rest[end])) ++end;
  std::string_view field = rest.substr(begin, end - begin);
  rest.remove_prefix(end < rest.size() ? end + 1 : end);
  return field;
}

inline bool only_space(std::string_view rest) {
  for (char c : rest) {
    if (!is_space(c)) return false;
  }
  return true;
}

inline std::optional<std::uint32_t> parse_id(std::string_view field) {
  if (field.empty()) return std::nullopt;
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

// Decodes a field that must hold exactly one Unicode scalar.
inline std::optional<Symbol> parse_scalar(std::string_view field) {
  auto decoded = decode_utf8(field);
  if (!decoded || decoded->size() != 1) return std::nullopt;
  return (*decoded)[0];
}

}  // namespace etr::tabular

#endif  // ETR_SRC_TABULAR_HPP_
