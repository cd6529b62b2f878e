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

#ifndef ETR_TEXT_HPP_
#define ETR_TEXT_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace etr {

// A symbol is one Unicode scalar value. Comparison is exact code-point
// equality; no normalization is applied anywhere in the library.
using Symbol = char32_t;
using Word = std::u32string;
using WordView = std::u32string_view;

// Raised for malformed input documents. Carries the 1-based line number
// when the error can be attributed to a line (0 otherwise).
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string source, std::size_t line, const std::string& what);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Decodes UTF-8; returns nullopt on any ill-formed sequence, surrogate or
// overlong encoding.
std::optional<Word> decode_utf8(std::string_view bytes);

void append_utf8(std::string& out, Symbol s);
std::string encode_utf8(WordView word);

inline std::string to_utf8(Symbol s) {
  std::string out;
  append_utf8(out, s);
  return out;
}

// One word per line, blank lines ignored, a trailing '\r' is dropped.
// Throws FormatError naming the first line that is not valid UTF-8.
std::vector<Word> read_word_list(std::istream& in, const std::string& source);
std::vector<Word> read_word_list_file(const std::string& path);

}  // namespace etr

#endif  // ETR_TEXT_HPP_
