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

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "etr/fsa.hpp"
#include "oracle.hpp"

using etr::Fsa;
using etr::FormatError;
using etr::StateId;
using etr::Word;
using etr::oracle::u32;
using etr::oracle::u32_list;

namespace {

// Deterministic walk that does not use the library's membership check.
bool walk_accepts(const Fsa& fsa, const Word& w) {
  StateId q = fsa.start();
  for (char32_t s : w) {
    bool moved = false;
    for (const auto& a : fsa.arcs(q)) {
      if (a.symbol == s) {
        q = a.target;
        moved = true;
        break;
      }
    }
    if (!moved) return false;
  }
  return fsa.is_final(q);
}

std::vector<Word> figure7() {
  return u32_list({"abacus", "abacuses", "abalone", "abandone", "abandoned", "abandoning",
                   "access"});
}

bool is_block_string(const Word& w) {
  if (w.size() % 3 != 0) return false;
  for (std::size_t k = 0; k < w.size(); k += 3) {
    const Word block = w.substr(k, 3);
    if (block != u32("aba") && block != u32("bab")) return false;
  }
  return true;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("trie shares prefixes") {
  const auto words = u32_list({"a", "ab"});
  const Fsa fsa = etr::build_trie(words);
  CHECK(fsa.num_states() == 3);
  CHECK(fsa.num_arcs() == 2);
  CHECK_FALSE(fsa.is_final(fsa.start()));
  const StateId after_a = fsa.arcs(fsa.start())[0].target;
  CHECK(fsa.is_final(after_a));
  CHECK(fsa.is_final(fsa.arcs(after_a)[0].target));
}

TEST_CASE("figure 7 word list") {
  const Fsa fsa = etr::build_trie(figure7());
  const auto language = etr::oracle::enumerate_language(fsa, 12);
  const auto words = figure7();
  CHECK(language == std::set<Word>(words.begin(), words.end()));
  CHECK_FALSE(walk_accepts(fsa, u32("abandon")));
  CHECK(fsa.is_deterministic());
}

TEST_CASE("empty word list gives the empty language") {
  const Fsa fsa = etr::build_trie(std::vector<Word>{});
  CHECK(fsa.num_states() == 1);
  CHECK(fsa.num_arcs() == 0);
  CHECK_FALSE(fsa.is_final(fsa.start()));
}

TEST_CASE("duplicates and input order do not change the trie") {
  auto words = figure7();
  auto shuffled = words;
  shuffled.insert(shuffled.end(), words.begin(), words.end());
  std::mt19937 rng(3);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CHECK(etr::format_fsa(etr::build_trie(words)) == etr::format_fsa(etr::build_trie(shuffled)));
}

TEST_CASE("trie states are numbered breadth-first") {
  const Fsa fsa = etr::build_trie(figure7());
  CHECK(fsa.start() == 0);
  StateId expected_next = 1;
  for (StateId s = 0; s < fsa.num_states(); ++s) {
    for (const auto& a : fsa.arcs(s)) CHECK(a.target == expected_next++);
  }
}

TEST_CASE("trie recognizes exactly its word list") {
  const auto all = etr::read_word_list_file(std::string(ETR_DATA_DIR) + "/web2_lower.txt");
  std::mt19937 rng(11);
  std::vector<Word> sample;
  for (int k = 0; k < 3000; ++k) sample.push_back(all[rng() % all.size()]);
  const Fsa fsa = etr::build_trie(sample);
  CHECK(fsa.is_deterministic());
  for (const Word& w : sample) CHECK(walk_accepts(fsa, w));

  const std::set<Word> members(sample.begin(), sample.end());
  int rejected = 0;
  while (rejected < 1000) {
    Word w(1 + rng() % 10, U'a');
    for (auto& s : w) s = U'a' + static_cast<char32_t>(rng() % 26);
    if (members.count(w)) continue;
    CHECK_FALSE(walk_accepts(fsa, w));
    ++rejected;
  }
}

TEST_CASE("figure 5 machine loads and is cyclic") {
  const Fsa fsa = etr::read_fsa_file(std::string(ETR_TEST_DATA) + "/figure5.fsa");
  CHECK(fsa.num_states() == 6);
  CHECK(fsa.num_arcs() == 8);
  const auto language = etr::oracle::enumerate_language(fsa, 9);
  CHECK(language.count(Word()));
  CHECK(language.count(u32("aba")));
  CHECK(language.count(u32("bab")));
  CHECK(language.count(u32("abaaba")));
  CHECK(language.count(u32("ababab")));
  CHECK(language.count(u32("bababa")));
  CHECK(language.count(u32("abababab")) == 0);
  etr::oracle::SmallStrings strings({U'a', U'b'}, 9);
  for (const Word& w : strings.all()) CHECK(language.count(w) == (is_block_string(w) ? 1u : 0u));
}

TEST_CASE("fsa text round trip") {
  const std::string text = read_file(std::string(ETR_TEST_DATA) + "/figure5.fsa");
  const Fsa loaded = etr::parse_fsa(text);
  const std::string saved = etr::format_fsa(loaded);
  const Fsa reloaded = etr::parse_fsa(saved);
  CHECK(etr::format_fsa(reloaded) == saved);
  CHECK(etr::oracle::enumerate_language(loaded, 8) ==
        etr::oracle::enumerate_language(reloaded, 8));
}

TEST_CASE("arc symbols can be any scalar") {
  const Fsa fsa = etr::parse_fsa("fsa 3 0\nfinal 2\narc 0 1  \narc 1 2 ı\n");
  const auto language = etr::oracle::enumerate_language(fsa, 3);
  CHECK(language == std::set<Word>{Word{U' ', U'ı'}});
  CHECK(etr::format_fsa(etr::parse_fsa(etr::format_fsa(fsa))) == etr::format_fsa(fsa));
}

TEST_CASE("nondeterministic machines load") {
  const Fsa fsa = etr::parse_fsa("fsa 3 0\nfinal 2\narc 0 1 a\narc 0 2 a\narc 1 2 b\n");
  CHECK_FALSE(fsa.is_deterministic());
  CHECK(etr::oracle::enumerate_language(fsa, 3) == std::set<Word>{u32("a"), u32("ab")});
}

TEST_CASE("fsa load errors name the line") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      etr::parse_fsa(text, "m.fsa");
    } catch (const FormatError& e) {
      return e.line();
    }
    return 9999;
  };
  CHECK(line_of("fsa 2 0\n# comment\narc 0 5 a\n") == 3);   // undeclared state
  CHECK(line_of("fsa 2 0\nfsa 2 0\n") == 2);                  // duplicate header
  CHECK(line_of("fsa 2 0\nfinal 0\nbogus 1\n") == 3);         // malformed line
  CHECK(line_of("final 0\nfsa 2 0\n") == 1);                  // before header
  CHECK(line_of("fsa 2 0\narc 0 1 ab\n") == 2);               // two symbols
  CHECK(line_of("fsa 2 0\nfinal x\n") == 2);
  CHECK(line_of("fsa 2 2\n") == 1);                           // start out of range
  CHECK(line_of("fsa 2\n") == 1);
  CHECK(line_of("# nothing\n") == 0);                         // missing header

  try {
    etr::parse_fsa("fsa 2 0\narc 0 5 a\n", "m.fsa");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()) == "m.fsa:2: dangling state reference 5");
  }
}

TEST_CASE("machine statistics") {
  SUBCASE("figure 7") {
    const auto words = figure7();
    const auto stats = etr::compute_stats(etr::build_trie(words), std::span<const Word>(words));
    CHECK(*stats.word_count == 7);
    CHECK(*stats.max_word_length == 10);
    CHECK(stats.final_count == 7);
    CHECK(stats.average_fan_out ==
          doctest::Approx(static_cast<double>(stats.arc_count) / stats.state_count));
  }
  SUBCASE("single word") {
    const auto words = u32_list({"ab"});
    const auto stats = etr::compute_stats(etr::build_trie(words), std::span<const Word>(words));
    CHECK(stats.state_count == 3);
    CHECK(stats.arc_count == 2);
    CHECK(stats.average_fan_out == doctest::Approx(2.0 / 3.0));
    CHECK(*stats.average_word_length == doctest::Approx(2.0));
  }
  SUBCASE("no word list") {
    const auto stats = etr::compute_stats(etr::build_trie(figure7()));
    CHECK_FALSE(stats.word_count);
    CHECK_FALSE(stats.average_word_length);
  }
}
