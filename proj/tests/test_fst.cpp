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

#include <random>
#include <set>

#include "doctest.h"
#include "etr/fst.hpp"
#include "oracle.hpp"

using etr::FormatError;
using etr::Fsa;
using etr::Fst;
using etr::Word;
using etr::oracle::Analysis;
using etr::oracle::u32;
using etr::oracle::u32_list;

namespace {

const std::string kData = ETR_TEST_DATA;

std::set<Word> surfaces(const std::set<Analysis>& analyses) {
  std::set<Word> out;
  for (const auto& [surface, gloss] : analyses) out.insert(surface);
  return out;
}

std::string load_error(const std::string& text) {
  try {
    etr::parse_fst(text, "t.fst");
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

Fsa random_nfa(std::mt19937& rng, int states, int arcs) {
  etr::FsaBuilder b(states);
  b.set_start(0);
  for (int s = 0; s < states; ++s) {
    if (rng() % 3 == 0) b.set_final(s);
  }
  for (int k = 0; k < arcs; ++k) {
    b.add_arc(rng() % states, U'a' + static_cast<char32_t>(rng() % 3), rng() % states);
  }
  return std::move(b).build();
}

}  // namespace

TEST_CASE("chain transducer loads") {
  const Fst fst = etr::read_fst_file(kData + "/chain.fst");
  CHECK(fst.num_states() == 4);
  CHECK(fst.num_arcs() == 3);
  const auto analyses = etr::oracle::enumerate_analyses(fst, 8);
  REQUIRE(analyses.size() == 1);
  CHECK(analyses.begin()->first == u32("ab"));
  CHECK(analyses.begin()->second == std::vector<std::string>{"a", "b", "+N"});
}

TEST_CASE("null:null arcs are rejected") {
  CHECK(load_error("fst 2 0\narc 0 1 0:0\n") == "t.fst:2: null:null arc");
}

TEST_CASE("null-surface cycles are rejected") {
  CHECK(load_error("fst 3 0\nfinal 2\narc 0 1 a:a\narc 1 2 \"+X\":0\narc 2 1 \"+Y\":0\n") ==
        "t.fst: null-surface cycle through states {1, 2}");
  CHECK(load_error("fst 1 0\narc 0 0 x:0\n") == "t.fst: null-surface cycle through states {0}");
  // A cycle that consumes surface symbols is fine.
  CHECK(load_error("fst 2 0\narc 0 1 \"+X\":0\narc 1 0 a:a\n").empty());
}

TEST_CASE("fst format errors") {
  CHECK(load_error("fst 2 0\narc 0 1 ab\n") ==
        "t.fst:2: malformed lexical side; expected <lexical>:<surface>");
  CHECK(load_error("fst 2 0\narc 0 1 a:bc\n") == "t.fst:2: malformed surface side");
  CHECK(load_error("fst 2 0\narc 0 1 a:\"bc\"\n") ==
        "t.fst:2: surface side must be a single Unicode scalar");
  CHECK(load_error("fst 2 0\narc 0 1 \"\":a\n") ==
        "t.fst:2: malformed lexical side; expected <lexical>:<surface>");
  CHECK(load_error("fst 2 0\narc 0 3 a:a\n") == "t.fst:2: dangling state reference 3");
  CHECK(load_error("fst 2 0\nfst 2 0\n") == "t.fst:2: duplicate header");
  CHECK(load_error("fsa 2 0\n") == "t.fst:1: malformed line");
}

TEST_CASE("quoted lexical tokens") {
  const Fst fst = etr::parse_fst(
      "fst 3 0\nfinal 2\narc 0 1 \"(CAT NOUN)\":e\narc 1 2 \"say \\\"hi\\\"\":\"0\"\n");
  const auto analyses = etr::oracle::enumerate_analyses(fst, 4);
  REQUIRE(analyses.size() == 1);
  CHECK(analyses.begin()->first == u32("e0"));
  CHECK(analyses.begin()->second == std::vector<std::string>{"(CAT NOUN)", "say \"hi\""});
  const std::string saved = etr::format_fst(fst);
  CHECK(etr::format_fst(etr::parse_fst(saved)) == saved);
  CHECK(etr::oracle::enumerate_analyses(etr::parse_fst(saved), 4) == analyses);
}

TEST_CASE("surface projection") {
  SUBCASE("chain") {
    const Fsa fsa = etr::project_surface(etr::read_fst_file(kData + "/chain.fst"));
    CHECK(etr::oracle::enumerate_language(fsa, 8) == std::set<Word>{u32("ab")});
  }
  SUBCASE("noun with plural") {
    const Fsa fsa = etr::project_surface(etr::read_fst_file(kData + "/noun.fst"));
    CHECK(etr::oracle::enumerate_language(fsa, 8) == std::set<Word>{u32("ab"), u32("abs")});
  }
  SUBCASE("no null symbols copies arcs") {
    const Fst fst = etr::parse_fst("fst 3 0\nfinal 2\narc 0 1 x:a\narc 1 2 \"+Y\":b\narc 1 1 c:c\n");
    const Fsa fsa = etr::project_surface(fst);
    CHECK(etr::format_fsa(fsa) == "fsa 3 0\nfinal 2\narc 0 1 a\narc 1 2 b\narc 1 1 c\n");
    CHECK(fsa.num_arcs() == fst.num_arcs());
  }
  SUBCASE("circular lexicon") {
    const Fst fst = etr::read_fst_file(kData + "/eva.fst");
    const Fsa fsa = etr::project_surface(fst);
    const auto language = etr::oracle::enumerate_language(fsa, 8);
    CHECK(language == surfaces(etr::oracle::enumerate_analyses(fst, 8)));
    CHECK(language.count(u32("ev")));
    CHECK(language.count(u32("evi")));
    CHECK(language.count(u32("evkiev")) == 0);
    CHECK(language.count(u32("evkie")));
  }
}

TEST_CASE("projection of an embedded recognizer keeps its language") {
  std::mt19937 rng(5);
  std::vector<Fsa> machines;
  machines.push_back(etr::read_fsa_file(kData + "/figure5.fsa"));
  machines.push_back(etr::build_trie(u32_list({"abacus", "abacuses", "access"})));
  for (int k = 0; k < 40; ++k) machines.push_back(random_nfa(rng, 1 + rng() % 6, rng() % 12));
  for (const Fsa& fsa : machines) {
    const Fst fst = etr::embed_identity(fsa);
    CHECK(fst.num_arcs() == fsa.num_arcs());
    CHECK(etr::oracle::enumerate_language(etr::project_surface(fst), 8) ==
          etr::oracle::enumerate_language(fsa, 8));
  }
}

TEST_CASE("transducer statistics") {
  const auto stats = etr::compute_stats(etr::read_fst_file(kData + "/eva.fst"));
  CHECK(stats.state_count == 11);
  CHECK(stats.arc_count == 15);
  CHECK(stats.null_surface_arcs == 5);
  CHECK(stats.null_lexical_arcs == 1);
  CHECK(stats.final_count == 1);
}
