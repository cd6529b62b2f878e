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

#ifndef ETR_SEARCH_HPP_
#define ETR_SEARCH_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etr/distance.hpp"
#include "etr/fsa.hpp"
#include "etr/fst.hpp"
#include "etr/text.hpp"

namespace etr {

// One element of the candidate set: a string of the machine's language
// within the threshold of the query, and its gloss when produced by a
// transducer.
struct Candidate {
  Word text;
  int distance = 0;
  std::optional<std::vector<std::string>> gloss;

  // Lexical tokens concatenated; empty when there is no gloss.
  std::string gloss_string() const;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Results order: distance, then text, then gloss.
bool candidate_less(const Candidate& a, const Candidate& b);

struct SearchStats {
  // Arcs followed forward, each counted once per traversal.
  std::uint64_t arcs_traversed = 0;
  std::uint64_t total_arcs = 0;
  std::size_t candidate_count = 0;
  std::optional<std::chrono::nanoseconds> time_to_first;
  std::chrono::nanoseconds time_to_all{0};

  double fraction_searched() const {
    return total_arcs == 0 ? 0.0
                           : static_cast<double>(arcs_traversed) /
                                 static_cast<double>(total_arcs);
  }
};

struct SearchOptions {
  BandMode band = BandMode::kBanded;
};

struct SearchResult {
  std::vector<Candidate> candidates;
  SearchStats stats;
};

struct FirstResult {
  std::optional<Candidate> candidate;
  SearchStats stats;
};

// All strings of the recognizer's language within edit distance t of x,
// deduplicated and ordered by candidate_less. Throws std::invalid_argument
// for t < 0.
//
// Depth-first walk from the start state with an explicit stack. Each arc
// appends its symbol to the candidate and fills one column of the edit
// matrix; the subtree is abandoned as soon as the cut-off distance exceeds
// t, which also bounds the depth by |x| + t on cyclic machines. A final
// state emits only when the full distance is within t. Outgoing arcs are
// visited in ascending symbol order.
SearchResult find_all_within(const Fsa& fsa, WordView x, int t,
                             const SearchOptions& options = {});

// Same walk, halted at the first emission.
FirstResult find_first_within(const Fsa& fsa, WordView x, int t,
                              const SearchOptions& options = {});

// Transducer variant: the surface side drives the edit matrix and the
// lexical side builds the gloss in tandem. Null-surface arcs extend only the
// gloss and skip the cut-off computation. Results are deduplicated by
// (surface, gloss).
SearchResult analyze_within(const Fst& fst, WordView x, int t,
                            const SearchOptions& options = {});

}  // namespace etr

#endif  // ETR_SEARCH_HPP_
