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

#ifndef ETR_FSA_HPP_
#define ETR_FSA_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "etr/text.hpp"

namespace etr {

using StateId = std::uint32_t;

struct Arc {
  Symbol symbol;
  StateId target;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Finite-state recognizer. States are 0..num_states()-1; arcs live in one
// flat array with each state's arcs contiguous and sorted by (symbol,
// target). Cycles and nondeterminism (several arcs with one symbol) are
// both allowed. Immutable once built.
class Fsa {
 public:
  // The empty language: a single non-final start state.
  Fsa();

  std::size_t num_states() const { return final_.size(); }
  std::size_t num_arcs() const { return arcs_.size(); }
  StateId start() const { return start_; }
  bool is_final(StateId s) const { return final_[s] != 0; }
  std::span<const Arc> arcs(StateId s) const {
    return {arcs_.data() + offsets_[s], arcs_.data() + offsets_[s + 1]};
  }
  // True when no state has two arcs with the same symbol.
  bool is_deterministic() const;

 private:
  friend class FsaBuilder;

  StateId start_ = 0;
  std::vector<std::uint8_t> final_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Arc> arcs_;
};

class FsaBuilder {
 public:
  explicit FsaBuilder(std::size_t num_states = 0);

  StateId add_state();
  std::size_t num_states() const { return final_.size(); }
  void set_start(StateId s);
  void set_final(StateId s, bool final = true);
  void add_arc(StateId from, Symbol symbol, StateId to);
  // Identical (from, symbol, to) triples are merged.
  Fsa build() &&;

 private:
  struct PendingArc {
    StateId from;
    Symbol symbol;
    StateId to;
  };
  void check_state(StateId s) const;

  StateId start_ = 0;
  std::vector<std::uint8_t> final_;
  std::vector<PendingArc> arcs_;
};

// Letter tree over the unique words. Words are sorted before insertion and
// states are numbered breadth-first from the start state, so the result is
// a pure function of the word set.
Fsa build_trie(std::span<const Word> words);

// Tabular text format:
//   fsa <state_count> <start_id>
//   final <id>
//   arc <src> <dst> <symbol>
// <symbol> is exactly one Unicode scalar and is everything after the single
// space that follows <dst>. Lines starting with '#' are comments; blank
// lines are ignored.
Fsa read_fsa(std::istream& in, const std::string& source = "<fsa>");
Fsa parse_fsa(std::string_view text, const std::string& source = "<fsa>");
Fsa read_fsa_file(const std::string& path);
void write_fsa(const Fsa& fsa, std::ostream& out);
std::string format_fsa(const Fsa& fsa);

struct FsaStats {
  std::size_t state_count = 0;
  std::size_t arc_count = 0;
  std::size_t final_count = 0;
  double average_fan_out = 0.0;  // arc_count / state_count
  // Present only when the word list the machine was built from is given.
  std::optional<std::size_t> word_count;
  std::optional<double> average_word_length;
  std::optional<std::size_t> max_word_length;
};

FsaStats compute_stats(const Fsa& fsa,
                       std::optional<std::span<const Word>> words = std::nullopt);

// Sorted, deduplicated copy.
std::vector<Word> unique_words(std::span<const Word> words);

}  // namespace etr

#endif  // ETR_FSA_HPP_
