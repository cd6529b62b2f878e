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

#ifndef ETR_FST_HPP_
#define ETR_FST_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "etr/fsa.hpp"
#include "etr/text.hpp"

namespace etr {

using TokenId = std::uint32_t;

// Null on the surface side; outside the Unicode scalar range.
inline constexpr Symbol kNullSurface = static_cast<Symbol>(0xFFFFFFFFu);
// Null on the lexical side.
inline constexpr TokenId kNullToken = 0xFFFFFFFFu;

struct FstArc {
  TokenId lexical;  // index into Fst::token(), or kNullToken
  Symbol surface;   // or kNullSurface
  StateId target;

  bool null_surface() const { return surface == kNullSurface; }
  bool null_lexical() const { return lexical == kNullToken; }
};

// Transducer over lexical:surface pairs. Lexical symbols are interned
// tokens of any length ("+N", "(CAT NOUN)"); surface symbols are single
// scalars. At most one side of an arc is null, and no cycle consists only
// of null-surface arcs, so every surface string has finitely many glosses.
// Arcs of a state are sorted by surface symbol with null-surface arcs last.
class Fst {
 public:
  Fst();

  std::size_t num_states() const { return final_.size(); }
  std::size_t num_arcs() const { return arcs_.size(); }
  StateId start() const { return start_; }
  bool is_final(StateId s) const { return final_[s] != 0; }
  std::span<const FstArc> arcs(StateId s) const {
    return {arcs_.data() + offsets_[s], arcs_.data() + offsets_[s + 1]};
  }
  const std::string& token(TokenId id) const { return tokens_[id]; }
  std::size_t num_tokens() const { return tokens_.size(); }

 private:
  friend class FstBuilder;

  StateId start_ = 0;
  std::vector<std::uint8_t> final_;
  std::vector<std::uint32_t> offsets_;
  std::vector<FstArc> arcs_;
  std::vector<std::string> tokens_;
};

class FstBuilder {
 public:
  explicit FstBuilder(std::size_t num_states = 0);

  StateId add_state();
  std::size_t num_states() const { return final_.size(); }
  void set_start(StateId s);
  void set_final(StateId s, bool final = true);
  TokenId intern(std::string_view token);
  // Throws std::invalid_argument when both sides are null.
  void add_arc(StateId from, TokenId lexical, Symbol surface, StateId to);
  void add_arc(StateId from, std::optional<std::string_view> lexical,
               Symbol surface, StateId to);
  // Throws std::invalid_argument naming the states of a null-surface cycle.
  Fst build() &&;

 private:
  void check_state(StateId s) const;

  StateId start_ = 0;
  std::vector<std::uint8_t> final_;
  std::vector<std::pair<StateId, FstArc>> arcs_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> token_ids_;
};

// Tabular text format:
//   fst <state_count> <start_id>
//   final <id>
//   arc <src> <dst> <lexical>:<surface>
// Each side is one Unicode scalar, a double-quoted token ("+N", with \" and
// \\ escapes), or the literal 0 for null. Only a single scalar may be
// quoted on the surface side, which is how a literal '0' is written.
Fst read_fst(std::istream& in, const std::string& source = "<fst>");
Fst parse_fst(std::string_view text, const std::string& source = "<fst>");
Fst read_fst_file(const std::string& path);
void write_fst(const Fst& fst, std::ostream& out);
std::string format_fst(const Fst& fst);

// Recognizer for the surface language. Null-surface arcs are removed by
// epsilon closure; state ids are kept and the result may be
// nondeterministic.
Fsa project_surface(const Fst& fst);

// Identity transducer a:a for every arc of the recognizer.
Fst embed_identity(const Fsa& fsa);

struct FstStats {
  std::size_t state_count = 0;
  std::size_t arc_count = 0;
  std::size_t final_count = 0;
  std::size_t null_surface_arcs = 0;
  std::size_t null_lexical_arcs = 0;
  std::size_t token_count = 0;
  double average_fan_out = 0.0;
};

FstStats compute_stats(const Fst& fst);

}  // namespace etr

#endif  // ETR_FST_HPP_
