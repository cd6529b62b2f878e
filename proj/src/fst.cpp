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

#include "etr/fst.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "tabular.hpp"

namespace etr {

namespace {

// Returns the states of some cycle made only of null-surface arcs, or an
// empty vector.
std::vector<StateId> find_null_surface_cycle(
    std::size_t num_states, const std::vector<std::uint32_t>& offsets,
    const std::vector<FstArc>& arcs) {
  enum : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<std::uint8_t> color(num_states, kWhite);
  struct Frame {
    StateId state;
    std::uint32_t next;
  };
  std::vector<Frame> stack;
  for (StateId root = 0; root < num_states; ++root) {
    if (color[root] != kWhite) continue;
    color[root] = kGrey;
    stack.push_back({root, offsets[root]});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next == offsets[top.state + 1]) {
        color[top.state] = kBlack;
        stack.pop_back();
        continue;
      }
      const FstArc& arc = arcs[top.next++];
      if (!arc.null_surface()) continue;
      if (color[arc.target] == kGrey) {
        std::vector<StateId> cycle;
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
          cycle.push_back(it->state);
          if (it->state == arc.target) break;
        }
        std::sort(cycle.begin(), cycle.end());
        return cycle;
      }
      if (color[arc.target] == kWhite) {
        color[arc.target] = kGrey;
        stack.push_back({arc.target, offsets[arc.target]});
      }
    }
  }
  return {};
}

std::string quote_token(const std::string& token) {
  std::string out = "\"";
  for (char c : token) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Parses one side of a lexical:surface pair starting at `text`. Returns the
// token text (nullopt for the null symbol) and advances `text`.
struct Side {
  std::optional<std::string> token;
  bool quoted = false;
};

std::optional<Side> parse_side(std::string_view& text) {
  Side side;
  if (text.empty()) return std::nullopt;
  if (text[0] == '"') {
    std::string token;
    std::size_t i = 1;
    for (; i < text.size() && text[i] != '"'; ++i) {
      if (text[i] == '\\') {
        if (++i == text.size()) return std::nullopt;
      }
      token.push_back(text[i]);
    }
    if (i == text.size() || token.empty()) return std::nullopt;
    if (!decode_utf8(token)) return std::nullopt;
    text.remove_prefix(i + 1);
    side.token = std::move(token);
    side.quoted = true;
    return side;
  }
  const auto lead = static_cast<unsigned char>(text[0]);
  std::size_t len = lead < 0x80 ? 1 : (lead & 0xE0) == 0xC0 ? 2
                                  : (lead & 0xF0) == 0xE0   ? 3
                                                            : 4;
  if (len > text.size()) return std::nullopt;
  std::string token(text.substr(0, len));
  if (!tabular::parse_scalar(token)) return std::nullopt;
  text.remove_prefix(len);
  if (token != "0") side.token = std::move(token);
  return side;
}

}  // namespace

Fst::Fst() : final_(1, 0), offsets_(2, 0) {}

FstBuilder::FstBuilder(std::size_t num_states) : final_(num_states, 0) {}

StateId FstBuilder::add_state() {
  final_.push_back(0);
  return static_cast<StateId>(final_.size() - 1);
}

void FstBuilder::check_state(StateId s) const {
  if (s >= final_.size()) throw std::out_of_range("FstBuilder: bad state id");
}

void FstBuilder::set_start(StateId s) {
  check_state(s);
  start_ = s;
}

void FstBuilder::set_final(StateId s, bool final) {
  check_state(s);
  final_[s] = final ? 1 : 0;
}

TokenId FstBuilder::intern(std::string_view token) {
  if (token.empty()) throw std::invalid_argument("empty lexical token");
  auto [it, inserted] =
      token_ids_.try_emplace(std::string(token), static_cast<TokenId>(tokens_.size()));
  if (inserted) tokens_.emplace_back(token);
  return it->second;
}

void FstBuilder::add_arc(StateId from, TokenId lexical, Symbol surface, StateId to) {
  check_state(from);
  check_state(to);
  if (lexical == kNullToken && surface == kNullSurface) {
    throw std::invalid_argument("null:null arc");
  }
  if (lexical != kNullToken && lexical >= tokens_.size()) {
    throw std::out_of_range("FstBuilder: bad token id");
  }
  arcs_.push_back({from, FstArc{lexical, surface, to}});
}

void FstBuilder::add_arc(StateId from, std::optional<std::string_view> lexical,
                         Symbol surface, StateId to) {
  add_arc(from, lexical ? intern(*lexical) : kNullToken, surface, to);
}

Fst FstBuilder::build() && {
  if (final_.empty()) return Fst();
  auto key = [](const std::pair<StateId, FstArc>& a) {
    return std::tuple(a.first, a.second.surface, a.second.lexical, a.second.target);
  };
  std::sort(arcs_.begin(), arcs_.end(),
            [&](const auto& a, const auto& b) { return key(a) < key(b); });
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end(),
                          [&](const auto& a, const auto& b) { return key(a) == key(b); }),
              arcs_.end());

  Fst fst;
  fst.start_ = start_;
  fst.final_ = std::move(final_);
  fst.tokens_ = std::move(tokens_);
  fst.offsets_.assign(fst.final_.size() + 1, 0);
  fst.arcs_.reserve(arcs_.size());
  for (const auto& [from, arc] : arcs_) {
    ++fst.offsets_[from + 1];
    fst.arcs_.push_back(arc);
  }
  for (std::size_t s = 1; s < fst.offsets_.size(); ++s) {
    fst.offsets_[s] += fst.offsets_[s - 1];
  }

  auto cycle = find_null_surface_cycle(fst.num_states(), fst.offsets_, fst.arcs_);
  if (!cycle.empty()) {
    std::string msg = "null-surface cycle through states {";
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k > 0) msg += ", ";
      msg += std::to_string(cycle[k]);
    }
    throw std::invalid_argument(msg + "}");
  }
  return fst;
}

Fst read_fst(std::istream& in, const std::string& source) {
  using namespace tabular;
  std::optional<FstBuilder> builder;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) -> FormatError {
    return FormatError(source, lineno, what);
  };
  auto state = [&](std::string_view field) {
    auto id = parse_id(field);
    if (!id) throw fail("malformed state id '" + std::string(field) + "'");
    if (*id >= builder->num_states()) {
      throw fail("dangling state reference " + std::to_string(*id));
    }
    return *id;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::string_view rest = line;
    const std::string_view keyword = next_field(rest);
    if (keyword == "fst") {
      if (builder) throw fail("duplicate header");
      auto count = parse_id(next_field(rest));
      auto start = parse_id(next_field(rest));
      if (!count || !start || !only_space(rest)) throw fail("malformed header");
      if (*start >= *count) throw fail("start state out of range");
      builder.emplace(*count);
      builder->set_start(*start);
    } else if (keyword == "final") {
      if (!builder) throw fail("'final' before 'fst' header");
      const StateId s = state(next_field(rest));
      if (!only_space(rest)) throw fail("malformed final line");
      builder->set_final(s);
    } else if (keyword == "arc") {
      if (!builder) throw fail("'arc' before 'fst' header");
      const StateId src = state(next_field(rest));
      const StateId dst = state(next_field(rest));
      std::string_view pair = rest;
      auto lexical = parse_side(pair);
      if (!lexical || pair.empty() || pair[0] != ':') {
        throw fail("malformed lexical side; expected <lexical>:<surface>");
      }
      pair.remove_prefix(1);
      auto surface = parse_side(pair);
      if (!surface || !only_space(pair)) throw fail("malformed surface side");
      Symbol surface_symbol = kNullSurface;
      if (surface->token) {
        auto scalar = parse_scalar(*surface->token);
        if (!scalar) throw fail("surface side must be a single Unicode scalar");
        surface_symbol = *scalar;
      }
      if (!lexical->token && !surface->token) throw fail("null:null arc");
      builder->add_arc(src, lexical->token ? std::optional<std::string_view>(*lexical->token)
                                           : std::nullopt,
                       surface_symbol, dst);
    } else {
      throw fail("malformed line");
    }
  }
  if (in.bad()) throw FormatError(source, 0, "read error");
  if (!builder) throw FormatError(source, 0, "missing 'fst' header");
  try {
    return std::move(*builder).build();
  } catch (const std::invalid_argument& e) {
    throw FormatError(source, 0, e.what());
  }
}

Fst parse_fst(std::string_view text, const std::string& source) {
  std::istringstream in{std::string(text)};
  return read_fst(in, source);
}

Fst read_fst_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path, 0, "cannot open file");
  return read_fst(in, path);
}

void write_fst(const Fst& fst, std::ostream& out) {
  out << "fst " << fst.num_states() << ' ' << fst.start() << '\n';
  for (StateId s = 0; s < fst.num_states(); ++s) {
    if (fst.is_final(s)) out << "final " << s << '\n';
  }
  for (StateId s = 0; s < fst.num_states(); ++s) {
    for (const FstArc& a : fst.arcs(s)) {
      std::string lexical = "0";
      if (!a.null_lexical()) {
        const std::string& token = fst.token(a.lexical);
        auto decoded = decode_utf8(token);
        const bool bare = decoded && decoded->size() == 1 && token != "0" &&
                          token != "\"" && token != " " && token != "\t";
        lexical = bare ? token : quote_token(token);
      }
      std::string surface = "0";
      if (!a.null_surface()) {
        surface = to_utf8(a.surface);
        if (surface == "0" || surface == "\"" || surface == " " || surface == "\t") {
          surface = quote_token(surface);
        }
      }
      out << "arc " << s << ' ' << a.target << ' ' << lexical << ':' << surface << '\n';
    }
  }
}

std::string format_fst(const Fst& fst) {
  std::ostringstream out;
  write_fst(fst, out);
  return out.str();
}

Fsa project_surface(const Fst& fst) {
  const std::size_t n = fst.num_states();
  FsaBuilder builder(n);
  builder.set_start(fst.start());
  std::vector<StateId> closure;
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t epoch = 0;
  for (StateId q = 0; q < n; ++q) {
    ++epoch;
    closure.assign(1, q);
    seen[q] = epoch;
    for (std::size_t k = 0; k < closure.size(); ++k) {
      for (const FstArc& a : fst.arcs(closure[k])) {
        if (a.null_surface() && seen[a.target] != epoch) {
          seen[a.target] = epoch;
          closure.push_back(a.target);
        }
      }
    }
    for (StateId p : closure) {
      if (fst.is_final(p)) builder.set_final(q);
      for (const FstArc& a : fst.arcs(p)) {
        if (!a.null_surface()) builder.add_arc(q, a.surface, a.target);
      }
    }
  }
  return std::move(builder).build();
}

Fst embed_identity(const Fsa& fsa) {
  FstBuilder builder(fsa.num_states());
  builder.set_start(fsa.start());
  for (StateId s = 0; s < fsa.num_states(); ++s) {
    if (fsa.is_final(s)) builder.set_final(s);
    for (const Arc& a : fsa.arcs(s)) {
      builder.add_arc(s, builder.intern(to_utf8(a.symbol)), a.symbol, a.target);
    }
  }
  return std::move(builder).build();
}

FstStats compute_stats(const Fst& fst) {
  FstStats stats;
  stats.state_count = fst.num_states();
  stats.arc_count = fst.num_arcs();
  stats.token_count = fst.num_tokens();
  for (StateId s = 0; s < fst.num_states(); ++s) {
    if (fst.is_final(s)) ++stats.final_count;
    for (const FstArc& a : fst.arcs(s)) {
      if (a.null_surface()) ++stats.null_surface_arcs;
      if (a.null_lexical()) ++stats.null_lexical_arcs;
    }
  }
  stats.average_fan_out = stats.state_count == 0
                              ? 0.0
                              : static_cast<double>(stats.arc_count) /
                                    static_cast<double>(stats.state_count);
  return stats;
}

}  // namespace etr
