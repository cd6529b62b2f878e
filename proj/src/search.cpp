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

#include "etr/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace etr {

namespace {

using Clock = std::chrono::steady_clock;

void check_threshold(int t) {
  if (t < 0) throw std::invalid_argument("threshold must be non-negative");
}

// Walks the recognizer; `emit` returns false to stop the search.
template <typename Emit>
void walk_fsa(const Fsa& fsa, EditMatrix& h, SearchStats& stats, Emit&& emit) {
  const int t = h.threshold();
  if (fsa.is_final(fsa.start()) && h.distance() <= t && !emit()) return;

  struct Frame {
    StateId state;
    std::uint32_t next;
  };
  std::vector<Frame> stack;
  stack.reserve(static_cast<std::size_t>(h.query_length() + t + 2));
  stack.push_back({fsa.start(), 0});
  while (!stack.empty()) {
    Frame& top = stack.back();
    const auto arcs = fsa.arcs(top.state);
    if (top.next == arcs.size()) {
      stack.pop_back();
      if (!stack.empty()) h.pop();
      continue;
    }
    const Arc& arc = arcs[top.next++];
    ++stats.arcs_traversed;
    const int cut = h.push(arc.symbol);
    if (fsa.is_final(arc.target) && h.distance() <= t && !emit()) return;
    if (cut <= t) {
      stack.push_back({arc.target, 0});
    } else {
      h.pop();
    }
  }
}

void finish(SearchResult& result, Clock::time_point started) {
  auto& c = result.candidates;
  std::sort(c.begin(), c.end(), candidate_less);
  c.erase(std::unique(c.begin(), c.end()), c.end());
  result.stats.candidate_count = c.size();
  result.stats.time_to_all = Clock::now() - started;
}

}  // namespace

std::string Candidate::gloss_string() const {
  std::string out;
  if (gloss) {
    for (const auto& token : *gloss) out += token;
  }
  return out;
}

bool candidate_less(const Candidate& a, const Candidate& b) {
  return std::tie(a.distance, a.text, a.gloss) < std::tie(b.distance, b.text, b.gloss);
}

SearchResult find_all_within(const Fsa& fsa, WordView x, int t,
                             const SearchOptions& options) {
  check_threshold(t);
  const auto started = Clock::now();
  SearchResult result;
  result.stats.total_arcs = fsa.num_arcs();
  EditMatrix h(x, t, options.band);
  walk_fsa(fsa, h, result.stats, [&] {
    if (!result.stats.time_to_first) result.stats.time_to_first = Clock::now() - started;
    result.candidates.push_back({Word(h.candidate()), h.distance(), std::nullopt});
    return true;
  });
  finish(result, started);
  return result;
}

FirstResult find_first_within(const Fsa& fsa, WordView x, int t,
                              const SearchOptions& options) {
  check_threshold(t);
  const auto started = Clock::now();
  FirstResult result;
  result.stats.total_arcs = fsa.num_arcs();
  EditMatrix h(x, t, options.band);
  walk_fsa(fsa, h, result.stats, [&] {
    result.stats.time_to_first = Clock::now() - started;
    result.candidate = Candidate{Word(h.candidate()), h.distance(), std::nullopt};
    return false;
  });
  result.stats.candidate_count = result.candidate ? 1 : 0;
  result.stats.time_to_all = Clock::now() - started;
  return result;
}

SearchResult analyze_within(const Fst& fst, WordView x, int t,
                            const SearchOptions& options) {
  check_threshold(t);
  const auto started = Clock::now();
  SearchResult result;
  result.stats.total_arcs = fst.num_arcs();
  EditMatrix h(x, t, options.band);
  std::vector<TokenId> gloss;

  auto emit = [&] {
    if (!result.stats.time_to_first) result.stats.time_to_first = Clock::now() - started;
    std::vector<std::string> tokens;
    tokens.reserve(gloss.size());
    for (TokenId id : gloss) tokens.push_back(fst.token(id));
    result.candidates.push_back({Word(h.candidate()), h.distance(), std::move(tokens)});
  };

  if (fst.is_final(fst.start()) && h.distance() <= t) emit();

  struct Frame {
    StateId state;
    std::uint32_t next;
    bool pushed_surface;
    bool pushed_lexical;
  };
  std::vector<Frame> stack;
  stack.push_back({fst.start(), 0, false, false});
  while (!stack.empty()) {
    Frame& top = stack.back();
    const auto arcs = fst.arcs(top.state);
    if (top.next == arcs.size()) {
      if (top.pushed_surface) h.pop();
      if (top.pushed_lexical) gloss.pop_back();
      stack.pop_back();
      continue;
    }
    const FstArc& arc = arcs[top.next++];
    ++result.stats.arcs_traversed;
    const bool surface = !arc.null_surface();
    // A null-surface arc leaves the candidate, and so its cut-off distance,
    // unchanged; the current frame was only pushed because that was <= t.
    const int cut = surface ? h.push(arc.surface) : 0;
    if (cut > t) {
      h.pop();
      continue;
    }
    const bool lexical = !arc.null_lexical();
    if (lexical) gloss.push_back(arc.lexical);
    if (fst.is_final(arc.target) && h.distance() <= t) emit();
    stack.push_back({arc.target, 0, surface, lexical});
  }

  finish(result, started);
  return result;
}

}  // namespace etr
