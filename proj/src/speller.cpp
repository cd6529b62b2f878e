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

#include "etr/speller.hpp"

#include <algorithm>
#include <stdexcept>

namespace etr {

namespace {

void normalize(std::vector<StateId>& states) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
}

template <typename Search>
CorrectionResult escalate(WordView x, int max_threshold, Search&& search) {
  if (max_threshold < 0) throw std::invalid_argument("max threshold must be non-negative");
  CorrectionResult result;
  result.query = Word(x);
  for (int t = 0; t <= max_threshold; ++t) {
    SearchResult found = search(t);
    result.attempts.push_back({t, found.stats});
    if (!found.candidates.empty()) {
      result.used_threshold = t;
      result.candidates = std::move(found.candidates);
      break;
    }
  }
  return result;
}

}  // namespace

bool check(const Fsa& fsa, WordView x) {
  std::vector<StateId> current{fsa.start()};
  std::vector<StateId> next;
  for (Symbol s : x) {
    next.clear();
    for (StateId q : current) {
      const auto arcs = fsa.arcs(q);
      auto [lo, hi] = std::equal_range(
          arcs.begin(), arcs.end(), Arc{s, 0},
          [](const Arc& a, const Arc& b) { return a.symbol < b.symbol; });
      for (auto it = lo; it != hi; ++it) next.push_back(it->target);
    }
    if (next.empty()) return false;
    normalize(next);
    current.swap(next);
  }
  return std::any_of(current.begin(), current.end(),
                     [&](StateId q) { return fsa.is_final(q); });
}

bool check(const Fst& fst, WordView x) {
  std::vector<StateId> current{fst.start()};
  std::vector<StateId> next;
  auto close = [&](std::vector<StateId>& states) {
    for (std::size_t k = 0; k < states.size(); ++k) {
      for (const FstArc& a : fst.arcs(states[k])) {
        if (a.null_surface() &&
            std::find(states.begin(), states.end(), a.target) == states.end()) {
          states.push_back(a.target);
        }
      }
    }
    normalize(states);
  };
  close(current);
  for (Symbol s : x) {
    next.clear();
    for (StateId q : current) {
      for (const FstArc& a : fst.arcs(q)) {
        if (a.surface == s) next.push_back(a.target);
      }
    }
    if (next.empty()) return false;
    normalize(next);
    close(next);
    current.swap(next);
  }
  return std::any_of(current.begin(), current.end(),
                     [&](StateId q) { return fst.is_final(q); });
}

std::chrono::nanoseconds CorrectionResult::total_time() const {
  std::chrono::nanoseconds total{0};
  for (const auto& a : attempts) total += a.stats.time_to_all;
  return total;
}

std::optional<std::chrono::nanoseconds> CorrectionResult::time_to_first() const {
  std::chrono::nanoseconds before{0};
  for (const auto& a : attempts) {
    if (a.stats.time_to_first) return before + *a.stats.time_to_first;
    before += a.stats.time_to_all;
  }
  return std::nullopt;
}

std::uint64_t CorrectionResult::arcs_traversed() const {
  std::uint64_t total = 0;
  for (const auto& a : attempts) total += a.stats.arcs_traversed;
  return total;
}

CorrectionResult correct(const Fsa& fsa, WordView x, int max_threshold) {
  return escalate(x, max_threshold, [&](int t) { return find_all_within(fsa, x, t); });
}

CorrectionResult analyze(const Fst& fst, WordView x, int max_threshold) {
  return escalate(x, max_threshold, [&](int t) { return analyze_within(fst, x, t); });
}

}  // namespace etr
