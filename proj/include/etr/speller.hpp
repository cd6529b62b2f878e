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

#ifndef ETR_SPELLER_HPP_
#define ETR_SPELLER_HPP_

#include <optional>
#include <vector>

#include "etr/fsa.hpp"
#include "etr/fst.hpp"
#include "etr/search.hpp"
#include "etr/text.hpp"

namespace etr {

// Exact membership by direct traversal, no edit matrix.
bool check(const Fsa& fsa, WordView x);
// True when x is a surface form of the transducer.
bool check(const Fst& fst, WordView x);

struct ThresholdAttempt {
  int threshold = 0;
  SearchStats stats;
};

struct CorrectionResult {
  Word query;
  // Smallest threshold that produced candidates.
  std::optional<int> used_threshold;
  std::vector<Candidate> candidates;
  // One entry per threshold tried, in order.
  std::vector<ThresholdAttempt> attempts;

  std::chrono::nanoseconds total_time() const;
  std::optional<std::chrono::nanoseconds> time_to_first() const;
  std::uint64_t arcs_traversed() const;
};

// Tries t = 0, 1, ..., max_threshold and stops at the first non-empty
// candidate set. Each threshold is a fresh search.
CorrectionResult correct(const Fsa& fsa, WordView x, int max_threshold);
// Transducer variant; candidates carry glosses.
CorrectionResult analyze(const Fst& fst, WordView x, int max_threshold);

}  // namespace etr

#endif  // ETR_SPELLER_HPP_
