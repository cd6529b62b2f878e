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

#ifndef ETR_EVALBENCH_HPP_
#define ETR_EVALBENCH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "etr/fsa.hpp"
#include "etr/text.hpp"

namespace etr {

class PerturbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sorted set of symbols used by the words.
std::vector<Symbol> alphabet_of(std::span<const Word> words);

// Returns a string at edit distance exactly k from `word`, produced by k
// random insertions, deletions, replacements and adjacent transpositions.
// Inserted and replacement symbols come from `alphabet` (the word's own
// symbols if empty). Operations can cancel, so attempts whose true distance
// is not k are discarded and retried; PerturbError is thrown after
// `max_attempts`. Deterministic for a given seed.
Word perturb(WordView word, int k, std::span<const Symbol> alphabet,
             std::uint64_t seed, int max_attempts = 1000);

struct OracleHit {
  Word word;
  int distance = 0;

  friend bool operator==(const OracleHit&, const OracleHit&) = default;
};

// Linear scan: every unique word within distance t of x, ordered by
// (distance, word).
std::vector<OracleHit> oracle_candidates(std::span<const Word> words, WordView x, int t);

struct BenchConfig {
  int threshold = 1;
  std::size_t sample_count = 1000;
  std::uint64_t seed = 1;
  std::string list_id = "words";
  // Compare every candidate set with oracle_candidates.
  bool audit = false;
};

// One row in the layout of the correction tables: averages over `queries`.
struct BenchRow {
  std::string label;
  std::size_t queries = 0;
  double avg_query_length = 0.0;
  double avg_correction_ms = 0.0;
  // Over the queries that produced at least one candidate.
  double avg_first_ms = 0.0;
  double avg_solutions = 0.0;
  double avg_percent_searched = 0.0;
};

struct BenchReport {
  enum class Kind { kThreshold, kMixed };

  Kind kind = Kind::kThreshold;
  BenchConfig config;
  int max_threshold = 0;  // mixed runs only
  FsaStats machine;
  std::vector<BenchRow> rows;
  // Mixed runs: queries per resolving threshold (-1 = unresolved) and per
  // true distance to the intended word.
  std::map<int, std::size_t> resolved_at;
  std::map<int, std::size_t> true_distance;
  std::size_t audit_checked = 0;
  std::size_t audit_mismatches = 0;
};

// Samples config.sample_count distinct words, perturbs each at distance
// config.threshold, and searches at that threshold. Throws
// std::invalid_argument when more samples than unique words are requested.
BenchReport run_benchmark(const Fsa& fsa, std::span<const Word> words,
                          const BenchConfig& config);

struct MixedQuery {
  Word misspelled;
  Word intended;
};

// distance_weights[d] is the relative frequency of queries at true distance
// d (d = 0 leaves the word intact).
std::vector<MixedQuery> make_mixed_queries(std::span<const Word> words,
                                           std::span<const double> distance_weights,
                                           std::size_t count, std::uint64_t seed);

// Runs the escalating corrector on every query. When `audit_words` is
// non-empty and config.audit is set, each resolved query is checked against
// the oracle at its threshold and at the threshold below.
BenchReport run_mixed_benchmark(const Fsa& fsa, std::span<const MixedQuery> queries,
                                int max_threshold, const BenchConfig& config,
                                std::span<const Word> audit_words = {});

enum class ReportFormat { kText, kTsv };

// Timing columns print as "-" when include_timing is false, which makes
// reports from identical inputs byte-identical.
std::string format_report(const BenchReport& report, ReportFormat format,
                          bool include_timing = true);

}  // namespace etr

#endif  // ETR_EVALBENCH_HPP_
