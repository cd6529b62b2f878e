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

#include "etr/evalbench.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include "etr/distance.hpp"
#include "etr/search.hpp"
#include "etr/speller.hpp"

namespace etr {

namespace {

using Rng = std::mt19937_64;

// Plain modulo keeps the stream identical across standard libraries, which
// std::uniform_int_distribution does not promise.
std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

double to_ms(std::chrono::nanoseconds d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

enum class Op { kInsert, kDelete, kReplace, kTranspose };

bool apply_random_op(Word& w, std::span<const Symbol> alphabet, Rng& rng) {
  Op ops[4];
  std::size_t n = 0;
  ops[n++] = Op::kInsert;
  if (w.size() >= 2) ops[n++] = Op::kDelete;
  if (!w.empty() && alphabet.size() >= 2) ops[n++] = Op::kReplace;
  if (w.size() >= 2) ops[n++] = Op::kTranspose;
  switch (ops[pick(rng, n)]) {
    case Op::kInsert:
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(pick(rng, w.size() + 1)),
               alphabet[pick(rng, alphabet.size())]);
      return true;
    case Op::kDelete:
      w.erase(pick(rng, w.size()), 1);
      return true;
    case Op::kReplace: {
      const std::size_t pos = pick(rng, w.size());
      Symbol s;
      do {
        s = alphabet[pick(rng, alphabet.size())];
      } while (s == w[pos]);
      w[pos] = s;
      return true;
    }
    case Op::kTranspose: {
      const std::size_t pos = pick(rng, w.size() - 1);
      if (w[pos] == w[pos + 1]) return false;
      std::swap(w[pos], w[pos + 1]);
      return true;
    }
  }
  return false;
}

struct RowAccumulator {
  std::size_t queries = 0;
  std::size_t with_first = 0;
  double length = 0, correction = 0, first = 0, solutions = 0, percent = 0;

  void add(std::size_t query_length, std::chrono::nanoseconds all,
           std::optional<std::chrono::nanoseconds> first_time, std::size_t found,
           double fraction) {
    ++queries;
    length += static_cast<double>(query_length);
    correction += to_ms(all);
    if (first_time) {
      ++with_first;
      first += to_ms(*first_time);
    }
    solutions += static_cast<double>(found);
    percent += fraction * 100.0;
  }

  BenchRow row(std::string label) const {
    BenchRow r;
    r.label = std::move(label);
    r.queries = queries;
    if (queries == 0) return r;
    const auto q = static_cast<double>(queries);
    r.avg_query_length = length / q;
    r.avg_correction_ms = correction / q;
    r.avg_first_ms = with_first == 0 ? 0.0 : first / static_cast<double>(with_first);
    r.avg_solutions = solutions / q;
    r.avg_percent_searched = percent / q;
    return r;
  }
};

bool same_set(const std::vector<Candidate>& found, const std::vector<OracleHit>& expected) {
  if (found.size() != expected.size()) return false;
  for (std::size_t k = 0; k < found.size(); ++k) {
    if (found[k].text != expected[k].word || found[k].distance != expected[k].distance) {
      return false;
    }
  }
  return true;
}

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

std::vector<Symbol> alphabet_of(std::span<const Word> words) {
  std::vector<Symbol> symbols;
  for (const Word& w : words) symbols.insert(symbols.end(), w.begin(), w.end());
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  return symbols;
}

Word perturb(WordView word, int k, std::span<const Symbol> alphabet, std::uint64_t seed,
             int max_attempts) {
  if (k < 1) throw std::invalid_argument("perturbation distance must be >= 1");
  if (word.empty()) throw std::invalid_argument("cannot perturb an empty word");
  std::vector<Symbol> own;
  if (alphabet.empty()) {
    const Word copy(word);
    own = alphabet_of(std::span<const Word>(&copy, 1));
    alphabet = own;
  }
  Rng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Word w(word);
    int applied = 0;
    for (int guard = 0; applied < k && guard < 8 * k; ++guard) {
      if (apply_random_op(w, alphabet, rng)) ++applied;
    }
    if (applied == k && edit_distance(word, w) == k) return w;
  }
  throw PerturbError("unperturbable: no string at distance " + std::to_string(k) +
                     " from '" + encode_utf8(word) + "' after " +
                     std::to_string(max_attempts) + " attempts");
}

std::vector<OracleHit> oracle_candidates(std::span<const Word> words, WordView x, int t) {
  std::vector<OracleHit> hits;
  for (const Word& w : words) {
    const int d = edit_distance(x, w);
    if (d <= t) hits.push_back({w, d});
  }
  std::sort(hits.begin(), hits.end(), [](const OracleHit& a, const OracleHit& b) {
    return std::tie(a.distance, a.word) < std::tie(b.distance, b.word);
  });
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

BenchReport run_benchmark(const Fsa& fsa, std::span<const Word> words,
                          const BenchConfig& config) {
  const std::vector<Word> dict = unique_words(words);
  if (config.sample_count > dict.size()) {
    throw std::invalid_argument("sample count exceeds the number of unique words");
  }
  if (config.threshold < 1) throw std::invalid_argument("benchmark threshold must be >= 1");
  BenchReport report;
  report.kind = BenchReport::Kind::kThreshold;
  report.config = config;
  report.machine = compute_stats(fsa, std::span<const Word>(dict));
  if (config.sample_count == 0) return report;

  const std::vector<Symbol> alphabet = alphabet_of(dict);
  Rng rng(config.seed);
  std::vector<std::size_t> index(dict.size());
  std::iota(index.begin(), index.end(), std::size_t{0});
  RowAccumulator acc;
  for (std::size_t k = 0; k < config.sample_count; ++k) {
    std::swap(index[k], index[k + pick(rng, dict.size() - k)]);
    const Word& source = dict[index[k]];
    const Word query = perturb(source, config.threshold, alphabet, rng());
    const SearchResult found = find_all_within(fsa, query, config.threshold);
    acc.add(query.size(), found.stats.time_to_all, found.stats.time_to_first,
            found.candidates.size(), found.stats.fraction_searched());
    if (config.audit) {
      ++report.audit_checked;
      if (!same_set(found.candidates, oracle_candidates(dict, query, config.threshold))) {
        ++report.audit_mismatches;
      }
    }
  }
  report.rows.push_back(acc.row("t=" + std::to_string(config.threshold)));
  return report;
}

std::vector<MixedQuery> make_mixed_queries(std::span<const Word> words,
                                           std::span<const double> distance_weights,
                                           std::size_t count, std::uint64_t seed) {
  const std::vector<Word> dict = unique_words(words);
  std::vector<MixedQuery> queries;
  if (count == 0 || dict.empty()) return queries;
  const double total =
      std::accumulate(distance_weights.begin(), distance_weights.end(), 0.0);
  if (distance_weights.empty() || !(total > 0.0)) {
    throw std::invalid_argument("distance weights must have a positive sum");
  }
  const std::vector<Symbol> alphabet = alphabet_of(dict);
  Rng rng(seed);
  queries.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const Word& source = dict[pick(rng, dict.size())];
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    std::size_t d = 0;
    double acc = distance_weights[0];
    while (u >= acc && d + 1 < distance_weights.size()) acc += distance_weights[++d];
    const std::uint64_t perturb_seed = rng();
    Word misspelled = d == 0 ? source
                             : perturb(source, static_cast<int>(d), alphabet, perturb_seed);
    queries.push_back({std::move(misspelled), source});
  }
  return queries;
}

BenchReport run_mixed_benchmark(const Fsa& fsa, std::span<const MixedQuery> queries,
                                int max_threshold, const BenchConfig& config,
                                std::span<const Word> audit_words) {
  BenchReport report;
  report.kind = BenchReport::Kind::kMixed;
  report.config = config;
  report.config.sample_count = queries.size();
  report.max_threshold = max_threshold;
  report.machine = compute_stats(fsa);
  const std::vector<Word> dict = unique_words(audit_words);
  if (!dict.empty()) report.machine = compute_stats(fsa, std::span<const Word>(dict));

  RowAccumulator acc;
  for (const MixedQuery& q : queries) {
    const CorrectionResult r = correct(fsa, q.misspelled, max_threshold);
    const double fraction = fsa.num_arcs() == 0
                                ? 0.0
                                : static_cast<double>(r.arcs_traversed()) /
                                      static_cast<double>(fsa.num_arcs());
    acc.add(q.misspelled.size(), r.total_time(), r.time_to_first(), r.candidates.size(),
            fraction);
    ++report.resolved_at[r.used_threshold.value_or(-1)];
    ++report.true_distance[edit_distance(q.misspelled, q.intended)];
    if (config.audit && !dict.empty()) {
      ++report.audit_checked;
      bool ok;
      if (r.used_threshold) {
        const int t = *r.used_threshold;
        ok = same_set(r.candidates, oracle_candidates(dict, q.misspelled, t)) &&
             (t == 0 || oracle_candidates(dict, q.misspelled, t - 1).empty());
      } else {
        ok = oracle_candidates(dict, q.misspelled, max_threshold).empty();
      }
      if (!ok) ++report.audit_mismatches;
    }
  }
  report.rows.push_back(acc.row("mixed<=" + std::to_string(max_threshold)));
  return report;
}

std::string format_report(const BenchReport& report, ReportFormat format,
                          bool include_timing) {
  const bool mixed = report.kind == BenchReport::Kind::kMixed;
  const FsaStats& m = report.machine;
  auto timing = [&](double v) { return include_timing ? fixed(v, 4) : std::string("-"); };
  auto opt_count = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string("-");
  };
  std::ostringstream out;

  if (format == ReportFormat::kTsv) {
    out << "config\t" << (mixed ? "mixed" : "threshold") << '\t' << report.config.list_id
        << '\t' << (mixed ? report.max_threshold : report.config.threshold) << '\t'
        << report.config.sample_count << '\t' << report.config.seed << '\n';
    out << "machine\t" << opt_count(m.word_count) << '\t' << m.arc_count << '\t'
        << m.state_count << '\t'
        << (m.average_word_length ? fixed(*m.average_word_length, 2) : "-") << '\t'
        << opt_count(m.max_word_length) << '\t' << fixed(m.average_fan_out, 2) << '\n';
    for (const BenchRow& r : report.rows) {
      out << "row\t" << r.label << '\t' << r.queries << '\t' << fixed(r.avg_query_length, 2)
          << '\t' << timing(r.avg_correction_ms) << '\t' << timing(r.avg_first_ms) << '\t'
          << fixed(r.avg_solutions, 2) << '\t' << fixed(r.avg_percent_searched, 4) << '\n';
    }
    for (const auto& [t, n] : report.resolved_at) {
      out << "resolved\t" << t << '\t' << n << '\n';
    }
    for (const auto& [d, n] : report.true_distance) {
      out << "distance\t" << d << '\t' << n << '\n';
    }
    if (report.config.audit) {
      out << "audit\t" << report.audit_checked << '\t' << report.audit_mismatches << '\n';
    }
    return out.str();
  }

  char line[256];
  out << "Machine (" << report.config.list_id << ")\n";
  std::snprintf(line, sizeof line, "  %-10s %-10s %-10s %-12s %-12s %-8s\n", "Words", "Arcs",
                "States", "AvgWordLen", "MaxWordLen", "FanOut");
  out << line;
  std::snprintf(line, sizeof line, "  %-10s %-10zu %-10zu %-12s %-12s %-8s\n",
                opt_count(m.word_count).c_str(), m.arc_count, m.state_count,
                m.average_word_length ? fixed(*m.average_word_length, 2).c_str() : "-",
                opt_count(m.max_word_length).c_str(), fixed(m.average_fan_out, 2).c_str());
  out << line;
  if (mixed) {
    out << "Mixed correction, thresholds 0.." << report.max_threshold << ", "
        << report.config.sample_count << " queries, seed " << report.config.seed << '\n';
  } else {
    out << "Correction at threshold " << report.config.threshold << ", "
        << report.config.sample_count << " samples, seed " << report.config.seed << '\n';
  }
  std::snprintf(line, sizeof line, "  %-10s %8s %10s %14s %12s %10s %10s\n", "Run", "Queries",
                "AvgLen", "Correct(ms)", "First(ms)", "Solutions", "%Space");
  out << line;
  for (const BenchRow& r : report.rows) {
    std::snprintf(line, sizeof line, "  %-10s %8zu %10s %14s %12s %10s %10s\n",
                  r.label.c_str(), r.queries, fixed(r.avg_query_length, 2).c_str(),
                  timing(r.avg_correction_ms).c_str(), timing(r.avg_first_ms).c_str(),
                  fixed(r.avg_solutions, 2).c_str(), fixed(r.avg_percent_searched, 4).c_str());
    out << line;
  }
  if (mixed) {
    out << "Resolved at threshold:";
    for (const auto& [t, n] : report.resolved_at) {
      out << ' ' << (t < 0 ? std::string("none") : std::to_string(t)) << '=' << n;
    }
    out << "\nTrue distance to intended word:";
    for (const auto& [d, n] : report.true_distance) out << ' ' << d << '=' << n;
    out << '\n';
  }
  out << "Candidate counts are deduplicated by string.\n";
  if (report.config.audit) {
    out << "Audit: " << report.audit_checked << " checked, " << report.audit_mismatches
        << " mismatches\n";
  }
  return out.str();
}

}  // namespace etr
