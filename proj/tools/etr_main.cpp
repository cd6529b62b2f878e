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

// etr: command-line front end for error-tolerant lookup.
//
// Exit codes: 0 success (or candidates found), 1 nothing found / audit
// mismatch / word not in language, 2 load or runtime error, 64 usage error.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "etr/evalbench.hpp"
#include "etr/fsa.hpp"
#include "etr/fst.hpp"
#include "etr/search.hpp"
#include "etr/speller.hpp"
#include "etr/text.hpp"

namespace {

constexpr int kFound = 0;
constexpr int kNone = 1;
constexpr int kError = 2;
constexpr int kUsage = 64;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string machine;
  std::string words;
  std::string output;
  std::vector<std::string> queries;
  std::optional<int> threshold;
  int max_threshold = 2;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  int distance = 1;
  std::string format = "text";
  std::vector<double> mixed;
  bool audit = false;
  bool fst = false;
  bool no_timing = false;
};

using Machine = std::variant<etr::Fsa, etr::Fst>;

Machine load_machine(const std::string& path, bool fst) {
  if (fst) return etr::read_fst_file(path);
  return etr::read_fsa_file(path);
}

etr::Word decode_query(const std::string& s) {
  auto w = etr::decode_utf8(s);
  if (!w) throw UsageError("query is not valid UTF-8");
  return *std::move(w);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void print_stats(std::ostream& out, const etr::FsaStats& s) {
  out << "states\t" << s.state_count << "\narcs\t" << s.arc_count << "\nfinals\t"
      << s.final_count << "\nfan_out\t" << format_double(s.average_fan_out) << '\n';
  if (s.word_count) out << "words\t" << *s.word_count << '\n';
  if (s.average_word_length) {
    out << "avg_word_length\t" << format_double(*s.average_word_length) << '\n';
  }
  if (s.max_word_length) out << "max_word_length\t" << *s.max_word_length << '\n';
}

void print_stats(std::ostream& out, const etr::FstStats& s) {
  out << "states\t" << s.state_count << "\narcs\t" << s.arc_count << "\nfinals\t"
      << s.final_count << "\nfan_out\t" << format_double(s.average_fan_out)
      << "\nnull_surface_arcs\t" << s.null_surface_arcs << "\nnull_lexical_arcs\t"
      << s.null_lexical_arcs << "\ntokens\t" << s.token_count << '\n';
}

// Runs `each` over the positional queries, or over stdin lines when none
// were given. The prompt only appears on a terminal.
template <typename F>
int for_each_query(const Options& opt, F each) {
  if (!opt.queries.empty()) {
    int status = kFound;
    for (const std::string& q : opt.queries) {
      if (each(decode_query(q)) != kFound) status = kNone;
    }
    return status;
  }
  const bool tty = ::isatty(STDIN_FILENO) != 0;
  std::string line;
  for (;;) {
    if (tty) std::cout << "ENTER WORD > " << std::flush;
    if (!std::getline(std::cin, line)) break;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto w = etr::decode_utf8(line);
    if (!w) {
      std::cerr << "etr: skipping invalid UTF-8 input\n";
      continue;
    }
    each(*w);
  }
  if (tty) std::cout << '\n';
  return kFound;
}

int print_correction(const etr::CorrectionResult& r) {
  std::cout << "Threshold";
  for (const auto& a : r.attempts) std::cout << ' ' << a.threshold << " ...";
  std::cout << '\n';
  for (const auto& c : r.candidates) {
    std::cout << etr::encode_utf8(c.text) << '\t' << c.distance;
    if (c.gloss) std::cout << '\t' << c.gloss_string();
    std::cout << '\n';
  }
  return r.candidates.empty() ? kNone : kFound;
}

// A fixed threshold runs one search; otherwise escalate from 0.
etr::CorrectionResult lookup(const Machine& m, const etr::Word& x, const Options& opt) {
  if (!opt.threshold) {
    return std::visit(
        [&](const auto& machine) {
          if constexpr (std::is_same_v<std::decay_t<decltype(machine)>, etr::Fst>) {
            return etr::analyze(machine, x, opt.max_threshold);
          } else {
            return etr::correct(machine, x, opt.max_threshold);
          }
        },
        m);
  }
  const int t = *opt.threshold;
  const etr::SearchResult found = std::visit(
      [&](const auto& machine) {
        if constexpr (std::is_same_v<std::decay_t<decltype(machine)>, etr::Fst>) {
          return etr::analyze_within(machine, x, t);
        } else {
          return etr::find_all_within(machine, x, t);
        }
      },
      m);
  etr::CorrectionResult r;
  r.query = x;
  if (!found.candidates.empty()) r.used_threshold = t;
  r.candidates = found.candidates;
  r.attempts.push_back({t, found.stats});
  return r;
}

std::string list_id(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

int cmd_build(const Options& opt) {
  const auto words = etr::read_word_list_file(opt.words);
  const etr::Fsa trie = etr::build_trie(words);
  const auto stats = etr::compute_stats(trie, std::span<const etr::Word>(words));
  if (opt.output.empty() || opt.output == "-") {
    etr::write_fsa(trie, std::cout);
    print_stats(std::cerr, stats);
    return kFound;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw std::runtime_error(opt.output + ": cannot open for writing");
  etr::write_fsa(trie, out);
  out.close();
  if (!out) throw std::runtime_error(opt.output + ": write failed");
  print_stats(std::cout, stats);
  return kFound;
}

int cmd_stats(const Options& opt) {
  if (opt.fst) {
    print_stats(std::cout, etr::compute_stats(etr::read_fst_file(opt.machine)));
    return kFound;
  }
  const etr::Fsa fsa = etr::read_fsa_file(opt.machine);
  if (opt.words.empty()) {
    print_stats(std::cout, etr::compute_stats(fsa));
  } else {
    const auto words = etr::read_word_list_file(opt.words);
    print_stats(std::cout, etr::compute_stats(fsa, std::span<const etr::Word>(words)));
  }
  return kFound;
}

int cmd_check(const Options& opt) {
  const Machine m = load_machine(opt.machine, opt.fst);
  return for_each_query(opt, [&](const etr::Word& x) {
    const bool in = std::visit([&](const auto& machine) { return etr::check(machine, x); }, m);
    std::cout << etr::encode_utf8(x) << '\t' << (in ? "yes" : "no") << '\n';
    return in ? kFound : kNone;
  });
}

int cmd_correct(const Options& opt, bool transducer) {
  const Machine m = load_machine(opt.machine, transducer);
  return for_each_query(opt, [&](const etr::Word& x) {
    return print_correction(lookup(m, x, opt));
  });
}

int cmd_bench(const Options& opt) {
  const etr::Fsa fsa = etr::read_fsa_file(opt.machine);
  const auto words = etr::read_word_list_file(opt.words);
  etr::BenchConfig config;
  config.threshold = opt.threshold.value_or(1);
  config.sample_count = opt.samples;
  config.seed = opt.seed;
  config.list_id = list_id(opt.words);
  config.audit = opt.audit;
  etr::BenchReport report;
  if (opt.mixed.empty()) {
    if (config.threshold < 1) throw UsageError("bench needs --threshold >= 1");
    report = etr::run_benchmark(fsa, words, config);
  } else {
    const auto queries = etr::make_mixed_queries(words, opt.mixed, opt.samples, opt.seed);
    report = etr::run_mixed_benchmark(fsa, queries, opt.max_threshold, config, words);
  }
  const auto format = opt.format == "tsv" ? etr::ReportFormat::kTsv : etr::ReportFormat::kText;
  std::cout << etr::format_report(report, format, !opt.no_timing);
  return report.audit_mismatches == 0 ? kFound : kNone;
}

int cmd_perturb(const Options& opt) {
  const auto words = etr::read_word_list_file(opt.words);
  std::vector<double> weights(opt.distance + 1, 0.0);
  weights.back() = 1.0;
  for (const auto& q : etr::make_mixed_queries(words, weights, opt.samples, opt.seed)) {
    std::cout << etr::encode_utf8(q.intended) << '\t' << etr::encode_utf8(q.misspelled)
              << '\n';
  }
  return kFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error-tolerant lookup in finite-state recognizers and transducers"};
  app.require_subcommand(1);
  Options opt;

  auto threshold = [&](CLI::App* cmd, const std::string& help) {
    cmd->add_option("-t,--threshold", opt.threshold, help)->check(CLI::NonNegativeNumber);
  };
  auto max_threshold = [&](CLI::App* cmd) {
    cmd->add_option("--max-threshold", opt.max_threshold,
                    "Escalate from 0 up to this threshold")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  };

  auto* build = app.add_subcommand("build", "Build a letter tree from a word list");
  build->add_option("wordlist", opt.words, "One word per line, UTF-8")->required();
  build->add_option("-o,--output", opt.output, "FSA file to write (default: stdout)");

  auto* stats = app.add_subcommand("stats", "Print machine statistics");
  stats->add_option("machine", opt.machine)->required();
  stats->add_option("wordlist", opt.words, "Word list the machine was built from");
  stats->add_flag("--fst", opt.fst, "Machine is a transducer");

  auto* check = app.add_subcommand("check", "Exact membership test");
  check->add_option("machine", opt.machine)->required();
  check->add_option("words", opt.queries, "Words to test (default: read stdin)");
  check->add_flag("--fst", opt.fst, "Machine is a transducer");

  auto* correct = app.add_subcommand("correct", "Spelling correction");
  correct->add_option("machine", opt.machine)->required();
  correct->add_option("query", opt.queries, "Queries (default: read stdin)");
  threshold(correct, "Search at this threshold only");
  max_threshold(correct);
  correct->add_flag("--fst", opt.fst, "Machine is a transducer; print glosses");

  auto* analyze = app.add_subcommand("analyze", "Error-tolerant morphological analysis");
  analyze->add_option("machine", opt.machine, "Transducer file")->required();
  analyze->add_option("query", opt.queries, "Queries (default: read stdin)");
  threshold(analyze, "Search at this threshold only");
  max_threshold(analyze);

  auto* bench = app.add_subcommand("bench", "Run the correction benchmark");
  bench->add_option("machine", opt.machine)->required();
  bench->add_option("wordlist", opt.words)->required();
  threshold(bench, "Perturbation distance and search threshold (default 1)");
  max_threshold(bench);
  bench->add_option("--samples", opt.samples, "Number of queries")->capture_default_str();
  bench->add_option("--seed", opt.seed)->capture_default_str();
  bench->add_option("--format", opt.format)
      ->check(CLI::IsMember({"text", "tsv"}))
      ->capture_default_str();
  bench->add_flag("--audit", opt.audit, "Compare every result with a linear scan");
  bench->add_option("--mixed", opt.mixed,
                    "Weights of true distances 0,1,2,...; escalates up to --max-threshold")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  bench->add_flag("--no-timing", opt.no_timing, "Print '-' for timing columns");

  auto* perturb = app.add_subcommand("perturb", "Print misspelled samples");
  perturb->add_option("wordlist", opt.words)->required();
  perturb->add_option("-k,--distance", opt.distance, "Edit distance of each sample")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  perturb->add_option("--samples", opt.samples)->capture_default_str();
  perturb->add_option("--seed", opt.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*build) return cmd_build(opt);
    if (*stats) return cmd_stats(opt);
    if (*check) return cmd_check(opt);
    if (*correct) return cmd_correct(opt, opt.fst);
    if (*analyze) return cmd_correct(opt, true);
    if (*bench) return cmd_bench(opt);
    if (*perturb) return cmd_perturb(opt);
  } catch (const UsageError& e) {
    std::cerr << "etr: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "etr: " << e.what() << '\n';
    return kError;
  }
  return kUsage;
}
