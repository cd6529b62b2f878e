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

#include "etr/fsa.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "tabular.hpp"

namespace etr {

Fsa::Fsa() : final_(1, 0), offsets_(2, 0) {}

bool Fsa::is_deterministic() const {
  for (StateId s = 0; s < num_states(); ++s) {
    auto out = arcs(s);
    for (std::size_t k = 1; k < out.size(); ++k) {
      if (out[k].symbol == out[k - 1].symbol) return false;
    }
  }
  return true;
}

FsaBuilder::FsaBuilder(std::size_t num_states) : final_(num_states, 0) {}

StateId FsaBuilder::add_state() {
  final_.push_back(0);
  return static_cast<StateId>(final_.size() - 1);
}

void FsaBuilder::check_state(StateId s) const {
  if (s >= final_.size()) throw std::out_of_range("FsaBuilder: bad state id");
}

void FsaBuilder::set_start(StateId s) {
  check_state(s);
  start_ = s;
}

void FsaBuilder::set_final(StateId s, bool final) {
  check_state(s);
  final_[s] = final ? 1 : 0;
}

void FsaBuilder::add_arc(StateId from, Symbol symbol, StateId to) {
  check_state(from);
  check_state(to);
  arcs_.push_back({from, symbol, to});
}

Fsa FsaBuilder::build() && {
  if (final_.empty()) return Fsa();
  auto key = [](const PendingArc& a) {
    return std::tuple(a.from, a.symbol, a.to);
  };
  std::sort(arcs_.begin(), arcs_.end(),
            [&](const PendingArc& a, const PendingArc& b) { return key(a) < key(b); });
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end(),
                          [&](const PendingArc& a, const PendingArc& b) {
                            return key(a) == key(b);
                          }),
              arcs_.end());

  Fsa fsa;
  fsa.start_ = start_;
  fsa.final_ = std::move(final_);
  fsa.offsets_.assign(fsa.final_.size() + 1, 0);
  fsa.arcs_.reserve(arcs_.size());
  for (const auto& a : arcs_) {
    ++fsa.offsets_[a.from + 1];
    fsa.arcs_.push_back({a.symbol, a.to});
  }
  for (std::size_t s = 1; s < fsa.offsets_.size(); ++s) {
    fsa.offsets_[s] += fsa.offsets_[s - 1];
  }
  return fsa;
}

std::vector<Word> unique_words(std::span<const Word> words) {
  std::vector<Word> sorted(words.begin(), words.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return sorted;
}

Fsa build_trie(std::span<const Word> words) {
  const std::vector<Word> sorted = unique_words(words);

  // Insertion in sorted order: each node's children are created in
  // ascending symbol order, and only the path of the previous word is live.
  struct TreeArc {
    StateId parent;
    Symbol symbol;
    StateId child;
  };
  std::vector<TreeArc> tree;
  std::vector<std::uint8_t> final(1, 0);
  std::vector<StateId> path{0};
  const Word* prev = nullptr;
  for (const Word& w : sorted) {
    std::size_t common = 0;
    if (prev != nullptr) {
      auto [a, b] = std::mismatch(prev->begin(), prev->end(), w.begin(), w.end());
      common = static_cast<std::size_t>(a - prev->begin());
    }
    path.resize(common + 1);
    for (std::size_t k = common; k < w.size(); ++k) {
      const auto child = static_cast<StateId>(final.size());
      final.push_back(0);
      tree.push_back({path.back(), w[k], child});
      path.push_back(child);
    }
    final[path.back()] = 1;
    prev = &w;
  }

  // Group children per parent (stable, so symbol order is kept), then
  // renumber breadth-first from the root.
  const std::size_t n = final.size();
  std::vector<std::uint32_t> first(n + 1, 0);
  for (const auto& a : tree) ++first[a.parent + 1];
  for (std::size_t s = 1; s <= n; ++s) first[s] += first[s - 1];
  std::vector<TreeArc> grouped(tree.size());
  {
    std::vector<std::uint32_t> fill(first.begin(), first.end() - 1);
    for (const auto& a : tree) grouped[fill[a.parent]++] = a;
  }
  std::vector<StateId> order;
  order.reserve(n);
  std::vector<StateId> renumber(n, 0);
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const StateId s = order[head];
    for (auto k = first[s]; k < first[s + 1]; ++k) {
      renumber[grouped[k].child] = static_cast<StateId>(order.size());
      order.push_back(grouped[k].child);
    }
  }

  FsaBuilder builder(n);
  builder.set_start(0);
  for (std::size_t s = 0; s < n; ++s) {
    if (final[s]) builder.set_final(renumber[s]);
  }
  for (const auto& a : grouped) {
    builder.add_arc(renumber[a.parent], a.symbol, renumber[a.child]);
  }
  return std::move(builder).build();
}

Fsa read_fsa(std::istream& in, const std::string& source) {
  using namespace tabular;
  std::optional<FsaBuilder> builder;
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
    if (keyword == "fsa") {
      if (builder) throw fail("duplicate header");
      auto count = parse_id(next_field(rest));
      auto start = parse_id(next_field(rest));
      if (!count || !start || !only_space(rest)) throw fail("malformed header");
      if (*start >= *count) throw fail("start state out of range");
      builder.emplace(*count);
      builder->set_start(*start);
    } else if (keyword == "final") {
      if (!builder) throw fail("'final' before 'fsa' header");
      const StateId s = state(next_field(rest));
      if (!only_space(rest)) throw fail("malformed final line");
      builder->set_final(s);
    } else if (keyword == "arc") {
      if (!builder) throw fail("'arc' before 'fsa' header");
      const StateId src = state(next_field(rest));
      const StateId dst = state(next_field(rest));
      auto symbol = parse_scalar(rest);
      if (!symbol) throw fail("arc symbol must be exactly one Unicode scalar");
      builder->add_arc(src, *symbol, dst);
    } else {
      throw fail("malformed line");
    }
  }
  if (in.bad()) throw FormatError(source, 0, "read error");
  if (!builder) throw FormatError(source, 0, "missing 'fsa' header");
  return std::move(*builder).build();
}

Fsa parse_fsa(std::string_view text, const std::string& source) {
  std::istringstream in{std::string(text)};
  return read_fsa(in, source);
}

Fsa read_fsa_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path, 0, "cannot open file");
  return read_fsa(in, path);
}

void write_fsa(const Fsa& fsa, std::ostream& out) {
  out << "fsa " << fsa.num_states() << ' ' << fsa.start() << '\n';
  for (StateId s = 0; s < fsa.num_states(); ++s) {
    if (fsa.is_final(s)) out << "final " << s << '\n';
  }
  std::string symbol;
  for (StateId s = 0; s < fsa.num_states(); ++s) {
    for (const Arc& a : fsa.arcs(s)) {
      symbol.clear();
      append_utf8(symbol, a.symbol);
      out << "arc " << s << ' ' << a.target << ' ' << symbol << '\n';
    }
  }
}

std::string format_fsa(const Fsa& fsa) {
  std::ostringstream out;
  write_fsa(fsa, out);
  return out.str();
}

FsaStats compute_stats(const Fsa& fsa, std::optional<std::span<const Word>> words) {
  FsaStats stats;
  stats.state_count = fsa.num_states();
  stats.arc_count = fsa.num_arcs();
  for (StateId s = 0; s < fsa.num_states(); ++s) {
    if (fsa.is_final(s)) ++stats.final_count;
  }
  stats.average_fan_out = stats.state_count == 0
                              ? 0.0
                              : static_cast<double>(stats.arc_count) /
                                    static_cast<double>(stats.state_count);
  if (words) {
    const auto unique = unique_words(*words);
    std::size_t total = 0;
    std::size_t longest = 0;
    for (const Word& w : unique) {
      total += w.size();
      longest = std::max(longest, w.size());
    }
    stats.word_count = unique.size();
    stats.average_word_length =
        unique.empty() ? 0.0
                       : static_cast<double>(total) / static_cast<double>(unique.size());
    stats.max_word_length = longest;
  }
  return stats;
}

}  // namespace etr
