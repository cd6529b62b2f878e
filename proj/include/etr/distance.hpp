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

#ifndef ETR_DISTANCE_HPP_
#define ETR_DISTANCE_HPP_

#include <vector>

#include "etr/text.hpp"

namespace etr {

// Edit distance with unit-cost insertion, deletion, replacement and
// transposition of adjacent symbols. A transposed pair is not edited
// further, so ed("ca", "abc") is 3.
int edit_distance(WordView x, WordView y);

enum class BandMode {
  // Only the diagonal band |i - n| <= t (plus one guard row on either side)
  // is computed. Values above t are not exact.
  kBanded,
  // Every row of every column is computed. Reference mode for testing.
  kFull,
};

// The matrix H(i, n) = ed(X[i], Y[n]) for a fixed query X and a candidate
// Y that grows and shrinks one symbol at a time, in lockstep with a
// depth-first walk over an automaton.
//
// Column n depends only on columns n-1 and n-2, so pushing a symbol fills
// exactly one new column and popping discards it. In banded mode with
// t == 0 no matrix is allocated at all: the candidate is within the
// threshold exactly when it is a prefix of the query.
//
// Not thread-safe; use one matrix per in-flight search.
class EditMatrix {
 public:
  EditMatrix(WordView query, int threshold, BandMode mode = BandMode::kBanded);

  // Appends y to the candidate and returns the cut-off distance at the new
  // depth.
  int push(Symbol y);
  // Drops the last candidate symbol. Throws std::logic_error at depth 0.
  void pop();

  // Cut-off distance at depth n (1 <= n <= depth()): the minimum of H(i, n)
  // over the rows i within t of n. Returns threshold() + 1 when no query
  // prefix is within t of the candidate length (n > m + t).
  int cuted(int n) const;
  int cuted() const { return cuted(depth_); }

  // H(m, depth()). Exact whenever it is <= threshold(); in banded mode a
  // larger true distance is reported as some value > threshold().
  int distance() const;

  // Raw H(i, j) for 0 <= i <= m, 0 <= j <= depth(). Not available in the
  // t == 0 prefix mode.
  int at(int i, int j) const;

  int depth() const { return depth_; }
  int query_length() const { return m_; }
  int threshold() const { return t_; }
  BandMode mode() const { return mode_; }
  WordView query() const { return query_; }
  WordView candidate() const { return candidate_; }

 private:
  bool prefix_mode() const { return t_ == 0 && mode_ == BandMode::kBanded; }
  int* column(int j) { return cells_.data() + static_cast<std::size_t>(j) * stride_; }
  const int* column(int j) const {
    return cells_.data() + static_cast<std::size_t>(j) * stride_;
  }
  void fill_column(int n);

  Word query_;
  Word candidate_;
  int m_;
  int t_;
  BandMode mode_;
  std::size_t stride_;
  int depth_ = 0;
  // Prefix mode only: length of the longest candidate prefix that is also
  // a prefix of the query.
  int matched_ = 0;
  std::vector<int> cells_;
};

}  // namespace etr

#endif  // ETR_DISTANCE_HPP_
