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

#include "etr/distance.hpp"

#include <algorithm>
#include <stdexcept>

namespace etr {

int edit_distance(WordView x, WordView y) {
  const int m = static_cast<int>(x.size());
  const int n = static_cast<int>(y.size());
  const int stride = n + 1;
  std::vector<int> h(static_cast<std::size_t>(m + 1) * stride);
  // Index -1 on either side evaluates to max(m, n).
  auto at = [&](int i, int j) {
    if (i < 0 || j < 0) return std::max(m, n);
    return h[static_cast<std::size_t>(i) * stride + j];
  };
  for (int i = 0; i <= m; ++i) h[static_cast<std::size_t>(i) * stride] = i;
  for (int j = 0; j <= n; ++j) h[j] = j;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      int v;
      if (x[i - 1] == y[j - 1]) {
        v = at(i - 1, j - 1);
      } else if (i >= 2 && j >= 2 && x[i - 2] == y[j - 1] &&
                 x[i - 1] == y[j - 2]) {
        v = 1 + std::min({at(i - 2, j - 2), at(i, j - 1), at(i - 1, j)});
      } else {
        v = 1 + std::min({at(i - 1, j - 1), at(i, j - 1), at(i - 1, j)});
      }
      h[static_cast<std::size_t>(i) * stride + j] = v;
    }
  }
  return at(m, n);
}

EditMatrix::EditMatrix(WordView query, int threshold, BandMode mode)
    : query_(query),
      m_(static_cast<int>(query.size())),
      t_(threshold),
      mode_(mode),
      stride_(query.size() + 1) {
  if (threshold < 0) throw std::invalid_argument("negative threshold");
  if (prefix_mode()) return;
  cells_.reserve(static_cast<std::size_t>(m_ + t_ + 2) * stride_);
  cells_.resize(stride_);
  for (int i = 0; i <= m_; ++i) cells_[i] = i;
}

int EditMatrix::push(Symbol y) {
  candidate_.push_back(y);
  ++depth_;
  if (prefix_mode()) {
    if (matched_ == depth_ - 1 && depth_ <= m_ && query_[depth_ - 1] == y) {
      matched_ = depth_;
    }
    return cuted(depth_);
  }
  const std::size_t need = static_cast<std::size_t>(depth_ + 1) * stride_;
  if (cells_.size() < need) cells_.resize(need);
  fill_column(depth_);
  return cuted(depth_);
}

void EditMatrix::pop() {
  if (depth_ == 0) throw std::logic_error("EditMatrix::pop at depth 0");
  candidate_.pop_back();
  --depth_;
  matched_ = std::min(matched_, depth_);
}

void EditMatrix::fill_column(int n) {
  int* cur = column(n);
  const int* prev = column(n - 1);
  const int* prev2 = n >= 2 ? column(n - 2) : nullptr;
  const Symbol y = candidate_[n - 1];
  const Symbol y_prev = n >= 2 ? candidate_[n - 2] : Symbol{};

  int lo = 1;
  int hi = m_;
  if (mode_ == BandMode::kBanded) {
    lo = std::max(1, n - t_);
    hi = std::min(m_, n + t_);
    // Guard rows: anything outside the band is more than t away.
    if (lo - 1 >= 1 && lo - 1 <= m_) cur[lo - 1] = t_ + 1;
    if (hi + 1 >= 1 && hi + 1 <= m_) cur[hi + 1] = t_ + 1;
  }
  cur[0] = n;
  for (int i = lo; i <= hi; ++i) {
    const Symbol x = query_[i - 1];
    if (x == y) {
      cur[i] = prev[i - 1];
    } else if (i >= 2 && prev2 != nullptr && query_[i - 2] == y &&
               x == y_prev) {
      cur[i] = 1 + std::min({prev2[i - 2], prev[i], cur[i - 1]});
    } else {
      cur[i] = 1 + std::min({prev[i - 1], prev[i], cur[i - 1]});
    }
  }
}

int EditMatrix::cuted(int n) const {
  if (n < 1 || n > depth_) throw std::out_of_range("EditMatrix::cuted depth");
  // Row 0 only matters for an empty query: H(1, n) <= H(0, n) otherwise.
  const int lo = std::max(0, n - t_);
  const int hi = std::min(m_, n + t_);
  if (lo > hi) return t_ + 1;
  if (prefix_mode()) return matched_ >= n ? 0 : 1;
  const int* col = column(n);
  return *std::min_element(col + lo, col + hi + 1);
}

int EditMatrix::distance() const {
  if (prefix_mode()) return (matched_ == m_ && depth_ == m_) ? 0 : 1;
  if (depth_ == 0) return m_;
  if (m_ == 0) return depth_;
  if (mode_ == BandMode::kBanded && (m_ > depth_ + t_ || m_ < depth_ - t_)) {
    return t_ + 1;
  }
  return column(depth_)[m_];
}

int EditMatrix::at(int i, int j) const {
  if (prefix_mode()) {
    throw std::logic_error("EditMatrix::at unavailable in prefix mode");
  }
  if (i < 0 || i > m_ || j < 0 || j > depth_) {
    throw std::out_of_range("EditMatrix::at index");
  }
  return column(j)[i];
}

}  // namespace etr
