// Copyright 2026 The med Authors. All Rights Reserved.
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

#include "med/mederr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace med {

double err_score(std::span<const double> relevance, std::size_t depth) {
  double reach = 1.0;
  double total = 0.0;
  const std::size_t n = std::min(depth, relevance.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double c = relevance[i];
    if (!(c >= 0.0 && c <= 1.0)) {
      throw Error(ErrorKind::kInvalidArgument, "relevance at rank " + std::to_string(i + 1) +
                                                   " outside [0, 1]");
    }
    total += reach * c / static_cast<double>(i + 1);
    reach *= 1.0 - c;
  }
  return total;
}

double reach_probability(std::span<const double> relevance, std::size_t rank) {
  if (rank < 1) throw Error(ErrorKind::kInvalidArgument, "rank is 1-based");
  double reach = 1.0;
  for (std::size_t j = 0; j + 1 < rank && j < relevance.size(); ++j) reach *= 1.0 - relevance[j];
  return reach;
}

double epsilon_bound(std::size_t p, double top_grade) {
  return std::pow(1.0 - top_grade, static_cast<double>(p)) / static_cast<double>(p + 1);
}

namespace {

struct ErrDirection {
  DirectionalResult result;
  double epsilon = 0.0;
};

ErrDirection maximize_err(const AlignedPair& pair, const ErrParams& params) {
  const std::size_t depth = std::min(params.depth, pair.depth);
  const double top = params.top_grade;

  std::vector<double> a(pair.depth, 0.0), b(pair.depth, 0.0);
  std::vector<std::size_t> bound;  // A positions of bound variables within depth
  for (std::size_t i = 0; i < pair.depth; ++i) {
    const Slot& s = pair.side_a[i];
    if (s.is_free()) a[i] = top;
    else if (s.is_predetermined()) a[i] = s.fixed_value();
    else if (i < depth) bound.push_back(i);
  }
  for (std::size_t j = 0; j < pair.depth; ++j) {
    if (pair.side_b[j].is_predetermined()) b[j] = pair.side_b[j].fixed_value();
  }

  auto set_bound = [&](std::size_t a_pos, double v) {
    a[a_pos] = v;
    b[pair.side_a[a_pos].partner()] = v;
  };

  ErrDirection best;
  bool have_best = false;
  const std::size_t max_size = std::min(params.p_max, bound.size());
  std::vector<std::size_t> pick;
  // Increasing subset size, lexicographic within a size; first maximizer wins.
  for (std::size_t size = 0; size <= max_size; ++size) {
    pick.resize(size);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      for (std::size_t idx : pick) set_bound(bound[idx], top);
      const double value = err_score(a, depth) - err_score(b, depth);
      if (!have_best || value > best.result.value) {
        best.result.value = value;
        best.result.witness_first = a;
        best.result.witness_second = b;
        have_best = true;
      }
      for (std::size_t idx : pick) set_bound(bound[idx], 0.0);

      // next combination
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == bound.size() - size + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  if (bound.size() > params.p_max) {
    const std::size_t cutoff = bound[params.p_max];
    std::size_t p = params.p_max;
    for (std::size_t i = 0; i < cutoff; ++i) {
      const Slot& s = pair.side_a[i];
      if (s.is_free() || (s.is_predetermined() && s.fixed_value() >= top)) ++p;
    }
    best.epsilon = epsilon_bound(p, top);
  }
  return best;
}

}  // namespace

MedOutcome med_err(const AlignedPair& pair, const ErrParams& params) {
  if (!(params.top_grade > 0.0 && params.top_grade <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "ERR top grade must be in (0, 1]");
  }
  if (params.depth < 1) throw Error(ErrorKind::kInvalidArgument, "ERR depth must be >= 1");
  ErrDirection forward = maximize_err(pair, params);
  ErrDirection backward = maximize_err(pair.swapped(), params);
  const double eps = std::max(forward.epsilon, backward.epsilon);
  MedOutcome out = combine_directions(std::move(forward.result), std::move(backward.result));
  out.epsilon = eps;
  return out;
}

}  // namespace med
