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

#pragma once

// MED for expected reciprocal rank under the cascade browsing model.

#include <cstddef>
#include <span>

#include "med/core.hpp"

namespace med {

struct ErrParams {
  double top_grade = 0.75;
  std::size_t depth = 30;
  /// Largest number of bound variables in A raised to the top grade at once.
  std::size_t p_max = 5;
};

/// sum_{i<=depth} (c_i / i) prod_{j<i} (1 - c_j). Throws kInvalidArgument
/// if some c_i lies outside [0, 1].
double err_score(std::span<const double> relevance, std::size_t depth);
inline double err_score(std::span<const double> relevance) {
  return err_score(relevance, relevance.size());
}

/// Probability that a cascade user reaches 1-based rank i.
double reach_probability(std::span<const double> relevance, std::size_t rank);

/// Upper bound on the ERR mass left after p documents of grade r_G:
/// (1 - r_G)^p / (p + 1).
double epsilon_bound(std::size_t p, double top_grade);

/// Tries every subset of at most p_max bound variables of A (ranks within
/// the depth) at the top grade, all other bound variables at zero, free
/// ranks of A at the top grade and of B at zero; both orderings.
///
/// `epsilon` is zero when every subset was tried. Otherwise it bounds the
/// shortfall from the optimum over {0, r_G}: the count of top-grade ranks
/// that must precede any bound variable past the first p_max (the p_max
/// chosen ones plus free and top-judged ranks before it) feeds
/// epsilon_bound.
MedOutcome med_err(const AlignedPair& pair, const ErrParams& params = {});

}  // namespace med
