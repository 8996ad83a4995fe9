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

// Exhaustive MED: tries every grade assignment consistent with the pair's
// constraints. Slow by construction; it is the reference the specialized
// maximizers are tested against.

#include <cstdint>
#include <span>

#include "med/core.hpp"
#include "med/measure.hpp"

namespace med {

struct OracleBudget {
  std::uint64_t max_enumerations = std::uint64_t{1} << 20;
};

/// Maximum of |S(A) - S(B)| over all assignments of `grades` to free and
/// bound variables (bound pairs share a value; judged ranks keep theirs).
/// The witness is the first maximizer in lexicographic order of the
/// variables (free A ranks, then bound pairs by A rank, then free B ranks).
/// RBP adds its tail max(grades) * psi^K; MAP is evaluated in exact rationals.
/// Throws kTooLarge when |grades|^variables exceeds the budget.
MedOutcome brute_force_med(const AlignedPair& pair, const MeasureSpec& measure,
                           std::span<const double> grades, OracleBudget budget = {});

/// S(A) - S(B) for MAP@k (R replaced by k) on 0/1 vectors, exactly.
Rational map_difference_exact(std::span<const int> a, std::span<const int> b, std::size_t k);

}  // namespace med
