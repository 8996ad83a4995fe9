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

// Measure selection and the direction-maximizing MED entry point.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "med/core.hpp"
#include "med/dotprod.hpp"
#include "med/mederr.hpp"
#include "med/medmap.hpp"

namespace med {

struct PrecisionAt {
  std::size_t k = 10;
};

struct NdcgAt {
  std::size_t k = 20;
  GradeScale scale = GradeScale::from_levels(2);
};

struct Rbp {
  double psi = 0.9;
};

struct MapAt {
  std::size_t k = 100;
  TabuParams tabu;
  std::size_t exact_limit = kExactLimit;
};

struct ErrMeasure {
  ErrParams params;
  GradeScale scale = GradeScale::from_levels(2);
};

using MeasureSpec = std::variant<PrecisionAt, NdcgAt, Rbp, MapAt, ErrMeasure>;

std::string_view measure_name(const MeasureSpec& m);

/// Depth the measure looks at; unset for RBP, which runs to infinity.
std::optional<std::size_t> measure_depth(const MeasureSpec& m);

/// Scale used to turn judged grade indexes into relevance values.
GradeScale measure_scale(const MeasureSpec& m);

/// MED of an aligned pair: the larger of max S(A) - S(B) and max S(B) - S(A).
/// The pair must be aligned at least as deep as the measure looks.
MedOutcome compute_med(const AlignedPair& pair, const MeasureSpec& measure);

/// Effectiveness of one fully known relevance vector under the same
/// normalization MED uses. RBP omits its tail.
double evaluate(const MeasureSpec& measure, std::span<const double> relevance);

}  // namespace med
