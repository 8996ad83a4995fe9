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

// MED for effectiveness measures of the form S(C) = (C . D) / N with a
// non-negative, non-increasing discount D.

#include <cstddef>
#include <functional>

#include "med/core.hpp"

namespace med {

struct DotProductMeasure {
  /// Discount for 1-based rank i.
  std::function<double(std::size_t)> discount;
  double normalization = 1.0;
  double top_grade = 1.0;
  /// Largest possible (normalized) contribution of ranks below `depth` when
  /// every one of them has grade 1; scaled by top_grade. Unset for measures
  /// cut off at a finite depth.
  std::function<double(std::size_t)> tail;
};

/// Discount 1 on ranks 1..k, N = k, binary grades.
DotProductMeasure precision_measure(std::size_t k);
/// Discount 1/log_base(i + 1) on ranks 1..k; N assumes every rank holds a
/// top-grade document.
DotProductMeasure ndcg_measure(std::size_t k, double top_grade, double log_base = 2.0);
/// Discount (1 - psi) psi^(i-1) with the geometric tail psi^K.
DotProductMeasure rbp_measure(double psi);

/// Throws kInvalidMeasure unless the discount is non-negative and
/// non-increasing over ranks 1..depth and N > 0.
void validate(const DotProductMeasure& m, std::size_t depth);

/// Maximizes S(A) - S(B): free ranks of A take the top grade, free ranks of
/// B take zero, a bound pair takes the top grade only when it sits higher in
/// A than in B.
DirectionalResult maximize_direction(const AlignedPair& pair, const DotProductMeasure& m);

MedOutcome med_dot(const AlignedPair& pair, const DotProductMeasure& m);

MedOutcome med_precision(const AlignedPair& pair, std::size_t k);
MedOutcome med_ndcg(const AlignedPair& pair, std::size_t k, const GradeScale& scale);
MedOutcome med_rbp(const AlignedPair& pair, double psi);

/// Score of a single relevance vector, without any tail.
double dot_score(std::span<const double> relevance, const DotProductMeasure& m);

}  // namespace med
