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

#include "med/dotprod.hpp"

#include <cmath>
#include <string>

namespace med {

DotProductMeasure precision_measure(std::size_t k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "precision depth must be >= 1");
  return {[k](std::size_t i) { return i <= k ? 1.0 : 0.0; }, static_cast<double>(k), 1.0, {}};
}

DotProductMeasure ndcg_measure(std::size_t k, double top_grade, double log_base) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "nDCG depth must be >= 1");
  if (!(top_grade > 0.0 && top_grade <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "top grade must be in (0, 1]");
  }
  const double log_b = std::log(log_base);
  auto discount = [k, log_b](std::size_t i) {
    return i <= k ? log_b / std::log(static_cast<double>(i) + 1.0) : 0.0;
  };
  double ideal = 0.0;
  for (std::size_t i = 1; i <= k; ++i) ideal += top_grade * discount(i);
  return {discount, ideal, top_grade, {}};
}

DotProductMeasure rbp_measure(double psi) {
  if (!(psi > 0.0 && psi < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "RBP persistence must be in (0, 1)");
  }
  return {[psi](std::size_t i) { return (1.0 - psi) * std::pow(psi, static_cast<double>(i - 1)); },
          1.0, 1.0,
          [psi](std::size_t depth) { return std::pow(psi, static_cast<double>(depth)); }};
}

void validate(const DotProductMeasure& m, std::size_t depth) {
  if (!(m.normalization > 0.0)) throw Error(ErrorKind::kInvalidMeasure, "normalization must be positive");
  double prev = m.discount(1);
  if (prev < 0.0) throw Error(ErrorKind::kInvalidMeasure, "discount must be non-negative");
  for (std::size_t i = 2; i <= depth; ++i) {
    double d = m.discount(i);
    if (d < 0.0 || d > prev) {
      throw Error(ErrorKind::kInvalidMeasure,
                  "discount must be non-increasing; rank " + std::to_string(i) + " rises");
    }
    prev = d;
  }
}

DirectionalResult maximize_direction(const AlignedPair& pair, const DotProductMeasure& m) {
  validate(m, pair.depth);
  const std::size_t depth = pair.depth;
  DirectionalResult out;
  out.witness_first.assign(depth, 0.0);
  out.witness_second.assign(depth, 0.0);

  for (std::size_t i = 0; i < depth; ++i) {
    const Slot& s = pair.side_a[i];
    if (s.is_free()) {
      out.witness_first[i] = m.top_grade;
    } else if (s.is_predetermined()) {
      out.witness_first[i] = s.fixed_value();
    } else if (i < s.partner()) {
      // n < m: the shared document counts more in A than in B.
      out.witness_first[i] = m.top_grade;
    }
  }
  for (std::size_t j = 0; j < depth; ++j) {
    const Slot& s = pair.side_b[j];
    if (s.is_predetermined()) {
      out.witness_second[j] = s.fixed_value();
    } else if (s.is_bound()) {
      out.witness_second[j] = out.witness_first[s.partner()];
    }
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < depth; ++i) {
    sum += (out.witness_first[i] - out.witness_second[i]) * m.discount(i + 1);
  }
  out.value = sum / m.normalization;
  if (m.tail) {
    out.tail = m.top_grade * m.tail(depth);
    out.value += out.tail;
  }
  return out;
}

MedOutcome med_dot(const AlignedPair& pair, const DotProductMeasure& m) {
  return combine_directions(maximize_direction(pair, m), maximize_direction(pair.swapped(), m));
}

MedOutcome med_precision(const AlignedPair& pair, std::size_t k) {
  return med_dot(pair, precision_measure(k));
}

MedOutcome med_ndcg(const AlignedPair& pair, std::size_t k, const GradeScale& scale) {
  return med_dot(pair, ndcg_measure(k, scale.top().value()));
}

MedOutcome med_rbp(const AlignedPair& pair, double psi) { return med_dot(pair, rbp_measure(psi)); }

double dot_score(std::span<const double> relevance, const DotProductMeasure& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < relevance.size(); ++i) sum += relevance[i] * m.discount(i + 1);
  return sum / m.normalization;
}

}  // namespace med
