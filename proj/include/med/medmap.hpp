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

// MED for MAP@k. After free and judged ranks are fixed, S(A) - S(B) is a
// quadratic function of one 0/1 variable per shared document:
//
//   f(z) = z^T Q z + L^T z + F
//
// All coefficients share the denominator k * lcm(1..k), so they are held as
// scaled integers and every comparison between assignments is exact.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "med/core.hpp"

namespace med {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Assignment = std::vector<std::uint8_t>;

class QuboProblem {
 public:
  QuboProblem() = default;
  QuboProblem(std::size_t size, BigInt denominator);

  std::size_t size() const { return linear_.size(); }
  const BigInt& denominator() const { return denominator_; }

  /// Upper-triangular: quadratic(i, j) with i <= j. Diagonal entries act as
  /// linear terms since z^2 = z.
  const BigInt& quadratic(std::size_t i, std::size_t j) const;
  BigInt& quadratic(std::size_t i, std::size_t j);
  const BigInt& linear(std::size_t i) const { return linear_.at(i); }
  BigInt& linear(std::size_t i) { return linear_.at(i); }
  const BigInt& constant() const { return constant_; }
  BigInt& constant() { return constant_; }

  /// Document behind each variable.
  std::vector<DocId> var_docs;

  /// Objective times the denominator.
  BigInt scaled_objective(std::span<const std::uint8_t> z) const;
  Rational objective(std::span<const std::uint8_t> z) const;

  /// Sum of absolute scaled coefficients; bounds |scaled_objective| for any z.
  BigInt magnitude() const;

 private:
  BigInt denominator_{1};
  std::vector<BigInt> upper_;  // row-major, full square for simple indexing
  std::vector<BigInt> linear_;
  BigInt constant_{0};
};

/// Plain-text dump: first line `k' F`, second line the L entries, then one
/// `i j Q_ij` line per non-zero quadratic coefficient (0-based). Values are
/// reduced fractions.
std::string write_qubo(const QuboProblem& q);

/// Builds the objective S(A) - S(B) of MAP@k with the relevant-document
/// count replaced by k. Free ranks of A are relevant, free ranks of B are
/// not. Throws kInvalidMeasure if a judged value is neither 0 nor 1.
QuboProblem build_qubo(const AlignedPair& pair, std::size_t k);

struct QuboSolution {
  Assignment z;
  Rational value;
};

/// Largest instance solve_exact accepts.
inline constexpr std::size_t kExactLimit = 20;

/// Exhaustive maximization; ties go to the lexicographically smallest z.
QuboSolution solve_exact(const QuboProblem& q);

struct TabuParams {
  std::uint64_t seed = 1;
  /// Iterations per restart; unset means 10 * k'.
  std::optional<std::size_t> max_iterations;
  std::size_t tenure = 7;
  std::size_t restarts = 5;
};

/// Steepest-ascent single flips from z = 0 until no flip improves.
QuboSolution greedy_local_search(const QuboProblem& q);

/// Tabu search over single-bit flips. The first run starts from the greedy
/// local optimum, later runs from seeded random assignments. Moves are the
/// best admissible flip; a tabu flip is admissible when it beats the
/// incumbent.
QuboSolution solve_tabu(const QuboProblem& q, const TabuParams& params = {});

/// Solves both orderings of the pair; exact up to `exact_limit` shared
/// variables, tabu search beyond.
MedOutcome med_map(const AlignedPair& pair, std::size_t k, const TabuParams& params = {},
                   std::size_t exact_limit = kExactLimit);

/// MAP@k with R replaced by k, for a fully known 0/1 relevance vector.
double map_score(std::span<const double> relevance, std::size_t k);

}  // namespace med
