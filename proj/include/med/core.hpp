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

// Ranked lists, relevance grade scales, judgments and the alignment of two
// lists into per-rank relevance variables.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "med/error.hpp"

namespace med {

using DocId = std::string;

/// One topic's result list. Position i (0-based here) holds rank i + 1.
struct RankedList {
  std::string topic;
  std::vector<DocId> docs;

  std::size_t size() const { return docs.size(); }
};

/// Throws kMalformedRun if a document occurs twice.
void check_no_duplicates(const RankedList& list);

/// An exact relevance value num/den.
struct Grade {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Grade&, const Grade&) = default;
};

/// Relevance values r_0 = 0 < r_1 < ... < r_G <= 1.
class GradeScale {
 public:
  /// r_j = (2^j - 1) / 2^G for j = 0..G.
  static GradeScale from_levels(int levels);
  /// Two grades, 0 and 1.
  static GradeScale binary();
  /// Arbitrary scale; validated against the ordering invariants.
  static GradeScale custom(std::vector<Grade> grades);

  int levels() const { return static_cast<int>(grades_.size()) - 1; }
  const Grade& grade(int index) const { return grades_.at(static_cast<std::size_t>(index)); }
  const Grade& top() const { return grades_.back(); }
  const std::vector<Grade>& grades() const { return grades_; }
  std::vector<double> values() const;

 private:
  explicit GradeScale(std::vector<Grade> grades) : grades_(std::move(grades)) {}
  std::vector<Grade> grades_;
};

/// Known relevance, keyed by (topic, doc), holding a grade index.
class JudgmentSet {
 public:
  using Key = std::pair<std::string, DocId>;

  /// Inserts or overwrites; returns true if an entry already existed.
  bool set(const std::string& topic, const DocId& doc, int grade_index);
  std::optional<int> find(const std::string& topic, const DocId& doc) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<Key, int>& entries() const { return entries_; }

 private:
  std::map<Key, int> entries_;
};

struct Free {
  friend bool operator==(const Free&, const Free&) = default;
};
/// Same document at `partner` (0-based) in the other list.
struct Bound {
  std::size_t partner = 0;
  friend bool operator==(const Bound&, const Bound&) = default;
};
struct Predetermined {
  Grade grade;
  friend bool operator==(const Predetermined&, const Predetermined&) = default;
};

using VariableKind = std::variant<Free, Bound, Predetermined>;

struct Slot {
  std::optional<DocId> doc;  // empty for padding
  VariableKind kind = Free{};

  bool is_free() const { return std::holds_alternative<Free>(kind); }
  bool is_bound() const { return std::holds_alternative<Bound>(kind); }
  bool is_predetermined() const { return std::holds_alternative<Predetermined>(kind); }
  std::size_t partner() const { return std::get<Bound>(kind).partner; }
  double fixed_value() const { return std::get<Predetermined>(kind).grade.value(); }
  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Two lists cut or padded to a common depth, each rank classified as a
/// free, bound or predetermined relevance variable.
struct AlignedPair {
  std::string topic;
  std::size_t depth = 0;
  std::vector<Slot> side_a;
  std::vector<Slot> side_b;

  AlignedPair swapped() const { return {topic, depth, side_b, side_a}; }
  bool has_predetermined() const;
  std::size_t bound_count() const;
  friend bool operator==(const AlignedPair&, const AlignedPair&) = default;
};

/// Classifies the top `depth` ranks of both lists. Judged documents become
/// Predetermined (even when shared); shared unjudged documents are Bound;
/// everything else, including padding past the end of a list, is Free.
AlignedPair align(const RankedList& a, const RankedList& b, std::size_t depth,
                  const JudgmentSet& judgments, const GradeScale& scale);

inline AlignedPair align(const RankedList& a, const RankedList& b, std::size_t depth) {
  return align(a, b, depth, JudgmentSet{}, GradeScale::binary());
}

enum class Direction { kNone, kA, kB };

std::string_view to_string(Direction d);

struct MedOutcome {
  double value = 0.0;
  /// Which list scores higher under the maximizing assignment.
  Direction direction = Direction::kNone;
  std::vector<double> witness_a;
  std::vector<double> witness_b;
  /// Approximation bound; set by the ERR maximizer only.
  std::optional<double> epsilon;
  /// Contribution of the unseen ranks below the depth (RBP).
  double tail = 0.0;
};

/// Result of maximizing S(first) - S(second) for one ordering of the pair.
struct DirectionalResult {
  double value = 0.0;
  std::vector<double> witness_first;
  std::vector<double> witness_second;
  double tail = 0.0;
};

/// Picks the larger of the forward (A over B) and backward (B over A) results.
MedOutcome combine_directions(DirectionalResult forward, DirectionalResult backward);

/// Arithmetic mean; throws on empty input.
double aggregate(std::span<const double> values);

}  // namespace med
