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

#include "med/core.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

namespace med {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kInvalidPair: return "invalid-pair";
    case ErrorKind::kMalformedRun: return "malformed-run";
    case ErrorKind::kUnsupportedMeasure: return "unsupported-measure";
    case ErrorKind::kInvalidMeasure: return "invalid-measure";
    case ErrorKind::kTooLarge: return "too-large";
    case ErrorKind::kParseError: return "parse-error";
  }
  return "unknown";
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::kNone: return "=";
    case Direction::kA: return "A";
    case Direction::kB: return "B";
  }
  return "?";
}

void check_no_duplicates(const RankedList& list) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(list.docs.size());
  for (const auto& doc : list.docs) {
    if (!seen.insert(doc).second) {
      throw Error(ErrorKind::kMalformedRun,
                  "document '" + doc + "' repeated in topic " + list.topic);
    }
  }
}

GradeScale GradeScale::from_levels(int levels) {
  if (levels < 1 || levels > 62) {
    throw Error(ErrorKind::kInvalidArgument,
                "grade levels must be in [1, 62], got " + std::to_string(levels));
  }
  const std::int64_t den = std::int64_t{1} << levels;
  std::vector<Grade> grades;
  grades.reserve(static_cast<std::size_t>(levels) + 1);
  for (int j = 0; j <= levels; ++j) {
    // 2^j - 1 is odd for j >= 1, so the fraction is already reduced.
    if (j == 0) {
      grades.push_back({0, 1});
    } else {
      grades.push_back({(std::int64_t{1} << j) - 1, den});
    }
  }
  return GradeScale(std::move(grades));
}

GradeScale GradeScale::binary() { return GradeScale({{0, 1}, {1, 1}}); }

GradeScale GradeScale::custom(std::vector<Grade> grades) {
  if (grades.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "a grade scale needs at least two grades");
  }
  if (grades.front().num != 0) {
    throw Error(ErrorKind::kInvalidArgument, "r_0 must be zero");
  }
  for (std::size_t i = 0; i < grades.size(); ++i) {
    if (grades[i].den <= 0) throw Error(ErrorKind::kInvalidArgument, "grade denominator must be positive");
    if (i > 0) {
      // a/b < c/d  <=>  a*d < c*b for positive denominators
      boost::multiprecision::int128_t lhs = boost::multiprecision::int128_t(grades[i - 1].num) * grades[i].den;
      boost::multiprecision::int128_t rhs = boost::multiprecision::int128_t(grades[i].num) * grades[i - 1].den;
      if (!(lhs < rhs)) throw Error(ErrorKind::kInvalidArgument, "grades must be strictly increasing");
    }
  }
  if (grades.back().num > grades.back().den) {
    throw Error(ErrorKind::kInvalidArgument, "top grade must not exceed 1");
  }
  return GradeScale(std::move(grades));
}

std::vector<double> GradeScale::values() const {
  std::vector<double> out;
  out.reserve(grades_.size());
  for (const auto& g : grades_) out.push_back(g.value());
  return out;
}

bool JudgmentSet::set(const std::string& topic, const DocId& doc, int grade_index) {
  auto [it, inserted] = entries_.insert_or_assign({topic, doc}, grade_index);
  return !inserted;
}

std::optional<int> JudgmentSet::find(const std::string& topic, const DocId& doc) const {
  auto it = entries_.find({topic, doc});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool AlignedPair::has_predetermined() const {
  auto pred = [](const Slot& s) { return s.is_predetermined(); };
  return std::any_of(side_a.begin(), side_a.end(), pred) ||
         std::any_of(side_b.begin(), side_b.end(), pred);
}

std::size_t AlignedPair::bound_count() const {
  return static_cast<std::size_t>(
      std::count_if(side_a.begin(), side_a.end(), [](const Slot& s) { return s.is_bound(); }));
}

namespace {

std::vector<Slot> classify(const RankedList& own, const RankedList& other, std::size_t depth,
                           const JudgmentSet& judgments, const GradeScale& scale) {
  std::unordered_map<std::string_view, std::size_t> other_rank;
  const std::size_t other_len = std::min(depth, other.docs.size());
  for (std::size_t i = 0; i < other_len; ++i) other_rank.emplace(other.docs[i], i);

  std::vector<Slot> slots(depth);
  const std::size_t own_len = std::min(depth, own.docs.size());
  for (std::size_t i = 0; i < own_len; ++i) {
    const DocId& doc = own.docs[i];
    slots[i].doc = doc;
    if (auto grade = judgments.find(own.topic, doc)) {
      if (*grade < 0 || *grade > scale.levels()) {
        throw Error(ErrorKind::kInvalidArgument,
                    "grade index " + std::to_string(*grade) + " outside scale for " + doc);
      }
      slots[i].kind = Predetermined{scale.grade(*grade)};
    } else if (auto it = other_rank.find(doc); it != other_rank.end()) {
      slots[i].kind = Bound{it->second};
    }
  }
  return slots;
}

}  // namespace

AlignedPair align(const RankedList& a, const RankedList& b, std::size_t depth,
                  const JudgmentSet& judgments, const GradeScale& scale) {
  if (depth < 1) throw Error(ErrorKind::kInvalidArgument, "alignment depth must be >= 1");
  if (a.topic != b.topic) {
    throw Error(ErrorKind::kInvalidPair, "topic mismatch: '" + a.topic + "' vs '" + b.topic + "'");
  }
  check_no_duplicates(a);
  check_no_duplicates(b);
  return {a.topic, depth, classify(a, b, depth, judgments, scale),
          classify(b, a, depth, judgments, scale)};
}

MedOutcome combine_directions(DirectionalResult forward, DirectionalResult backward) {
  MedOutcome out;
  if (backward.value > forward.value) {
    out.value = backward.value;
    out.direction = Direction::kB;
    out.witness_a = std::move(backward.witness_second);
    out.witness_b = std::move(backward.witness_first);
    out.tail = backward.tail;
  } else {
    out.value = forward.value;
    out.direction = forward.value > 0.0 ? Direction::kA : Direction::kNone;
    out.witness_a = std::move(forward.witness_first);
    out.witness_b = std::move(forward.witness_second);
    out.tail = forward.tail;
  }
  if (out.value < 0.0) out.value = 0.0;
  return out;
}

double aggregate(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::kInvalidArgument, "cannot average an empty sequence");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace med
