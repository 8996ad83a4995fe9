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

// MED for the U-measure: relevance is assigned per character of a trailtext
// (the concatenated passages shown to a user) with a linear position
// discount d_i = 1 - i/l. Everything here works on maximal intervals of
// positions, never on single characters.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "med/core.hpp"

namespace med {

struct Passage {
  DocId doc;
  std::uint64_t offset = 0;
  std::uint64_t length = 1;
};

inline constexpr std::size_t kDefaultTrailLength = 12000;

struct Trailtext {
  std::string topic;
  std::vector<Passage> passages;
};

/// Inclusive range of 1-based trailtext positions.
struct Interval {
  std::size_t first = 1;
  std::size_t last = 1;

  std::size_t length() const { return last - first + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Gain of one relevant character. kUnit reads the measure literally. kHalf
/// uses the binary grade 1/2 from the (2^j - 1)/2^G scale, which makes the
/// largest MED-U@12000 come out at 2999.75 instead of 5999.5.
enum class UGain { kUnit, kHalf };

double gain_value(UGain gain);

/// Sum of (1 - i/l) over the given positions, in closed form per interval.
/// Throws kInvalidArgument for intervals outside [1, l].
double u_score(std::span<const Interval> relevant, std::size_t l, UGain gain = UGain::kUnit);

struct CharFree {
  friend bool operator==(const CharFree&, const CharFree&) = default;
};
/// Same characters as the other trailtext's positions starting at `partner_first`.
struct CharBound {
  std::size_t partner_first = 0;
  friend bool operator==(const CharBound&, const CharBound&) = default;
};
/// Characters already shown earlier in the same trailtext; they add no gain.
struct CharRepeat {
  friend bool operator==(const CharRepeat&, const CharRepeat&) = default;
};

struct CharSegment {
  Interval span;
  std::variant<CharFree, CharBound, CharRepeat> kind;
  friend bool operator==(const CharSegment&, const CharSegment&) = default;
};

/// Segments on each side partition [1, l] in position order. Positions past
/// the end of a trailtext are free padding.
struct CharAlignment {
  std::size_t length = 0;
  std::vector<CharSegment> side_a;
  std::vector<CharSegment> side_b;
};

/// Throws kInvalidArgument on zero-length passages or l == 0.
CharAlignment align_characters(const Trailtext& a, const Trailtext& b, std::size_t l);

struct UOutcome {
  double value = 0.0;
  Direction direction = Direction::kNone;
  std::vector<Interval> relevant_a;
  std::vector<Interval> relevant_b;
};

/// Relevant characters that maximize U(first) - U(second).
struct UAssignment {
  std::vector<Interval> first;
  std::vector<Interval> second;
};
UAssignment maximize_u_direction(const CharAlignment& alignment);

UOutcome med_u(const Trailtext& a, const Trailtext& b, std::size_t l = kDefaultTrailLength,
               UGain gain = UGain::kUnit);

}  // namespace med
