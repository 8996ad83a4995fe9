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

// Text formats: run files, qrels, passage runs, and CSV output.
//
//   run:      topic Q0 docid rank score tag
//   qrels:    topic 0 docid grade
//   passages: topic docid offset length rank
//
// Fields are whitespace separated; blank lines and lines starting with '#'
// are skipped. Offsets and lengths count bytes, which are taken to be
// characters.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "med/core.hpp"
#include "med/medu.hpp"

namespace med {

struct RunFile {
  std::string tag;
  std::map<std::string, RankedList> topics;
  /// Documents whose rank field disagrees with their position after sorting.
  std::size_t rank_mismatches = 0;
};

/// Orders each topic by descending score, ties by ascending docid; the rank
/// column is only checked. Throws kParseError (with the line number) for
/// malformed lines and kMalformedRun for a repeated (topic, docid).
RunFile parse_run(std::string_view text);

/// Writes a run whose scores reproduce the stored order.
std::string render_run(const RunFile& run);

struct Qrels {
  JudgmentSet judgments;
  std::size_t clamped = 0;
  std::size_t duplicates = 0;
};

/// Grade indexes are clamped into [0, scale.levels()]; a repeated entry
/// overwrites the earlier one. Non-integer grades are parse errors.
Qrels parse_qrels(std::string_view text, const GradeScale& scale);

/// Per-topic trailtexts with passages in rank order (ties keep file order).
std::map<std::string, Trailtext> parse_passage_run(std::string_view text);

/// Rectangular table of numbers with labelled rows and columns.
struct Table {
  std::string corner = "run";
  std::vector<std::string> columns;
  std::vector<std::string> rows;
  std::vector<std::vector<double>> values;
};

/// Header row then one row per label, numbers with six decimals.
std::string write_matrix(const Table& table);

/// Six-decimal rendering used by every CSV writer.
std::string format_number(double v);

}  // namespace med
