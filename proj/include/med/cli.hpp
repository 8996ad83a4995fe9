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

// Command implementations behind the `med` executable. Each takes file
// contents rather than paths and returns the CSV it would print, so output
// is a pure function of inputs, flags and seed.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "med/io.hpp"
#include "med/measure.hpp"
#include "med/medu.hpp"

namespace med::cli {

struct Config {
  /// precision, ndcg, rbp, map, err, u or rbo
  std::string measure = "ndcg";
  std::optional<std::size_t> k;
  double psi = 0.9;
  std::optional<double> rg;
  /// ERR search depth (default 30); RBP/RBO depth (default: longer list).
  std::optional<std::size_t> depth;
  std::size_t pmax = 5;
  std::size_t l = kDefaultTrailLength;
  int grade_levels = 2;
  UGain u_gain = UGain::kUnit;
  double fraction = 1.0;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  bool dump_qubo = false;
};

struct NamedInput {
  std::string name;
  std::string text;
};

struct Report {
  std::string csv;
  std::vector<std::string> warnings;
  /// (file name, contents) pairs, e.g. QUBO dumps.
  std::vector<std::pair<std::string, std::string>> attachments;
};

/// Throws kUnsupportedMeasure for names that are not ranked-list MED measures.
MeasureSpec make_measure(const Config& config);

/// Keeps a seeded, uniformly chosen fraction of the judgments. For a fixed
/// seed the sample for a smaller fraction is a subset of the sample for a
/// larger one.
JudgmentSet sample_judgments(const JudgmentSet& all, double fraction, std::uint64_t seed);

/// Per-topic MED of two runs plus the mean. Throws kInvalidPair if the runs
/// share no topic.
Report compare(const NamedInput& a, const NamedInput& b, const std::optional<std::string>& qrels,
               const Config& config);

/// Run-by-run matrix of mean per-topic values. Unparseable runs are skipped
/// with a warning; fewer than two usable runs is an error.
Report matrix(const std::vector<NamedInput>& runs, const std::optional<std::string>& qrels,
              const Config& config);

/// For each fraction, MED of every run pair with that share of the
/// judgments applied, and the actual effectiveness difference where every
/// ranked document is judged.
Report sweep(const std::vector<NamedInput>& runs, const std::string& qrels,
             const std::vector<double>& fractions, const Config& config);

}  // namespace med::cli
