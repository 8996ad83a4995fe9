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

#include "med/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace med {

namespace {

Rational map_score_exact(std::span<const int> c, std::size_t k) {
  Rational total = 0;
  int hits = 0;
  for (std::size_t i = 0; i < std::min(k, c.size()); ++i) {
    hits += c[i];
    if (c[i]) total += Rational(hits, static_cast<long long>(i + 1));
  }
  return total / static_cast<long long>(k);
}

struct Variable {
  std::size_t a_pos = 0;  // used when on_a
  std::size_t b_pos = 0;  // used when on_b
  bool on_a = false;
  bool on_b = false;
};

}  // namespace

Rational map_difference_exact(std::span<const int> a, std::span<const int> b, std::size_t k) {
  return map_score_exact(a, k) - map_score_exact(b, k);
}

MedOutcome brute_force_med(const AlignedPair& pair, const MeasureSpec& measure,
                           std::span<const double> grades, OracleBudget budget) {
  if (grades.empty()) throw Error(ErrorKind::kInvalidArgument, "oracle needs at least one grade");
  const std::size_t depth = pair.depth;

  std::vector<Variable> vars;
  for (std::size_t i = 0; i < depth; ++i) {
    if (pair.side_a[i].is_free()) vars.push_back({i, 0, true, false});
  }
  for (std::size_t i = 0; i < depth; ++i) {
    if (pair.side_a[i].is_bound()) vars.push_back({i, pair.side_a[i].partner(), true, true});
  }
  for (std::size_t j = 0; j < depth; ++j) {
    if (pair.side_b[j].is_free()) vars.push_back({0, j, false, true});
  }

  double count = std::pow(static_cast<double>(grades.size()), static_cast<double>(vars.size()));
  if (count > static_cast<double>(budget.max_enumerations)) {
    throw Error(ErrorKind::kTooLarge, std::to_string(grades.size()) + "^" +
                                          std::to_string(vars.size()) + " assignments exceed budget");
  }

  std::vector<double> a(depth, 0.0), b(depth, 0.0);
  for (std::size_t i = 0; i < depth; ++i) {
    if (pair.side_a[i].is_predetermined()) a[i] = pair.side_a[i].fixed_value();
    if (pair.side_b[i].is_predetermined()) b[i] = pair.side_b[i].fixed_value();
  }

  const auto* map = std::get_if<MapAt>(&measure);
  const auto* rbp = std::get_if<Rbp>(&measure);
  const double top = grades.empty() ? 0.0 : *std::max_element(grades.begin(), grades.end());
  const double tail = rbp ? top * std::pow(rbp->psi, static_cast<double>(depth)) : 0.0;

  auto difference = [&]() -> double {
    if (map) {
      std::vector<int> ia(depth), ib(depth);
      for (std::size_t i = 0; i < depth; ++i) {
        auto to_bit = [](double v) {
          if (v != 0.0 && v != 1.0) throw Error(ErrorKind::kInvalidMeasure, "MAP needs 0/1 grades");
          return v == 1.0 ? 1 : 0;
        };
        ia[i] = to_bit(a[i]);
        ib[i] = to_bit(b[i]);
      }
      return static_cast<double>(map_difference_exact(ia, ib, map->k));
    }
    return evaluate(measure, a) - evaluate(measure, b);
  };

  std::vector<std::size_t> digit(vars.size(), 0);
  auto apply = [&]() {
    for (std::size_t v = 0; v < vars.size(); ++v) {
      const double g = grades[digit[v]];
      if (vars[v].on_a) a[vars[v].a_pos] = g;
      if (vars[v].on_b) b[vars[v].b_pos] = g;
    }
  };

  MedOutcome best;
  bool have = false;
  for (;;) {
    apply();
    const double diff = difference();
    const double value = std::abs(diff) + tail;
    if (!have || value > best.value) {
      best.value = value;
      best.direction = diff > 0.0 ? Direction::kA : diff < 0.0 ? Direction::kB : Direction::kNone;
      best.witness_a = a;
      best.witness_b = b;
      have = true;
    }
    // odometer, last variable fastest
    std::size_t v = vars.size();
    while (v > 0 && digit[v - 1] + 1 == grades.size()) digit[--v] = 0;
    if (v == 0) break;
    ++digit[v - 1];
  }
  if (tail > 0.0 && best.direction == Direction::kNone) best.direction = Direction::kA;
  best.tail = tail;
  return best;
}

}  // namespace med
