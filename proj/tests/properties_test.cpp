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

#include <doctest.h>

#include <cmath>

#include "med/dotprod.hpp"
#include "med/medu.hpp"
#include "med/oracle.hpp"
#include "support/cases.hpp"
#include "support/u_reference.hpp"

using namespace med;
using namespace med::testing;

namespace {

double eps_of(const MedOutcome& o) { return o.epsilon.value_or(0.0); }

// Adds judgments for further documents of the lists on top of `base`.
JudgmentSet extend(Rng& rng, const JudgmentSet& base, const MeasureSpec& m,
                   const std::vector<const RankedList*>& lists) {
  JudgmentSet out = base;
  const JudgmentSet more = judgments_for(rng, m, lists, 0.4);
  for (const auto& [key, grade] : more.entries()) {
    if (!out.find(key.first, key.second)) out.set(key.first, key.second, grade);
  }
  return out;
}

}  // namespace

TEST_CASE("symmetry is exact") {
  Rng rng(101);
  for (int iter = 0; iter < 200; ++iter) {
    auto t = random_triple(rng, 6);
    const std::size_t k = uniform(rng, 1, 6);
    for (const auto& m : small_measures(k)) {
      JudgmentSet j = judgments_for(rng, m, {&t.a, &t.b}, 0.3);
      CHECK(med_of(t.a, t.b, j, m).value == med_of(t.b, t.a, j, m).value);
    }
  }
}

TEST_CASE("identity: a list filling the depth is at distance zero from itself") {
  Rng rng(102);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t k = uniform(rng, 1, 6);
    RankedList a = random_list(rng, "t", 12, k);
    for (const auto& m : small_measures(k)) {
      JudgmentSet j = judgments_for(rng, m, {&a}, 0.5);
      const double v = med_of(a, a, j, m).value;
      if (std::holds_alternative<Rbp>(m)) {
        CHECK(v == doctest::Approx(std::pow(0.9, static_cast<double>(k))).epsilon(1e-14));
      } else {
        CHECK(v == 0.0);
      }
    }
  }
}

TEST_CASE("triangle inequality") {
  Rng rng(103);
  for (int iter = 0; iter < 300; ++iter) {
    auto t = random_triple(rng, 6);
    const std::size_t k = uniform(rng, 1, 6);
    for (const auto& m : small_measures(k)) {
      JudgmentSet j = judgments_for(rng, m, {&t.a, &t.b, &t.c}, 0.3);
      const auto ab = med_of(t.a, t.b, j, m), ac = med_of(t.a, t.c, j, m), cb = med_of(t.c, t.b, j, m);
      CHECK(ab.value <= ac.value + cb.value + 1e-9 + eps_of(ac) + eps_of(cb));
    }
  }
}

TEST_CASE("more judgments never increase MED") {
  Rng rng(104);
  for (int iter = 0; iter < 200; ++iter) {
    auto [a, b] = random_lists(rng, 6);
    const std::size_t k = uniform(rng, 1, 6);
    for (const auto& m : small_measures(k)) {
      JudgmentSet j1 = judgments_for(rng, m, {&a, &b}, 0.2);
      JudgmentSet j2 = extend(rng, j1, m, {&a, &b});
      const auto coarse = med_of(a, b, j1, m), fine = med_of(a, b, j2, m);
      CHECK(fine.value <= coarse.value + 1e-12 + eps_of(coarse));
    }
  }
}

TEST_CASE("fully judged lists reduce to the score difference") {
  Rng rng(105);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t k = uniform(rng, 1, 6);
    RankedList a = random_list(rng, "t", 10, k), b = random_list(rng, "t", 10, k);
    for (const auto& m : small_measures(k)) {
      JudgmentSet j = judgments_for(rng, m, {&a, &b}, 1.0);
      const auto pair = align(a, b, k, j, measure_scale(m));
      std::vector<double> va, vb;
      for (std::size_t i = 0; i < k; ++i) {
        va.push_back(pair.side_a[i].fixed_value());
        vb.push_back(pair.side_b[i].fixed_value());
      }
      double expect = std::abs(evaluate(m, va) - evaluate(m, vb));
      if (std::holds_alternative<Rbp>(m)) expect += std::pow(0.9, static_cast<double>(k));  // unknown tail
      CHECK(compute_med(pair, m).value == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("without judged ranks both directions reach the same maximum") {
  Rng rng(106);
  for (int iter = 0; iter < 300; ++iter) {
    auto [a, b] = random_lists(rng, 8);
    const std::size_t k = uniform(rng, 1, 8);
    const auto pair = align(a, b, k);
    for (const auto& m : {precision_measure(k), ndcg_measure(k, 0.75), rbp_measure(0.8)}) {
      CHECK(maximize_direction(pair, m).value ==
            doctest::Approx(maximize_direction(pair.swapped(), m).value).epsilon(1e-12));
    }
  }
}

TEST_CASE("nDCG MED does not depend on the logarithm base") {
  Rng rng(107);
  for (int iter = 0; iter < 200; ++iter) {
    auto [a, b] = random_lists(rng, 8);
    const std::size_t k = uniform(rng, 1, 8);
    const GradeScale scale = GradeScale::from_levels(2);
    JudgmentSet j = random_judgments(rng, {&a, &b}, 0.3, 2);
    const auto pair = align(a, b, k, j, scale);
    const double base2 = med_dot(pair, ndcg_measure(k, 0.75, 2.0)).value;
    CHECK(med_dot(pair, ndcg_measure(k, 0.75, 10.0)).value == doctest::Approx(base2).epsilon(1e-12));
    CHECK(med_dot(pair, ndcg_measure(k, 0.75, std::exp(1.0))).value == doctest::Approx(base2).epsilon(1e-12));
  }
}

TEST_CASE("RBP MED shrinks with depth by at most twice the residual") {
  Rng rng(108);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t k = uniform(rng, 1, 6);
    auto [a, b] = random_lists(rng, k + 10);
    JudgmentSet j = random_judgments(rng, {&a, &b}, 0.3, 1);
    const double start = med_rbp(align(a, b, k, j, GradeScale::binary()), 0.9).value;
    double prev = start;
    for (std::size_t d = k + 1; d <= k + 10; ++d) {
      const double v = med_rbp(align(a, b, d, j, GradeScale::binary()), 0.9).value;
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
    CHECK(start - prev <= 2.0 * std::pow(0.9, static_cast<double>(k)) + 1e-12);
  }
}

TEST_CASE("dot-product MED matches the exhaustive oracle") {
  Rng rng(109);
  const std::vector<double> binary{0.0, 1.0};
  const std::vector<double> graded{0.0, 0.25, 0.75};
  for (int iter = 0; iter < 200; ++iter) {
    auto [a, b] = random_lists(rng, 6);
    const std::size_t k = uniform(rng, 1, 6);
    JudgmentSet jb = random_judgments(rng, {&a, &b}, 0.3, 1);
    JudgmentSet jg = random_judgments(rng, {&a, &b}, 0.3, 2);
    const auto pb = align(a, b, k, jb, GradeScale::binary());
    const auto pg = align(a, b, k, jg, GradeScale::from_levels(2));
    CHECK(med_precision(pb, k).value == doctest::Approx(brute_force_med(pb, PrecisionAt{k}, binary).value).epsilon(1e-12));
    CHECK(med_rbp(pb, 0.9).value == doctest::Approx(brute_force_med(pb, Rbp{0.9}, binary).value).epsilon(1e-12));
    CHECK(med_map(pb, k).value == doctest::Approx(brute_force_med(pb, MapAt{k}, binary).value).epsilon(1e-12));
    const NdcgAt nd{k, GradeScale::from_levels(2)};
    CHECK(med_ndcg(pg, k, nd.scale).value == doctest::Approx(brute_force_med(pg, nd, graded).value).epsilon(1e-12));
  }
}

TEST_CASE("MED-U metric properties") {
  Rng rng(110);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t l = uniform(rng, 1, 200);
    const auto a = random_trailtext(rng, 3, 150, uniform(rng, 0, 6), 60);
    const auto b = random_trailtext(rng, 3, 150, uniform(rng, 0, 6), 60);
    const auto c = random_trailtext(rng, 3, 150, uniform(rng, 0, 6), 60);
    const double ab = med_u(a, b, l).value;
    CHECK(ab == med_u(b, a, l).value);
    CHECK(ab <= med_u(a, c, l).value + med_u(c, b, l).value + 1e-9);
    CHECK(ab == doctest::Approx(per_char_med_u(a, b, l, UGain::kUnit)).epsilon(1e-10));

    Trailtext full{"t", {{"f", 0, l}}};
    full.passages.insert(full.passages.end(), a.passages.begin(), a.passages.end());
    CHECK(med_u(full, full, l).value == 0.0);
  }
}
