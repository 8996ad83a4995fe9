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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. An optional argument names the med executable for
// the command-line determinism check.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "med/cli.hpp"
#include "med/dotprod.hpp"
#include "med/mederr.hpp"
#include "med/medmap.hpp"
#include "med/medu.hpp"
#include "med/oracle.hpp"
#include "med/rbo.hpp"
#include "support/cases.hpp"
#include "support/corpus.hpp"
#include "support/qubo.hpp"
#include "support/u_reference.hpp"

using namespace med;
using namespace med::testing;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<double> kBinary{0.0, 1.0};
const std::vector<double> kGraded{0.0, 0.25, 0.75};

// 1 ---------------------------------------------------------------------------

Verdict oracle_equivalence() {
  Rng rng(1001);
  const auto t0 = Clock::now();
  const GradeScale graded = GradeScale::from_levels(2);
  double worst = 0.0;
  std::size_t comparisons = 0;
  auto check = [&](double fast, const MedOutcome& slow) {
    worst = std::max(worst, std::abs(fast - slow.value));
    ++comparisons;
  };
  const int pairs = 500;
  for (int iter = 0; iter < pairs; ++iter) {
    auto [a, b] = random_lists(rng, 6);
    const std::size_t k = uniform(rng, 1, 6);

    const auto pb = align(a, b, k, random_judgments(rng, {&a, &b}, 0.3, 1), GradeScale::binary());
    check(med_precision(pb, k).value, brute_force_med(pb, PrecisionAt{k}, kBinary));
    check(med_ndcg(pb, k, GradeScale::binary()).value, brute_force_med(pb, NdcgAt{k, GradeScale::binary()}, kBinary));
    check(med_rbp(pb, 0.9).value, brute_force_med(pb, Rbp{0.9}, kBinary));

    const auto pg = align(a, b, k, random_judgments(rng, {&a, &b}, 0.3, 2), graded);
    DotProductMeasure prec = precision_measure(k);
    prec.top_grade = 0.75;
    DotProductMeasure rbp = rbp_measure(0.9);
    rbp.top_grade = 0.75;
    check(med_dot(pg, prec).value, brute_force_med(pg, PrecisionAt{k}, kGraded));
    check(med_ndcg(pg, k, graded).value, brute_force_med(pg, NdcgAt{k, graded}, kGraded));
    check(med_dot(pg, rbp).value, brute_force_med(pg, Rbp{0.9}, kGraded));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-12 && secs < 60.0,
          fmt::format("{} pairs, {} comparisons, max |diff| {:.3g}, {:.2f}s", pairs, comparisons, worst, secs)};
}

// 2 ---------------------------------------------------------------------------

Verdict metric_axioms() {
  Rng rng(1002);
  const int triples = 1000;
  std::vector<std::string> notes;
  bool pass = true;
  const char* names[] = {"precision", "ndcg", "rbp", "map", "err"};
  for (std::size_t mi = 0; mi < 5; ++mi) {
    std::size_t sym_fail = 0, id_fail = 0, tri_fail = 0;
    double worst_excess = -1.0;
    for (int iter = 0; iter < triples; ++iter) {
      auto t = random_triple(rng, 6);
      const std::size_t k = uniform(rng, 1, 6);
      MeasureSpec m = small_measures(k)[mi];
      if (auto* err = std::get_if<ErrMeasure>(&m)) err->params.depth = uniform(rng, 1, 8);
      const JudgmentSet j = judgments_for(rng, m, {&t.a, &t.b, &t.c}, 0.3);

      const auto ab = med_of(t.a, t.b, j, m), ba = med_of(t.b, t.a, j, m);
      const auto ac = med_of(t.a, t.c, j, m), cb = med_of(t.c, t.b, j, m);
      if (ab.value != ba.value) ++sym_fail;

      const double eps = std::max(ac.epsilon.value_or(0.0), cb.epsilon.value_or(0.0));
      const double excess = ab.value - ac.value - cb.value;
      worst_excess = std::max(worst_excess, excess);
      if (excess > 1e-9 + 2.0 * eps) ++tri_fail;

      // identity on a list that fills the depth
      const std::size_t depth = measure_depth(m).value_or(k);
      const RankedList full = random_list(rng, "t", 14, depth);
      const double self = compute_med(align(full, full, depth, j, measure_scale(m)), m).value;
      const double expect = std::holds_alternative<Rbp>(m) ? std::pow(0.9, static_cast<double>(depth)) : 0.0;
      if (self != expect) ++id_fail;
    }
    pass = pass && sym_fail == 0 && id_fail == 0 && tri_fail == 0;
    notes.push_back(fmt::format("{}: sym {} id {} tri {} (max excess {:.2g})", names[mi], sym_fail, id_fail,
                                tri_fail, worst_excess));
  }
  std::string detail = fmt::format("{} triples per measure, failures: ", triples);
  for (std::size_t i = 0; i < notes.size(); ++i) detail += (i ? "; " : "") + notes[i];
  detail += "; rbp self-distance is the unjudgeable tail 0.9^K";
  return {pass, detail};
}

// 3 ---------------------------------------------------------------------------

Verdict precision_closed_form() {
  Rng rng(1003);
  std::size_t mismatches = 0;
  const int pairs = 2000;
  for (int iter = 0; iter < pairs; ++iter) {
    auto [a, b] = random_lists(rng, 12);
    const std::size_t k = uniform(rng, 1, 12);
    std::size_t overlap = 0;
    for (std::size_t i = 0; i < std::min(k, a.size()); ++i) {
      const auto end = b.docs.begin() + static_cast<std::ptrdiff_t>(std::min(k, b.size()));
      if (std::find(b.docs.begin(), end, a.docs[i]) != end) ++overlap;
    }
    const double expect = static_cast<double>(k - overlap) / static_cast<double>(k);
    if (med_precision(align(a, b, k), k).value != expect) ++mismatches;
  }
  return {mismatches == 0, fmt::format("{} unjudged pairs, {} differ from (k - overlap)/k", pairs, mismatches)};
}

// 4 ---------------------------------------------------------------------------

Verdict rbp_depth() {
  Rng rng(1004);
  std::size_t increases = 0, too_far = 0;
  double worst_ratio = 0.0;
  const int pairs = 1000;
  for (int iter = 0; iter < pairs; ++iter) {
    const std::size_t k = uniform(rng, 1, 10);
    auto [a, b] = random_lists(rng, k + 10);
    const JudgmentSet j = random_judgments(rng, {&a, &b}, 0.3, 1);
    const double start = med_rbp(align(a, b, k, j, GradeScale::binary()), 0.9).value;
    double prev = start;
    for (std::size_t d = k + 1; d <= k + 10; ++d) {
      const double v = med_rbp(align(a, b, d, j, GradeScale::binary()), 0.9).value;
      if (v > prev + 1e-12) ++increases;
      prev = v;
    }
    const double bound = 2.0 * std::pow(0.9, static_cast<double>(k));
    if (start - prev > bound + 1e-12) ++too_far;
    worst_ratio = std::max(worst_ratio, (start - prev) / bound);
  }
  return {increases == 0 && too_far == 0,
          fmt::format("{} pairs extended K -> K+10: {} increases, {} over 2*0.9^K (largest share of bound {:.3f})",
                      pairs, increases, too_far, worst_ratio)};
}

// 5 ---------------------------------------------------------------------------

Verdict map_solver() {
  Rng rng(1005);
  const auto t0 = Clock::now();
  std::size_t tabu_instances = 0, tabu_mismatch = 0;
  auto compare_solvers = [&](const QuboProblem& q) {
    ++tabu_instances;
    if (solve_tabu(q).value != solve_exact(q).value) ++tabu_mismatch;
  };
  // instances built from list pairs
  std::size_t from_pairs = 0;
  while (from_pairs < 100) {
    const std::size_t k = uniform(rng, 2, 20);
    auto [a, b] = random_lists(rng, k);
    const auto q = build_qubo(align(a, b, k, random_judgments(rng, {&a, &b}, 0.2, 1), GradeScale::binary()), k);
    if (q.size() < 1 || q.size() > 12) continue;
    compare_solvers(q);
    ++from_pairs;
  }
  for (int iter = 0; iter < 100; ++iter) compare_solvers(random_qubo(rng, uniform(rng, 1, 12)));

  std::size_t objective_instances = 0, objective_mismatch = 0, assignments = 0;
  while (objective_instances < 100) {
    const std::size_t k = uniform(rng, 1, 8);
    const std::size_t pool = uniform(rng, 8, 11);
    RankedList a = random_list(rng, "t", pool, 8), b = random_list(rng, "t", pool, 8);
    const auto pair = align(a, b, k, random_judgments(rng, {&a, &b}, 0.2, 1), GradeScale::binary());
    const auto q = build_qubo(pair, k);
    if (q.size() == 0) continue;
    ++objective_instances;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q.size()); ++mask) {
      const Assignment z = assignment_from_mask(mask, q.size());
      auto [va, vb] = expand(pair, q, z);
      ++assignments;
      if (q.objective(z) != map_difference_exact(va, vb, k)) ++objective_mismatch;
    }
  }

  const RankedList xy{"t", {"x", "y"}}, yx{"t", {"y", "x"}};
  const double swapped = med_map(align(xy, yx, 2), 2).value;
  const double secs = seconds_since(t0);
  return {tabu_mismatch == 0 && objective_mismatch == 0 && swapped == 0.25 && secs < 120.0,
          fmt::format("tabu != exact on {}/{} instances (k' <= 12); objective != direct on {}/{} assignments "
                      "over {} instances; swapped MAP@2 = {}; {:.2f}s",
                      tabu_mismatch, tabu_instances, objective_mismatch, assignments, objective_instances, swapped,
                      secs)};
}

// 6 ---------------------------------------------------------------------------

Verdict err_bound() {
  Rng rng(1006);
  const double eps5 = epsilon_bound(5, 0.75);
  const GradeScale scale = GradeScale::from_levels(2);
  std::size_t instances = 0, with_cut = 0, below = 0, above = 0, grade_gap = 0;
  std::size_t most_bound = 0;
  double worst_gap = 0.0;
  while (instances < 300) {
    const std::size_t depth = uniform(rng, 4, 12);
    RankedList a = random_list(rng, "t", depth + 2, depth), b = random_list(rng, "t", depth + 2, depth);
    const auto pair = align(a, b, depth, random_judgments(rng, {&a, &b}, 0.1, 2), scale);
    std::size_t vars = 0, bound = 0;
    for (std::size_t i = 0; i < depth; ++i) {
      if (pair.side_a[i].is_free()) ++vars;
      if (pair.side_b[i].is_free()) ++vars;
      if (pair.side_a[i].is_bound()) ++bound;
    }
    vars += bound;
    if (vars > 12 || bound > 12) continue;
    ++instances;
    most_bound = std::max(most_bound, bound);

    const ErrMeasure m{ErrParams{0.75, depth, 5}, scale};
    const auto fast = med_err(pair, m.params);
    const double eps = fast.epsilon.value_or(0.0);
    if (eps > 0.0) ++with_cut;
    const double opt = brute_force_med(pair, m, std::vector<double>{0.0, 0.75}).value;
    const double opt_full = brute_force_med(pair, m, kGraded).value;
    if (fast.value > opt + 1e-12) ++above;
    if (fast.value < opt - eps - 1e-12) ++below;
    worst_gap = std::max(worst_gap, opt - fast.value);
    if (std::abs(opt_full - opt) > 1e-12) ++grade_gap;
  }
  return {eps5 < 0.0002 && below == 0 && above == 0 && grade_gap == 0,
          fmt::format("epsilon_bound(5, 3/4) = {:.8f}; {} instances (up to {} bound, {} cut off at p_max): "
                      "{} above optimum, {} below optimum - eps (largest shortfall {:.2g}); "
                      "intermediate grades beat {{0, r_G}} on {}",
                      eps5, instances, most_bound, with_cut, above, below, worst_gap, grade_gap)};
}

// 7 ---------------------------------------------------------------------------

Verdict judgment_monotonicity() {
  Rng rng(1007);
  const Corpus corpus = make_corpus(rng, 20, 30, 2);
  const std::vector<double> sigmas{2.0, 4.0, 8.0, 16.0};
  std::vector<std::vector<RankedList>> runs(sigmas.size());
  for (std::size_t r = 0; r < sigmas.size(); ++r) {
    for (const auto& topic : corpus.topics) runs[r].push_back(perturb(rng, corpus, topic, sigmas[r], 20));
  }
  const std::vector<double> fractions{0.0, 0.25, 0.75, 1.0};
  const std::vector<MeasureSpec> measures{PrecisionAt{10}, NdcgAt{20, GradeScale::from_levels(2)}, MapAt{10},
                                          ErrMeasure{ErrParams{0.75, 20, 5}, GradeScale::from_levels(2)},
                                          Rbp{0.9}};

  std::size_t sequences = 0, increases = 0, reduction_checked = 0, reduction_fail = 0;
  double worst_reduction = 0.0;
  for (const auto& m : measures) {
    const Qrels q = parse_qrels(corpus.qrels, measure_scale(m));
    std::vector<JudgmentSet> samples;
    for (double f : fractions) samples.push_back(cli::sample_judgments(q.judgments, f, 7));
    const bool is_map = std::holds_alternative<MapAt>(m);
    for (std::size_t r1 = 0; r1 < runs.size(); ++r1) {
      for (std::size_t r2 = r1 + 1; r2 < runs.size(); ++r2) {
        for (std::size_t t = 0; t < corpus.topics.size(); ++t) {
          const RankedList& a = runs[r1][t];
          const RankedList& b = runs[r2][t];
          const std::size_t depth = measure_depth(m).value_or(20);
          double prev = 0.0, prev_eps = 0.0;
          ++sequences;
          for (std::size_t f = 0; f < fractions.size(); ++f) {
            const auto pair = align(a, b, depth, samples[f], measure_scale(m));
            const auto out = compute_med(pair, m);
            if (f > 0 && out.value > prev + 1e-12 + prev_eps) ++increases;
            prev = out.value;
            prev_eps = out.epsilon.value_or(0.0);
            if (f + 1 == fractions.size()) {
              std::vector<double> va, vb;
              for (std::size_t i = 0; i < depth; ++i) {
                va.push_back(pair.side_a[i].fixed_value());
                vb.push_back(pair.side_b[i].fixed_value());
              }
              double expect = std::abs(evaluate(m, va) - evaluate(m, vb));
              if (std::holds_alternative<Rbp>(m)) expect += std::pow(0.9, static_cast<double>(depth));
              if (is_map) {
                std::vector<int> ia(va.begin(), va.end()), ib(vb.begin(), vb.end());
                expect = static_cast<double>(boost::multiprecision::abs(map_difference_exact(ia, ib, depth)));
              }
              ++reduction_checked;
              const double gap = std::abs(out.value - expect);
              worst_reduction = std::max(worst_reduction, gap);
              if (is_map ? gap != 0.0 : gap > 1e-12) ++reduction_fail;
            }
          }
        }
      }
    }
  }
  return {increases == 0 && reduction_fail == 0,
          fmt::format("{} per-pair sequences over fractions 0/0.25/0.75/1 (5 measures, 20 topics): {} increases; "
                      "fully judged: {}/{} differ from |S(A)-S(B)| (max {:.2g}; MAP compared exactly, "
                      "RBP plus its unjudgeable tail 0.9^K)",
                      sequences, increases, reduction_fail, reduction_checked, worst_reduction)};
}

// 8 ---------------------------------------------------------------------------

Verdict med_u_intervals() {
  Rng rng(1008);
  double worst = 0.0, worst_score = 0.0;
  const int configs = 200;
  for (int iter = 0; iter < configs; ++iter) {
    const std::size_t l = uniform(rng, 1, 500);
    const auto a = random_trailtext(rng, 4, 400, uniform(rng, 0, 10), 150);
    const auto b = random_trailtext(rng, 4, 400, uniform(rng, 0, 10), 150);
    const UGain gain = iter % 2 ? UGain::kHalf : UGain::kUnit;
    worst = std::max(worst, std::abs(med_u(a, b, l, gain).value - per_char_med_u(a, b, l, gain)));

    // u_score on random disjoint intervals against a per-position sum
    std::vector<Interval> ivs;
    double direct = 0.0;
    for (std::size_t pos = 1; pos <= l;) {
      const std::size_t len = uniform(rng, 1, 40);
      const std::size_t last = std::min(l, pos + len - 1);
      if (coin(rng, 0.5)) {
        ivs.push_back({pos, last});
        for (std::size_t i = pos; i <= last; ++i) direct += discount_at(i, l);
      }
      pos = last + 1 + uniform(rng, 0, 5);
    }
    worst_score = std::max(worst_score, std::abs(u_score(ivs, l) - direct));
  }

  const std::size_t l = kDefaultTrailLength;
  double analytic = 0.0;
  for (std::size_t i = 1; i <= l; ++i) analytic += discount_at(i, l);
  const Trailtext ta{"t", {{"a", 0, l}}}, tb{"t", {{"b", 0, l}}};
  const double unit = med_u(ta, tb, l).value;
  const double half = med_u(ta, tb, l, UGain::kHalf).value;
  const bool max_ok = std::abs(unit - analytic) <= 1e-9 && std::abs(half - analytic / 2.0) <= 1e-9 &&
                      std::abs(analytic - static_cast<double>(l - 1) / 2.0) <= 1e-9;
  return {worst <= 1e-9 && worst_score <= 1e-9 && max_ok,
          fmt::format("{} configs (l <= 500): max |interval - per-character| {:.2g}, u_score {:.2g}; "
                      "disjoint l = 12000: {} (sum of discounts {}), half gain {} = (l - 1)/4",
                      configs, worst, worst_score, unit, analytic, half)};
}

// 9 ---------------------------------------------------------------------------

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    for (std::size_t t = i; t <= j; ++t) rank[idx[t]] = (static_cast<double>(i + j) / 2.0) + 1.0;
    i = j + 1;
  }
  return rank;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = average_ranks(x), ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

Verdict synthetic_correlation() {
  Rng rng(1009);
  const Corpus corpus = make_corpus(rng, 20, 100, 2);
  const GradeScale scale = GradeScale::from_levels(2);
  const Qrels qrels = parse_qrels(corpus.qrels, scale);
  const JudgmentSet quarter = cli::sample_judgments(qrels.judgments, 0.25, 9);
  const NdcgAt ndcg{20, scale};

  // each run perturbs the common ideal ranking; pairs are (ideal, run)
  std::vector<double> med_ndcg_mean, actual_mean, med_rbp_mean, rbo_distance_mean;
  for (int level = 0; level < 20; ++level) {
    const double sigma = 0.5 * std::pow(1.3, level);
    double m1 = 0.0, act = 0.0, m2 = 0.0, dist = 0.0;
    for (const auto& topic : corpus.topics) {
      const RankedList ideal = perturb(rng, corpus, topic, 0.0, 50);
      const RankedList run = perturb(rng, corpus, topic, sigma, 50);
      m1 += compute_med(align(ideal, run, 20, quarter, scale), ndcg).value;
      const auto full = align(ideal, run, 20, qrels.judgments, scale);
      std::vector<double> va, vb;
      for (std::size_t i = 0; i < 20; ++i) {
        va.push_back(full.side_a[i].fixed_value());
        vb.push_back(full.side_b[i].fixed_value());
      }
      act += std::abs(evaluate(ndcg, va) - evaluate(ndcg, vb));
      m2 += med_rbp(align(ideal, run, 50), 0.9).value;
      dist += 1.0 - rbo(ideal, run, {0.9, 50});
    }
    const double n = static_cast<double>(corpus.topics.size());
    med_ndcg_mean.push_back(m1 / n);
    actual_mean.push_back(act / n);
    med_rbp_mean.push_back(m2 / n);
    rbo_distance_mean.push_back(dist / n);
  }
  const double rho_ndcg = spearman(med_ndcg_mean, actual_mean);
  const double rho_rbo = spearman(med_rbp_mean, rbo_distance_mean);
  return {rho_ndcg >= 0.8 && rho_rbo >= 0.8,
          fmt::format("20 noise levels x 20 topics: Spearman(MED-nDCG@20 with 25% judgments, actual nDCG@20 "
                      "difference) = {:.3f}; Spearman(MED-RBP, 1 - RBO) = {:.3f}",
                      rho_ndcg, rho_rbo)};
}

// 10 --------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism(const std::string& executable) {
  Rng rng(1010);
  const Corpus corpus = make_corpus(rng, 8, 40, 2);
  std::vector<cli::NamedInput> runs;
  for (int r = 0; r < 4; ++r) {
    std::vector<RankedList> lists;
    for (const auto& topic : corpus.topics) lists.push_back(perturb(rng, corpus, topic, 3.0 + 4.0 * r, 25));
    runs.push_back({"run" + std::to_string(r), run_text(lists, "sys" + std::to_string(r))});
  }
  std::string passages_a, passages_b;
  for (const auto& topic : corpus.topics) {
    for (int p = 0; p < 6; ++p) {
      passages_a += fmt::format("{} {}-d{} {} {} {}\n", topic, topic, uniform(rng, 0, 9), uniform(rng, 0, 300),
                                uniform(rng, 1, 200), p + 1);
      passages_b += fmt::format("{} {}-d{} {} {} {}\n", topic, topic, uniform(rng, 0, 9), uniform(rng, 0, 300),
                                uniform(rng, 1, 200), p + 1);
    }
  }

  std::size_t library_checks = 0, library_diffs = 0;
  for (const std::string measure : {"precision", "ndcg", "rbp", "map", "err", "rbo", "u"}) {
    std::vector<std::string> outputs;
    for (std::size_t jobs : {1, 1, 2, 4, 8}) {
      cli::Config c;
      c.measure = measure;
      c.k = 10;
      c.seed = 5;
      c.fraction = 0.5;
      c.l = 600;
      c.jobs = jobs;
      std::string out;
      if (measure == "u") {
        out = cli::compare({"pa", passages_a}, {"pb", passages_b}, std::nullopt, c).csv;
      } else {
        out = cli::compare(runs[0], runs[1], corpus.qrels, c).csv + cli::matrix(runs, corpus.qrels, c).csv;
        if (measure != "rbo") out += cli::sweep(runs, corpus.qrels, {0.0, 0.25, 0.75, 1.0}, c).csv;
      }
      outputs.push_back(out);
    }
    for (const auto& o : outputs) {
      ++library_checks;
      if (o != outputs.front()) ++library_diffs;
    }
  }

  std::string exe_note = "executable not given";
  bool exe_ok = true;
  if (!executable.empty()) {
    const fs::path dir = fs::temp_directory_path() / fmt::format("med-acceptance-{}", ::getpid());
    fs::create_directories(dir / "runs");
    for (const auto& r : runs) std::ofstream(dir / "runs" / r.name, std::ios::binary) << r.text;
    std::ofstream(dir / "qrels", std::ios::binary) << corpus.qrels;
    const std::string common = fmt::format("--qrels {} --seed 11 --fraction 0.25", (dir / "qrels").string());
    const std::vector<std::string> commands{
        fmt::format("compare {} {} --measure map --k 20 {}", (dir / "runs/run0").string(),
                    (dir / "runs/run1").string(), common),
        fmt::format("matrix {} --measure ndcg {}", (dir / "runs").string(), common),
        fmt::format("sweep {} {} {} --measure err --qrels {} --seed 11", (dir / "runs/run0").string(),
                    (dir / "runs/run2").string(), (dir / "runs/run3").string(), (dir / "qrels").string()),
    };
    std::size_t diffs = 0, failures = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
      std::vector<std::string> outs;
      for (int jobs : {1, 4, 4}) {
        const fs::path out = dir / fmt::format("out{}-{}-{}.csv", i, jobs, outs.size());
        const std::string cmd =
            fmt::format("\"{}\" {} --jobs {} --out {} 2>>{}", executable, commands[i], jobs, out.string(),
                        (dir / "stderr.txt").string());
        if (std::system(cmd.c_str()) != 0) ++failures;
        outs.push_back(slurp(out));
      }
      for (const auto& o : outs) {
        if (o != outs.front() || o.empty()) ++diffs;
      }
    }
    fs::remove_all(dir);
    exe_ok = diffs == 0 && failures == 0;
    exe_note = fmt::format("executable: {} commands x jobs 1/4/4, {} differ, {} failed", commands.size(), diffs,
                           failures);
  }
  return {library_diffs == 0 && exe_ok,
          fmt::format("library: {} outputs over 7 measures x jobs 1/1/2/4/8, {} differ; {}", library_checks,
                      library_diffs, exe_note)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string executable = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"oracle equivalence (dot-product)", oracle_equivalence},
      {"metric axioms", metric_axioms},
      {"MED-precision closed form", precision_closed_form},
      {"MED-RBP depth behavior", rbp_depth},
      {"MED-MAP solver", map_solver},
      {"MED-ERR bound", err_bound},
      {"judgment monotonicity", judgment_monotonicity},
      {"MED-U intervals", med_u_intervals},
      {"synthetic correlation", synthetic_correlation},
      {"determinism", [&] { return determinism(executable); }},
  };
  std::size_t passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (v.pass) ++passed;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << v.detail
              << std::endl;
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed" << std::endl;
  return passed == criteria.size() ? EXIT_SUCCESS : EXIT_FAILURE;
}
