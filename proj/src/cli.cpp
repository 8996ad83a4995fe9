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

#include "med/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "med/rbo.hpp"

namespace med::cli {

namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results land by index,
// so output order never depends on scheduling. The exception from the
// lowest failing index is rethrown.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, std::size_t jobs, Fn fn) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void check_config(const Config& c) {
  if (!(c.psi > 0.0 && c.psi < 1.0)) throw Error(ErrorKind::kInvalidArgument, "--psi must be in (0, 1)");
  if (!(c.fraction >= 0.0 && c.fraction <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "--fraction must be in [0, 1]");
  }
  if (c.fraction < 1.0 && !c.seed) throw Error(ErrorKind::kInvalidArgument, "--seed is required when --fraction < 1");
  if (c.k && *c.k == 0) throw Error(ErrorKind::kInvalidArgument, "--k must be >= 1");
  if (c.depth && *c.depth == 0) throw Error(ErrorKind::kInvalidArgument, "--depth must be >= 1");
  if (c.l == 0) throw Error(ErrorKind::kInvalidArgument, "--l must be >= 1");
  if (c.rg && !(*c.rg > 0.0 && *c.rg <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "--rg must be in (0, 1]");
}

std::vector<std::string> common_topics(const RunFile& a, const RunFile& b) {
  std::vector<std::string> out;
  for (const auto& [topic, list] : a.topics) {
    if (b.topics.count(topic)) out.push_back(topic);
  }
  return out;
}

template <class Map>
std::vector<std::string> common_keys(const Map& a, const Map& b) {
  std::vector<std::string> out;
  for (const auto& [key, v] : a) {
    if (b.count(key)) out.push_back(key);
  }
  return out;
}

struct TopicResult {
  double value = 0.0;
  Direction direction = Direction::kNone;
  std::optional<double> epsilon;
  std::optional<double> actual;
  std::string qubo;
};

std::size_t list_depth(const Config& c, const RankedList& a, const RankedList& b) {
  if (c.depth) return *c.depth;
  return std::max<std::size_t>({a.size(), b.size(), 1});
}

// Effectiveness difference when every rank the measure sees is judged.
std::optional<double> actual_difference(const AlignedPair& pair, const MeasureSpec& m) {
  if (std::holds_alternative<Rbp>(m)) return std::nullopt;
  std::vector<double> a(pair.depth), b(pair.depth);
  for (std::size_t i = 0; i < pair.depth; ++i) {
    if (!pair.side_a[i].is_predetermined() || !pair.side_b[i].is_predetermined()) return std::nullopt;
    a[i] = pair.side_a[i].fixed_value();
    b[i] = pair.side_b[i].fixed_value();
  }
  return std::abs(evaluate(m, a) - evaluate(m, b));
}

TopicResult ranked_topic(const RankedList& a, const RankedList& b, const Config& c,
                         const MeasureSpec* m, const JudgmentSet& judgments, bool want_actual) {
  TopicResult r;
  if (c.measure == "rbo") {
    r.value = rbo(a, b, {c.psi, list_depth(c, a, b)});
    return r;
  }
  const std::size_t depth = measure_depth(*m).value_or(list_depth(c, a, b));
  const AlignedPair pair = align(a, b, depth, judgments, measure_scale(*m));
  MedOutcome out = compute_med(pair, *m);
  r.value = out.value;
  r.direction = out.direction;
  r.epsilon = out.epsilon;
  if (want_actual) r.actual = actual_difference(pair, *m);
  if (c.dump_qubo) {
    if (const auto* map = std::get_if<MapAt>(m)) r.qubo = write_qubo(build_qubo(pair, map->k));
  }
  return r;
}

struct Inputs {
  std::vector<std::string> labels;
  std::vector<RunFile> runs;                                 // ranked measures
  std::vector<std::map<std::string, Trailtext>> passages;    // u
};

bool is_passage_measure(const Config& c) { return c.measure == "u"; }

std::vector<std::string> unique_labels(const std::vector<std::string>& tags,
                                       const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const bool clash = tags[i].empty() ||
                       std::count(tags.begin(), tags.end(), tags[i]) > 1;
    out.push_back(clash ? names[i] : tags[i]);
  }
  return out;
}

Inputs load(const std::vector<NamedInput>& files, const Config& c, std::vector<std::string>* warnings) {
  Inputs in;
  std::vector<std::string> tags, names;
  for (const auto& f : files) {
    try {
      if (is_passage_measure(c)) {
        in.passages.push_back(parse_passage_run(f.text));
        tags.push_back("");
      } else {
        in.runs.push_back(parse_run(f.text));
        tags.push_back(in.runs.back().tag);
      }
      names.push_back(f.name);
    } catch (const Error& e) {
      if (!warnings) throw;
      warnings->push_back("skipping " + f.name + ": " + e.what());
    }
  }
  in.labels = unique_labels(tags, names);
  return in;
}

JudgmentSet load_judgments(const std::optional<std::string>& qrels, const Config& c,
                           const MeasureSpec* m, std::vector<std::string>& warnings) {
  if (!qrels || !m) return {};
  Qrels q = parse_qrels(*qrels, measure_scale(*m));
  if (q.clamped) warnings.push_back(fmt::format("{} qrels grades clamped into the scale", q.clamped));
  if (q.duplicates) warnings.push_back(fmt::format("{} duplicate qrels entries (last kept)", q.duplicates));
  if (c.fraction < 1.0) return sample_judgments(q.judgments, c.fraction, *c.seed);
  return q.judgments;
}

std::optional<MeasureSpec> measure_or_none(const Config& c) {
  if (c.measure == "rbo" || c.measure == "u") return std::nullopt;
  return make_measure(c);
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

}  // namespace

MeasureSpec make_measure(const Config& c) {
  check_config(c);
  if (c.measure == "precision") return PrecisionAt{c.k.value_or(10)};
  if (c.measure == "ndcg") return NdcgAt{c.k.value_or(20), GradeScale::from_levels(c.grade_levels)};
  if (c.measure == "rbp") return Rbp{c.psi};
  if (c.measure == "map") {
    TabuParams tabu;
    tabu.seed = c.seed.value_or(1);
    return MapAt{c.k.value_or(100), tabu, kExactLimit};
  }
  if (c.measure == "err") {
    GradeScale scale = GradeScale::from_levels(c.grade_levels);
    ErrParams p{c.rg.value_or(scale.top().value()), c.depth.value_or(30), c.pmax};
    return ErrMeasure{p, scale};
  }
  throw Error(ErrorKind::kUnsupportedMeasure, "'" + c.measure + "' is not a ranked-list MED measure");
}

JudgmentSet sample_judgments(const JudgmentSet& all, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "fraction must be in [0, 1]");
  }
  std::vector<const std::pair<const JudgmentSet::Key, int>*> entries;
  for (const auto& e : all.entries()) entries.push_back(&e);
  // One permutation per seed; every fraction takes a prefix of it.
  std::mt19937_64 rng(seed);
  for (std::size_t i = entries.size(); i > 1; --i) {
    std::swap(entries[i - 1], entries[rng() % i]);
  }
  const auto keep = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(entries.size())));
  JudgmentSet out;
  for (std::size_t i = 0; i < keep; ++i) out.set(entries[i]->first.first, entries[i]->first.second, entries[i]->second);
  return out;
}

Report compare(const NamedInput& a, const NamedInput& b, const std::optional<std::string>& qrels,
               const Config& config) {
  check_config(config);
  Report report;
  const auto measure = measure_or_none(config);
  const MeasureSpec* m = measure ? &*measure : nullptr;
  Inputs in = load({a, b}, config, nullptr);
  const JudgmentSet judgments = load_judgments(qrels, config, m, report.warnings);

  std::vector<std::string> topics;
  std::vector<TopicResult> results;
  if (is_passage_measure(config)) {
    topics = common_keys(in.passages[0], in.passages[1]);
    results = parallel_map<TopicResult>(topics.size(), config.jobs, [&](std::size_t i) {
      UOutcome u = med_u(in.passages[0].at(topics[i]), in.passages[1].at(topics[i]), config.l, config.u_gain);
      return TopicResult{u.value, u.direction, std::nullopt, std::nullopt, {}};
    });
  } else {
    topics = common_topics(in.runs[0], in.runs[1]);
    results = parallel_map<TopicResult>(topics.size(), config.jobs, [&](std::size_t i) {
      return ranked_topic(in.runs[0].topics.at(topics[i]), in.runs[1].topics.at(topics[i]), config, m,
                          judgments, false);
    });
  }
  if (topics.empty()) throw Error(ErrorKind::kInvalidPair, "runs share no topic");

  report.csv = "topic,value,direction,epsilon\n";
  std::vector<double> values;
  for (std::size_t i = 0; i < topics.size(); ++i) {
    const TopicResult& r = results[i];
    values.push_back(r.value);
    const std::string_view dir = config.measure == "rbo" ? "" : to_string(r.direction);
    report.csv += fmt::format("{},{},{},{}\n", topics[i], format_number(r.value), dir, optional_number(r.epsilon));
    if (!r.qubo.empty()) report.attachments.emplace_back(topics[i] + ".qubo", r.qubo);
  }
  report.csv += fmt::format("mean,{},,\n", format_number(aggregate(values)));
  return report;
}

Report matrix(const std::vector<NamedInput>& runs, const std::optional<std::string>& qrels,
              const Config& config) {
  check_config(config);
  Report report;
  const auto measure = measure_or_none(config);
  const MeasureSpec* m = measure ? &*measure : nullptr;
  Inputs in = load(runs, config, &report.warnings);
  const std::size_t n = in.labels.size();
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "matrix needs at least two readable runs");
  const JudgmentSet judgments = load_judgments(qrels, config, m, report.warnings);
  const bool similarity = config.measure == "rbo";

  struct Unit {
    std::size_t i, j;
    std::string topic;
  };
  std::vector<Unit> units;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = similarity ? i : i + 1; j < n; ++j) {
      std::vector<std::string> topics = is_passage_measure(config)
                                            ? common_keys(in.passages[i], in.passages[j])
                                            : common_topics(in.runs[i], in.runs[j]);
      if (topics.empty()) {
        throw Error(ErrorKind::kInvalidPair, in.labels[i] + " and " + in.labels[j] + " share no topic");
      }
      for (auto& t : topics) units.push_back({i, j, std::move(t)});
    }
  }

  const auto values = parallel_map<double>(units.size(), config.jobs, [&](std::size_t u) {
    const Unit& unit = units[u];
    if (is_passage_measure(config)) {
      return med_u(in.passages[unit.i].at(unit.topic), in.passages[unit.j].at(unit.topic), config.l,
                   config.u_gain)
          .value;
    }
    return ranked_topic(in.runs[unit.i].topics.at(unit.topic), in.runs[unit.j].topics.at(unit.topic),
                        config, m, judgments, false)
        .value;
  });

  Table table{"run", in.labels, in.labels, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))};
  std::size_t u = 0;
  while (u < units.size()) {
    const std::size_t i = units[u].i, j = units[u].j;
    std::vector<double> cell;
    for (; u < units.size() && units[u].i == i && units[u].j == j; ++u) cell.push_back(values[u]);
    table.values[i][j] = table.values[j][i] = aggregate(cell);
  }
  report.csv = write_matrix(table);
  return report;
}

Report sweep(const std::vector<NamedInput>& runs, const std::string& qrels,
             const std::vector<double>& fractions, const Config& config) {
  check_config(config);
  if (config.measure == "rbo" || config.measure == "u") {
    throw Error(ErrorKind::kUnsupportedMeasure, "sweep needs a judged ranked-list measure");
  }
  const MeasureSpec measure = make_measure(config);
  Report report;
  Inputs in = load(runs, config, nullptr);
  const std::size_t n = in.labels.size();
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "sweep needs at least two runs");

  Qrels q = parse_qrels(qrels, measure_scale(measure));
  if (q.judgments.empty()) throw Error(ErrorKind::kInvalidArgument, "qrels are empty");
  for (double f : fractions) {
    if (!(f >= 0.0 && f <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "fractions must lie in [0, 1]");
    if (f < 1.0 && !config.seed) throw Error(ErrorKind::kInvalidArgument, "--seed is required for fractions < 1");
  }

  std::vector<JudgmentSet> samples;
  for (double f : fractions) samples.push_back(sample_judgments(q.judgments, f, config.seed.value_or(0)));

  struct Unit {
    std::size_t f, i, j;
    std::string topic;
  };
  std::vector<Unit> units;
  for (std::size_t f = 0; f < fractions.size(); ++f) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (auto& t : common_topics(in.runs[i], in.runs[j])) units.push_back({f, i, j, t});
      }
    }
  }
  const auto results = parallel_map<TopicResult>(units.size(), config.jobs, [&](std::size_t u) {
    const Unit& unit = units[u];
    return ranked_topic(in.runs[unit.i].topics.at(unit.topic), in.runs[unit.j].topics.at(unit.topic), config,
                        &measure, samples[unit.f], true);
  });

  report.csv = "fraction,run_a,run_b,topic,med,actual\n";
  std::size_t u = 0;
  while (u < units.size()) {
    const Unit& head = units[u];
    std::vector<double> meds, actuals;
    bool all_actual = true;
    for (; u < units.size() && units[u].f == head.f && units[u].i == head.i && units[u].j == head.j; ++u) {
      const TopicResult& r = results[u];
      report.csv += fmt::format("{},{},{},{},{},{}\n", format_number(fractions[head.f]), in.labels[head.i],
                                in.labels[head.j], units[u].topic, format_number(r.value),
                                optional_number(r.actual));
      meds.push_back(r.value);
      if (r.actual) actuals.push_back(*r.actual);
      else all_actual = false;
    }
    const std::optional<double> mean_actual =
        all_actual ? std::optional<double>(aggregate(actuals)) : std::nullopt;
    report.csv += fmt::format("{},{},{},mean,{},{}\n", format_number(fractions[head.f]), in.labels[head.i],
                              in.labels[head.j], format_number(aggregate(meds)), optional_number(mean_actual));
  }
  return report;
}

}  // namespace med::cli
