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

#include "med/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <unordered_set>

#include <fmt/format.h>

namespace med {

namespace {

// Splits text into whitespace-separated fields line by line, skipping blank
// and comment lines. Calls fn(line_number, fields).
template <class Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::vector<std::string_view> fields;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    fields.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (fields.empty() || fields.front().front() == '#') continue;
    fn(line_no, fields);
  }
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::kParseError, "line " + std::to_string(line_no) + ": " + what);
}

template <class T>
T parse_number(std::string_view field, std::size_t line_no, const char* name) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    parse_fail(line_no, std::string("bad ") + name + " '" + std::string(field) + "'");
  }
  return value;
}

void expect_fields(const std::vector<std::string_view>& f, std::size_t n, std::size_t line_no) {
  if (f.size() != n) {
    parse_fail(line_no, "expected " + std::to_string(n) + " fields, got " + std::to_string(f.size()));
  }
}

}  // namespace

RunFile parse_run(std::string_view text) {
  struct Entry {
    std::string doc;
    double score;
    long long rank;
  };
  std::map<std::string, std::vector<Entry>> raw;
  std::map<std::string, std::unordered_set<std::string>> seen;
  RunFile run;

  for_each_record(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    expect_fields(f, 6, line_no);
    std::string topic(f[0]);
    std::string doc(f[2]);
    const auto rank = parse_number<long long>(f[3], line_no, "rank");
    const auto score = parse_number<double>(f[4], line_no, "score");
    if (run.tag.empty()) run.tag = std::string(f[5]);
    if (!seen[topic].insert(doc).second) {
      throw Error(ErrorKind::kMalformedRun, "line " + std::to_string(line_no) + ": document '" + doc +
                                                "' repeated in topic " + topic);
    }
    raw[topic].push_back({std::move(doc), score, rank});
  });

  for (auto& [topic, entries] : raw) {
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
      if (x.score != y.score) return x.score > y.score;
      return x.doc < y.doc;
    });
    RankedList list{topic, {}};
    list.docs.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].rank != static_cast<long long>(i + 1)) ++run.rank_mismatches;
      list.docs.push_back(std::move(entries[i].doc));
    }
    run.topics.emplace(topic, std::move(list));
  }
  return run;
}

std::string render_run(const RunFile& run) {
  const std::string tag = run.tag.empty() ? "run" : run.tag;
  std::string out;
  for (const auto& [topic, list] : run.topics) {
    const std::size_t n = list.docs.size();
    for (std::size_t i = 0; i < n; ++i) {
      out += fmt::format("{} Q0 {} {} {} {}\n", topic, list.docs[i], i + 1, n - i, tag);
    }
  }
  return out;
}

Qrels parse_qrels(std::string_view text, const GradeScale& scale) {
  Qrels q;
  for_each_record(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    expect_fields(f, 4, line_no);
    long long grade = parse_number<long long>(f[3], line_no, "grade");
    if (grade < 0 || grade > scale.levels()) {
      grade = std::clamp<long long>(grade, 0, scale.levels());
      ++q.clamped;
    }
    if (q.judgments.set(std::string(f[0]), std::string(f[2]), static_cast<int>(grade))) ++q.duplicates;
  });
  return q;
}

std::map<std::string, Trailtext> parse_passage_run(std::string_view text) {
  struct Entry {
    long long rank;
    std::size_t order;
    Passage passage;
  };
  std::map<std::string, std::vector<Entry>> raw;
  std::size_t order = 0;
  for_each_record(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    expect_fields(f, 5, line_no);
    const auto offset = parse_number<long long>(f[2], line_no, "offset");
    const auto length = parse_number<long long>(f[3], line_no, "length");
    const auto rank = parse_number<long long>(f[4], line_no, "rank");
    if (offset < 0) parse_fail(line_no, "negative offset");
    if (length <= 0) parse_fail(line_no, "passage length must be positive");
    raw[std::string(f[0])].push_back(
        {rank, order++,
         {std::string(f[1]), static_cast<std::uint64_t>(offset), static_cast<std::uint64_t>(length)}});
  });

  std::map<std::string, Trailtext> out;
  for (auto& [topic, entries] : raw) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& x, const Entry& y) { return x.rank < y.rank; });
    Trailtext t{topic, {}};
    for (auto& e : entries) t.passages.push_back(std::move(e.passage));
    out.emplace(topic, std::move(t));
  }
  return out;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0.000000"
  std::string s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string write_matrix(const Table& table) {
  if (table.values.size() != table.rows.size()) {
    throw Error(ErrorKind::kInvalidArgument, "row labels and values disagree");
  }
  for (const auto& row : table.values) {
    if (row.size() != table.columns.size()) throw Error(ErrorKind::kInvalidArgument, "table is not rectangular");
  }
  auto sorted_order = [](const std::vector<std::string>& labels) {
    std::vector<std::size_t> idx(labels.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return labels[x] < labels[y]; });
    return idx;
  };
  const auto cols = sorted_order(table.columns);
  const auto rows = sorted_order(table.rows);

  std::string out = table.corner;
  for (std::size_t c : cols) out += "," + table.columns[c];
  out += '\n';
  for (std::size_t r : rows) {
    out += table.rows[r];
    for (std::size_t c : cols) out += "," + format_number(table.values[r][c]);
    out += '\n';
  }
  return out;
}

}  // namespace med
