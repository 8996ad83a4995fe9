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

// med: maximized effectiveness difference between search result lists.
//
//   med compare RUN_A RUN_B [flags]
//   med matrix RUN_DIR [flags]
//   med sweep RUN... --qrels PATH --fractions 0,0.25,0.75,1 --seed N [flags]

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "med/cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw med::Error(med::ErrorKind::kInvalidArgument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

med::cli::NamedInput load_input(const fs::path& path) {
  return {path.filename().string(), read_file(path)};
}

void emit(const med::cli::Report& report, const std::string& out_path) {
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  if (out_path.empty()) {
    std::cout << report.csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw med::Error(med::ErrorKind::kInvalidArgument, "cannot write " + out_path);
    out << report.csv;
  }
  if (!report.attachments.empty()) {
    const fs::path dir = out_path.empty() ? fs::current_path() : fs::path(out_path).parent_path();
    for (const auto& [name, body] : report.attachments) {
      std::ofstream(dir / name, std::ios::binary) << body;
    }
  }
}

int exit_code(med::ErrorKind kind) {
  switch (kind) {
    case med::ErrorKind::kInvalidPair: return 2;
    case med::ErrorKind::kParseError:
    case med::ErrorKind::kMalformedRun: return 3;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximized effectiveness difference between search result lists"};
  app.require_subcommand(1);

  med::cli::Config config;
  std::string qrels_path;
  std::string out_path;
  std::string u_gain = "unit";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--measure", config.measure, "precision, ndcg, rbp, map, err, u or rbo")
        ->check(CLI::IsMember({"precision", "ndcg", "rbp", "map", "err", "u", "rbo"}));
    cmd->add_option("--k", config.k, "cutoff for precision (10), ndcg (20), map (100)");
    cmd->add_option("--psi", config.psi, "persistence for rbp and rbo");
    cmd->add_option("--rg", config.rg, "top relevance grade for err");
    cmd->add_option("--depth", config.depth, "err search depth (30); rbp/rbo depth (longer list)");
    cmd->add_option("--pmax", config.pmax, "err: most bound variables raised at once");
    cmd->add_option("--l", config.l, "u: trailtext length");
    cmd->add_option("--grades", config.grade_levels, "number of non-zero grades for ndcg and err");
    cmd->add_option("--u-gain", u_gain, "u: per-character gain, 'unit' or 'half'")
        ->check(CLI::IsMember({"unit", "half"}));
    cmd->add_option("--qrels", qrels_path, "judgments: topic 0 docid grade");
    cmd->add_option("--fraction", config.fraction, "share of judgments to apply");
    cmd->add_option("--seed", config.seed, "seed for judgment sampling and tabu search");
    cmd->add_option("--jobs", config.jobs, "worker threads");
    cmd->add_option("--out", out_path, "write CSV here instead of stdout");
  };

  std::string run_a, run_b;
  auto* compare = app.add_subcommand("compare", "per-topic MED between two runs");
  compare->add_option("run_a", run_a)->required();
  compare->add_option("run_b", run_b)->required();
  compare->add_flag("--dump-qubo", config.dump_qubo, "map: write each topic's QUBO next to the output");
  add_common(compare);

  std::string run_dir;
  auto* matrix = app.add_subcommand("matrix", "run-by-run matrix of mean MED");
  matrix->add_option("run_dir", run_dir)->required()->check(CLI::ExistingDirectory);
  add_common(matrix);

  std::vector<std::string> sweep_runs;
  std::vector<double> fractions{0.0, 0.25, 0.75, 1.0};
  auto* sweep = app.add_subcommand("sweep", "MED as a growing share of judgments is applied");
  sweep->add_option("runs", sweep_runs)->required()->expected(2, -1);
  sweep->add_option("--fractions", fractions)->delimiter(',');
  add_common(sweep);

  CLI11_PARSE(app, argc, argv);
  config.u_gain = u_gain == "half" ? med::UGain::kHalf : med::UGain::kUnit;

  try {
    std::optional<std::string> qrels;
    if (!qrels_path.empty()) qrels = read_file(qrels_path);

    if (*compare) {
      emit(med::cli::compare(load_input(run_a), load_input(run_b), qrels, config), out_path);
    } else if (*matrix) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(run_dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      std::vector<med::cli::NamedInput> inputs;
      for (const auto& f : files) inputs.push_back(load_input(f));
      emit(med::cli::matrix(inputs, qrels, config), out_path);
    } else if (*sweep) {
      if (!qrels) throw med::Error(med::ErrorKind::kInvalidArgument, "sweep needs --qrels");
      std::vector<med::cli::NamedInput> inputs;
      for (const auto& f : sweep_runs) inputs.push_back(load_input(f));
      emit(med::cli::sweep(inputs, *qrels, fractions, config), out_path);
    }
  } catch (const med::Error& e) {
    std::cerr << "med: " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return 0;
}
