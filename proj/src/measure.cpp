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

#include "med/measure.hpp"

#include <string>

namespace med {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

std::string_view measure_name(const MeasureSpec& m) {
  return std::visit(overloaded{[](const PrecisionAt&) { return "precision"; },
                               [](const NdcgAt&) { return "ndcg"; },
                               [](const Rbp&) { return "rbp"; },
                               [](const MapAt&) { return "map"; },
                               [](const ErrMeasure&) { return "err"; }},
                    m);
}

std::optional<std::size_t> measure_depth(const MeasureSpec& m) {
  return std::visit(overloaded{[](const PrecisionAt& p) -> std::optional<std::size_t> { return p.k; },
                               [](const NdcgAt& p) -> std::optional<std::size_t> { return p.k; },
                               [](const Rbp&) -> std::optional<std::size_t> { return std::nullopt; },
                               [](const MapAt& p) -> std::optional<std::size_t> { return p.k; },
                               [](const ErrMeasure& p) -> std::optional<std::size_t> {
                                 return p.params.depth;
                               }},
                    m);
}

GradeScale measure_scale(const MeasureSpec& m) {
  return std::visit(overloaded{[](const NdcgAt& p) { return p.scale; },
                               [](const ErrMeasure& p) { return p.scale; },
                               [](const auto&) { return GradeScale::binary(); }},
                    m);
}

MedOutcome compute_med(const AlignedPair& pair, const MeasureSpec& measure) {
  if (auto depth = measure_depth(measure); depth && pair.depth < *depth) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(measure_name(measure)) + " needs the pair aligned to depth " +
                    std::to_string(*depth) + ", got " + std::to_string(pair.depth));
  }
  return std::visit(
      overloaded{[&](const PrecisionAt& p) { return med_precision(pair, p.k); },
                 [&](const NdcgAt& p) { return med_ndcg(pair, p.k, p.scale); },
                 [&](const Rbp& p) { return med_rbp(pair, p.psi); },
                 [&](const MapAt& p) { return med_map(pair, p.k, p.tabu, p.exact_limit); },
                 [&](const ErrMeasure& p) { return med_err(pair, p.params); }},
      measure);
}

double evaluate(const MeasureSpec& measure, std::span<const double> relevance) {
  return std::visit(
      overloaded{[&](const PrecisionAt& p) { return dot_score(relevance, precision_measure(p.k)); },
                 [&](const NdcgAt& p) {
                   return dot_score(relevance, ndcg_measure(p.k, p.scale.top().value()));
                 },
                 [&](const Rbp& p) { return dot_score(relevance, rbp_measure(p.psi)); },
                 [&](const MapAt& p) { return map_score(relevance, p.k); },
                 [&](const ErrMeasure& p) { return err_score(relevance, p.params.depth); }},
      measure);
}

}  // namespace med
