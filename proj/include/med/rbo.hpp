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

#include <cstddef>

#include "med/core.hpp"

namespace med {

struct RboParams {
  double psi = 0.9;
  std::size_t depth = 10;
};

/// Rank-biased overlap truncated at `depth`:
/// (1 - psi) * sum_{d=1..depth} psi^(d-1) * |A_{1:d} n B_{1:d}| / d.
double rbo(const RankedList& a, const RankedList& b, const RboParams& params);

}  // namespace med
