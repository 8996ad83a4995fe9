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

#include "med/rbo.hpp"

#include <cmath>
#include <unordered_set>

namespace med {

double rbo(const RankedList& a, const RankedList& b, const RboParams& params) {
  if (!(params.psi > 0.0 && params.psi < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "RBO persistence must be in (0, 1)");
  }
  if (params.depth < 1) throw Error(ErrorKind::kInvalidArgument, "RBO depth must be >= 1");

  std::unordered_set<std::string_view> seen_a, seen_b;
  std::size_t overlap = 0;
  double weight = 1.0 - params.psi;
  double total = 0.0;
  for (std::size_t d = 1; d <= params.depth; ++d) {
    // each shared document is counted when its second occurrence arrives
    if (d <= a.docs.size()) {
      std::string_view x = a.docs[d - 1];
      seen_a.insert(x);
      if (seen_b.count(x)) ++overlap;
    }
    if (d <= b.docs.size()) {
      std::string_view y = b.docs[d - 1];
      seen_b.insert(y);
      if (seen_a.count(y)) ++overlap;
    }
    total += weight * static_cast<double>(overlap) / static_cast<double>(d);
    weight *= params.psi;
  }
  return total;
}

}  // namespace med
