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

#include "med/medu.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace med {

double gain_value(UGain gain) { return gain == UGain::kHalf ? 0.5 : 1.0; }

double u_score(std::span<const Interval> relevant, std::size_t l, UGain gain) {
  if (l == 0) throw Error(ErrorKind::kInvalidArgument, "trailtext length must be positive");
  const double len = static_cast<double>(l);
  double total = 0.0;
  for (const Interval& iv : relevant) {
    if (iv.first < 1 || iv.last < iv.first || iv.last > l) {
      throw Error(ErrorKind::kInvalidArgument, "interval [" + std::to_string(iv.first) + ", " +
                                                   std::to_string(iv.last) + "] outside [1, l]");
    }
    const double n = static_cast<double>(iv.length());
    const double ends = static_cast<double>(iv.first + iv.last);
    total += n - ends * n / (2.0 * len);
  }
  return gain_value(gain) * total;
}

namespace {

enum class PieceKind { kFresh, kRepeat, kPadding };

struct Piece {
  Interval pos;
  PieceKind kind = PieceKind::kPadding;
  const DocId* doc = nullptr;
  std::uint64_t offset = 0;  // document offset of pos.first (fresh pieces)
};

// Lays the passages out along positions 1..l, splitting each into runs of
// characters not yet shown (fresh) and already shown (repeat).
std::vector<Piece> layout(const Trailtext& t, std::size_t l) {
  std::vector<Piece> pieces;
  // doc -> covered offsets as [start, end) keyed by start, disjoint
  std::unordered_map<std::string_view, std::map<std::uint64_t, std::uint64_t>> covered;
  std::size_t cursor = 1;
  for (const Passage& p : t.passages) {
    if (p.length == 0) throw Error(ErrorKind::kInvalidArgument, "passage of " + p.doc + " has zero length");
    if (cursor > l) break;
    const std::uint64_t room = l - cursor + 1;
    const std::uint64_t take = std::min<std::uint64_t>(p.length, room);
    const std::uint64_t begin = p.offset;
    const std::uint64_t end = p.offset + take;
    auto& cov = covered[p.doc];

    auto emit = [&](std::uint64_t from, std::uint64_t to, PieceKind kind) {
      if (from >= to) return;
      const std::size_t first = cursor + static_cast<std::size_t>(from - begin);
      pieces.push_back({{first, first + static_cast<std::size_t>(to - from) - 1}, kind, &p.doc, from});
    };

    std::uint64_t at = begin;
    auto it = cov.upper_bound(begin);
    if (it != cov.begin()) --it;
    for (; it != cov.end() && it->first < end; ++it) {
      if (it->second <= at) continue;
      const std::uint64_t lo = std::max(it->first, at);
      const std::uint64_t hi = std::min(it->second, end);
      emit(at, lo, PieceKind::kFresh);
      emit(lo, hi, PieceKind::kRepeat);
      at = hi;
    }
    emit(at, end, PieceKind::kFresh);

    // merge [begin, end) into coverage
    std::uint64_t lo = begin, hi = end;
    auto first = cov.upper_bound(begin);
    if (first != cov.begin() && std::prev(first)->second >= begin) --first;
    auto last = first;
    while (last != cov.end() && last->first <= end) {
      lo = std::min(lo, last->first);
      hi = std::max(hi, last->second);
      ++last;
    }
    cov.erase(first, last);
    cov.emplace(lo, hi);

    cursor += static_cast<std::size_t>(take);
  }
  if (cursor <= l) pieces.push_back({{cursor, l}, PieceKind::kPadding, nullptr, 0});
  return pieces;
}

using FreshIndex = std::unordered_map<std::string_view, std::vector<const Piece*>>;

FreshIndex index_fresh(const std::vector<Piece>& pieces) {
  FreshIndex index;
  for (const Piece& p : pieces) {
    if (p.kind == PieceKind::kFresh) index[*p.doc].push_back(&p);
  }
  for (auto& [doc, v] : index) {
    std::sort(v.begin(), v.end(), [](const Piece* x, const Piece* y) { return x->offset < y->offset; });
  }
  return index;
}

void push_merged(std::vector<CharSegment>& out, CharSegment seg) {
  if (!out.empty() && out.back().span.last + 1 == seg.span.first &&
      out.back().kind.index() == seg.kind.index()) {
    CharSegment& prev = out.back();
    bool joinable = true;
    if (auto* pb = std::get_if<CharBound>(&prev.kind)) {
      const auto& nb = std::get<CharBound>(seg.kind);
      joinable = pb->partner_first + prev.span.length() == nb.partner_first;
    }
    if (joinable) {
      prev.span.last = seg.span.last;
      return;
    }
  }
  out.push_back(seg);
}

std::vector<CharSegment> classify(const std::vector<Piece>& own, const FreshIndex& other) {
  std::vector<CharSegment> out;
  for (const Piece& p : own) {
    if (p.kind == PieceKind::kPadding) {
      push_merged(out, {p.pos, CharFree{}});
      continue;
    }
    if (p.kind == PieceKind::kRepeat) {
      push_merged(out, {p.pos, CharRepeat{}});
      continue;
    }
    const std::uint64_t begin = p.offset;
    const std::uint64_t end = p.offset + p.pos.length();
    auto to_pos = [&](std::uint64_t off) { return p.pos.first + static_cast<std::size_t>(off - begin); };
    std::uint64_t at = begin;
    if (auto it = other.find(*p.doc); it != other.end()) {
      const auto& cands = it->second;
      auto c = std::upper_bound(cands.begin(), cands.end(), begin,
                                [](std::uint64_t v, const Piece* x) { return v < x->offset; });
      if (c != cands.begin()) --c;
      for (; c != cands.end() && (*c)->offset < end; ++c) {
        const Piece& q = **c;
        const std::uint64_t q_end = q.offset + q.pos.length();
        const std::uint64_t lo = std::max(q.offset, at);
        const std::uint64_t hi = std::min(q_end, end);
        if (lo >= hi) continue;
        if (at < lo) push_merged(out, {{to_pos(at), to_pos(lo) - 1}, CharFree{}});
        const std::size_t partner = q.pos.first + static_cast<std::size_t>(lo - q.offset);
        push_merged(out, {{to_pos(lo), to_pos(hi) - 1}, CharBound{partner}});
        at = hi;
      }
    }
    if (at < end) push_merged(out, {{to_pos(at), to_pos(end) - 1}, CharFree{}});
  }
  return out;
}

void push_interval(std::vector<Interval>& out, Interval iv) {
  if (!out.empty() && out.back().last + 1 == iv.first) {
    out.back().last = iv.last;
  } else {
    out.push_back(iv);
  }
}

}  // namespace

CharAlignment align_characters(const Trailtext& a, const Trailtext& b, std::size_t l) {
  if (l == 0) throw Error(ErrorKind::kInvalidArgument, "trailtext length must be positive");
  if (a.topic != b.topic) {
    throw Error(ErrorKind::kInvalidPair, "topic mismatch: '" + a.topic + "' vs '" + b.topic + "'");
  }
  const std::vector<Piece> pa = layout(a, l);
  const std::vector<Piece> pb = layout(b, l);
  return {l, classify(pa, index_fresh(pb)), classify(pb, index_fresh(pa))};
}

UAssignment maximize_u_direction(const CharAlignment& alignment) {
  UAssignment out;
  for (const CharSegment& s : alignment.side_a) {
    if (std::holds_alternative<CharFree>(s.kind)) {
      push_interval(out.first, s.span);
    } else if (auto* b = std::get_if<CharBound>(&s.kind); b && b->partner_first > s.span.first) {
      push_interval(out.first, s.span);
    }
  }
  for (const CharSegment& s : alignment.side_b) {
    if (auto* b = std::get_if<CharBound>(&s.kind); b && b->partner_first < s.span.first) {
      push_interval(out.second, s.span);
    }
  }
  return out;
}

UOutcome med_u(const Trailtext& a, const Trailtext& b, std::size_t l, UGain gain) {
  CharAlignment fwd = align_characters(a, b, l);
  CharAlignment bwd{fwd.length, fwd.side_b, fwd.side_a};

  UAssignment f = maximize_u_direction(fwd);
  UAssignment r = maximize_u_direction(bwd);
  const double vf = u_score(f.first, l, gain) - u_score(f.second, l, gain);
  const double vr = u_score(r.first, l, gain) - u_score(r.second, l, gain);

  UOutcome out;
  if (vr > vf) {
    out = {vr, Direction::kB, std::move(r.second), std::move(r.first)};
  } else {
    out = {vf, vf > 0.0 ? Direction::kA : Direction::kNone, std::move(f.first), std::move(f.second)};
  }
  if (out.value < 0.0) out.value = 0.0;
  return out;
}

}  // namespace med
