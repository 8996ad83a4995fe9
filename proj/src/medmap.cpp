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

#include "med/medmap.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>
#include <type_traits>

namespace med {

namespace mp = boost::multiprecision;

QuboProblem::QuboProblem(std::size_t size, BigInt denominator)
    : denominator_(std::move(denominator)), upper_(size * size), linear_(size) {}

const BigInt& QuboProblem::quadratic(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  return upper_.at(i * size() + j);
}

BigInt& QuboProblem::quadratic(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return upper_.at(i * size() + j);
}

BigInt QuboProblem::scaled_objective(std::span<const std::uint8_t> z) const {
  if (z.size() != size()) throw Error(ErrorKind::kInvalidArgument, "assignment length mismatch");
  BigInt total = constant_;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!z[i]) continue;
    total += linear_[i];
    for (std::size_t j = i; j < size(); ++j) {
      if (z[j]) total += upper_[i * size() + j];
    }
  }
  return total;
}

Rational QuboProblem::objective(std::span<const std::uint8_t> z) const {
  return Rational(scaled_objective(z), denominator_);
}

BigInt QuboProblem::magnitude() const {
  BigInt m = mp::abs(constant_);
  for (const auto& v : linear_) m += mp::abs(v);
  for (const auto& v : upper_) m += mp::abs(v);
  return m;
}

std::string write_qubo(const QuboProblem& q) {
  auto frac = [&](const BigInt& v) { return Rational(v, q.denominator()).str(); };
  std::ostringstream out;
  out << q.size() << ' ' << frac(q.constant()) << '\n';
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) out << ' ';
    out << frac(q.linear(i));
  }
  out << '\n';
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i; j < q.size(); ++j) {
      if (q.quadratic(i, j) != 0) out << i << ' ' << j << ' ' << frac(q.quadratic(i, j)) << '\n';
    }
  }
  return out.str();
}

namespace {

// A rank's relevance after substitution: a known 0/1 constant or a variable.
struct Term {
  bool is_var = false;
  int constant = 0;
  std::size_t var = 0;
};

int binary_value(const Grade& g) {
  if (g.num == 0) return 0;
  if (g.num == g.den) return 1;
  throw Error(ErrorKind::kInvalidMeasure, "MAP needs binary relevance; judged value " +
                                              std::to_string(g.num) + "/" + std::to_string(g.den));
}

BigInt lcm_upto(std::size_t k) {
  BigInt l = 1;
  for (std::size_t i = 2; i <= k; ++i) {
    BigInt bi = i;
    l = l / mp::gcd(l, bi) * bi;
  }
  return l;
}

void accumulate_side(QuboProblem& q, const std::vector<Term>& terms, const BigInt& lcm, int sign) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Term& ci = terms[i];
    if (!ci.is_var && ci.constant == 0) continue;
    const BigInt weight = sign * (lcm / (i + 1));
    for (std::size_t j = 0; j <= i; ++j) {
      const Term& cj = j == i ? ci : terms[j];
      if (j == i) {
        if (ci.is_var) q.linear(ci.var) += weight;
        else q.constant() += weight;
      } else if (ci.is_var && cj.is_var) {
        q.quadratic(ci.var, cj.var) += weight;
      } else if (ci.is_var) {
        if (cj.constant) q.linear(ci.var) += weight;
      } else if (cj.is_var) {
        q.linear(cj.var) += weight;
      } else if (cj.constant) {
        q.constant() += weight;
      }
    }
  }
}

struct Substitution {
  std::vector<Term> a;
  std::vector<Term> b;
  std::vector<DocId> var_docs;
};

Substitution substitute(const AlignedPair& pair, std::size_t k) {
  Substitution sub;
  std::vector<std::optional<std::size_t>> var_of_a(pair.depth);
  for (std::size_t i = 0; i < pair.depth; ++i) {
    const Slot& s = pair.side_a[i];
    if (s.is_bound() && (i < k || s.partner() < k)) {
      var_of_a[i] = sub.var_docs.size();
      sub.var_docs.push_back(*s.doc);
    }
  }
  auto term_for = [&](const Slot& s, std::size_t pos, bool first_side) -> Term {
    if (s.is_predetermined()) return {false, binary_value(std::get<Predetermined>(s.kind).grade), 0};
    if (s.is_free()) return {false, first_side ? 1 : 0, 0};
    std::size_t a_pos = first_side ? pos : s.partner();
    return {true, 0, *var_of_a[a_pos]};
  };
  for (std::size_t i = 0; i < k; ++i) {
    sub.a.push_back(term_for(pair.side_a[i], i, true));
    sub.b.push_back(term_for(pair.side_b[i], i, false));
  }
  // Judged values beyond k never enter the objective, but must still be binary.
  for (std::size_t i = k; i < pair.depth; ++i) {
    for (const Slot* s : {&pair.side_a[i], &pair.side_b[i]}) {
      if (s->is_predetermined()) binary_value(std::get<Predetermined>(s->kind).grade);
    }
  }
  return sub;
}

}  // namespace

QuboProblem build_qubo(const AlignedPair& pair, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "MAP depth must be >= 1");
  if (pair.depth < k) {
    throw Error(ErrorKind::kInvalidArgument, "pair aligned to depth " + std::to_string(pair.depth) +
                                                 ", MAP needs " + std::to_string(k));
  }
  Substitution sub = substitute(pair, k);
  const BigInt lcm = lcm_upto(k);
  QuboProblem q(sub.var_docs.size(), lcm * k);
  q.var_docs = std::move(sub.var_docs);
  accumulate_side(q, sub.a, lcm, +1);
  accumulate_side(q, sub.b, lcm, -1);
  return q;
}

namespace {

using Int256 = mp::int256_t;

// Incremental single-flip evaluator. field[p] is the change in objective
// from setting z_p to 1 while everything else stays put.
template <class T>
class FlipState {
 public:
  explicit FlipState(const QuboProblem& q) : n_(q.size()), coupling_(n_ * n_), linear_(n_) {
    constant_ = static_cast<T>(q.constant());
    for (std::size_t i = 0; i < n_; ++i) {
      linear_[i] = static_cast<T>(q.linear(i)) + static_cast<T>(q.quadratic(i, i));
      for (std::size_t j = i + 1; j < n_; ++j) {
        T c = static_cast<T>(q.quadratic(i, j));
        coupling_[i * n_ + j] = c;
        coupling_[j * n_ + i] = c;
      }
    }
    reset(Assignment(n_, 0));
  }

  void reset(const Assignment& z) {
    z_ = z;
    value_ = constant_;
    field_ = linear_;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (j != i && z_[j]) field_[i] += coupling_[i * n_ + j];
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (!z_[i]) continue;
      value_ += linear_[i];
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (z_[j]) value_ += coupling_[i * n_ + j];
      }
    }
  }

  T delta(std::size_t p) const { return z_[p] ? T(-field_[p]) : field_[p]; }

  void flip(std::size_t p) {
    value_ += delta(p);
    const bool on = !z_[p];
    z_[p] = on ? 1 : 0;
    const T* row = &coupling_[p * n_];
    for (std::size_t q = 0; q < n_; ++q) {
      if (q == p) continue;
      if (on) field_[q] += row[q];
      else field_[q] -= row[q];
    }
  }

  std::size_t size() const { return n_; }
  const T& value() const { return value_; }
  const Assignment& z() const { return z_; }

 private:
  std::size_t n_;
  std::vector<T> coupling_;
  std::vector<T> linear_;
  T constant_{};
  Assignment z_;
  std::vector<T> field_;
  T value_{};
};

template <class T>
QuboSolution to_solution(const QuboProblem& q, Assignment z, const T& scaled) {
  BigInt v = static_cast<BigInt>(scaled);
  return {std::move(z), Rational(v, q.denominator())};
}

template <class T>
QuboSolution exact_impl(const QuboProblem& q) {
  const std::size_t n = q.size();
  FlipState<T> state(q);
  T best = state.value();
  std::uint64_t best_lex = 0;
  std::uint64_t lex = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  // Gray code: step t flips bit ctz(t). `lex` keeps z_1 as the most
  // significant bit so integer order matches lexicographic order.
  for (std::uint64_t t = 1; t < count; ++t) {
    const auto p = static_cast<std::size_t>(std::countr_zero(t));
    state.flip(p);
    lex ^= std::uint64_t{1} << (n - 1 - p);
    if (state.value() > best || (state.value() == best && lex < best_lex)) {
      best = state.value();
      best_lex = lex;
    }
  }
  Assignment z(n);
  for (std::size_t p = 0; p < n; ++p) z[p] = (best_lex >> (n - 1 - p)) & 1U;
  return to_solution(q, std::move(z), best);
}

template <class T>
void steepest_ascent(FlipState<T>& state) {
  for (;;) {
    std::size_t best_p = state.size();
    T best_delta{};
    for (std::size_t p = 0; p < state.size(); ++p) {
      T d = state.delta(p);
      if (d > 0 && (best_p == state.size() || d > best_delta)) {
        best_p = p;
        best_delta = d;
      }
    }
    if (best_p == state.size()) return;
    state.flip(best_p);
  }
}

template <class T>
QuboSolution greedy_impl(const QuboProblem& q) {
  FlipState<T> state(q);
  steepest_ascent(state);
  return to_solution(q, state.z(), state.value());
}

bool better(const auto& value, const Assignment& z, const auto& best_value, const Assignment& best_z) {
  if (value != best_value) return value > best_value;
  return std::lexicographical_compare(z.begin(), z.end(), best_z.begin(), best_z.end());
}

template <class T>
QuboSolution tabu_impl(const QuboProblem& q, const TabuParams& params) {
  const std::size_t n = q.size();
  FlipState<T> state(q);
  if (n == 0) return to_solution(q, Assignment{}, state.value());

  const std::size_t iterations = params.max_iterations.value_or(10 * n);
  const std::size_t tenure = std::min(params.tenure, n - 1);
  std::mt19937_64 rng(params.seed);

  steepest_ascent(state);
  T best = state.value();
  Assignment best_z = state.z();

  std::vector<std::size_t> tabu_until(n);
  for (std::size_t run = 0; run < std::max<std::size_t>(params.restarts, 1); ++run) {
    if (run > 0) {
      Assignment start(n);
      for (auto& bit : start) bit = static_cast<std::uint8_t>(rng() >> 63);
      state.reset(start);
      if (better(state.value(), state.z(), best, best_z)) {
        best = state.value();
        best_z = state.z();
      }
    }
    std::fill(tabu_until.begin(), tabu_until.end(), 0);
    for (std::size_t it = 0; it < iterations; ++it) {
      std::size_t move = n;
      T move_delta{};
      for (std::size_t p = 0; p < n; ++p) {
        T d = state.delta(p);
        const bool admissible = tabu_until[p] <= it || T(state.value() + d) > best;
        if (admissible && (move == n || d > move_delta)) {
          move = p;
          move_delta = d;
        }
      }
      if (move == n) break;
      state.flip(move);
      tabu_until[move] = it + 1 + tenure;
      if (better(state.value(), state.z(), best, best_z)) {
        best = state.value();
        best_z = state.z();
      }
    }
  }
  return to_solution(q, std::move(best_z), best);
}

// Picks the narrowest integer type that cannot overflow: every partial sum
// is bounded by twice the coefficient magnitude.
template <class F>
QuboSolution dispatch(const QuboProblem& q, F&& f) {
  const BigInt bound = 4 * q.magnitude();
  if (bound < (BigInt(1) << 62)) return f(std::int64_t{});
  if (bound < (BigInt(1) << 250)) return f(Int256{});
  return f(BigInt{});
}

}  // namespace

QuboSolution solve_exact(const QuboProblem& q) {
  if (q.size() > kExactLimit) {
    throw Error(ErrorKind::kTooLarge, "exact QUBO solve limited to " + std::to_string(kExactLimit) +
                                          " variables, got " + std::to_string(q.size()));
  }
  return dispatch(q, [&](auto tag) { return exact_impl<decltype(tag)>(q); });
}

QuboSolution greedy_local_search(const QuboProblem& q) {
  return dispatch(q, [&](auto tag) { return greedy_impl<decltype(tag)>(q); });
}

QuboSolution solve_tabu(const QuboProblem& q, const TabuParams& params) {
  if (params.tenure == 0 || params.restarts == 0 ||
      (params.max_iterations && *params.max_iterations == 0)) {
    throw Error(ErrorKind::kInvalidArgument, "tabu parameters must be positive");
  }
  return dispatch(q, [&](auto tag) { return tabu_impl<decltype(tag)>(q, params); });
}

namespace {

DirectionalResult solve_direction(const AlignedPair& pair, std::size_t k, const TabuParams& params,
                                  std::size_t exact_limit) {
  const QuboProblem q = build_qubo(pair, k);
  const QuboSolution sol = q.size() <= std::min(exact_limit, kExactLimit) ? solve_exact(q)
                                                                          : solve_tabu(q, params);
  DirectionalResult out;
  out.value = static_cast<double>(sol.value);
  out.witness_first.assign(pair.depth, 0.0);
  out.witness_second.assign(pair.depth, 0.0);

  std::size_t var = 0;
  std::vector<double> a_var_value(pair.depth, 0.0);
  for (std::size_t i = 0; i < pair.depth; ++i) {
    const Slot& s = pair.side_a[i];
    if (s.is_free()) {
      out.witness_first[i] = 1.0;
    } else if (s.is_predetermined()) {
      out.witness_first[i] = s.fixed_value();
    } else if (i < k || s.partner() < k) {
      out.witness_first[i] = sol.z[var++];
    }
    a_var_value[i] = out.witness_first[i];
  }
  for (std::size_t j = 0; j < pair.depth; ++j) {
    const Slot& s = pair.side_b[j];
    if (s.is_predetermined()) out.witness_second[j] = s.fixed_value();
    else if (s.is_bound()) out.witness_second[j] = a_var_value[s.partner()];
  }
  return out;
}

}  // namespace

MedOutcome med_map(const AlignedPair& pair, std::size_t k, const TabuParams& params,
                   std::size_t exact_limit) {
  return combine_directions(solve_direction(pair, k, params, exact_limit),
                            solve_direction(pair.swapped(), k, params, exact_limit));
}

double map_score(std::span<const double> relevance, std::size_t k) {
  double total = 0.0;
  double hits = 0.0;
  for (std::size_t i = 0; i < std::min(k, relevance.size()); ++i) {
    hits += relevance[i];
    total += relevance[i] * hits / static_cast<double>(i + 1);
  }
  return total / static_cast<double>(k);
}

}  // namespace med
