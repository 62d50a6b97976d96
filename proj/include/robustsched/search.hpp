#pragma once
// Metaheuristics over the worst-case objective: iterated local search with
// random restarts and variable neighborhood search, plus the exhaustive
// robust baseline. The objective of a permutation is its exact worst-case
// flow (worst_case_flow), memoized per run; every query counts toward an
// evaluation budget whether or not it hits the memo, so memoization can
// never change a trajectory.
//
// Budgets are either evaluation counts (deterministic, the default) or wall
// clock seconds. The budget is checked between descents; a descent already
// in flight completes, which keeps every reported best adjacent-swap local
// optimal.

#include <algorithm>
#include <chrono>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "robustsched/errors.hpp"
#include "robustsched/model.hpp"
#include "robustsched/rng.hpp"
#include "robustsched/worstcase.hpp"

namespace robustsched {

enum class BudgetMode { kEvaluations, kWallClock };

struct SearchConfig {
  BudgetMode budget_mode = BudgetMode::kEvaluations;
  u64 budget = 10000;      // evaluations, or whole seconds in wall-clock mode
  u64 restart_stall = 0;   // 0 = budget / 10
  u64 seed = 1;
  int k_max = 0;           // VNS only; 0 = n - 1
};

struct TracePoint {
  u64 step;  // evaluation count (or elapsed seconds) when the best improved
  i64 value;
};

struct SearchOutcome {
  Sequence best;
  i64 value = 0;
  std::vector<TracePoint> trace;  // strictly decreasing values, first = initial
  u64 evaluations = 0;
  u64 restarts = 0;
};

namespace detail {

struct OrderHash {
  std::size_t operator()(const std::vector<int>& v) const {
    return static_cast<std::size_t>(fnv1a64(v.data(), v.size() * sizeof(int)));
  }
};

class WorstCaseEvaluator {
 public:
  explicit WorstCaseEvaluator(const Instance& inst) : inst_(inst) {}

  i64 value(const Sequence& seq) {
    ++queries_;
    auto it = memo_.find(seq.order);
    if (it != memo_.end()) return it->second;
    const i64 v = worst_case_flow(inst_, seq).value;
    memo_.emplace(seq.order, v);
    return v;
  }

  u64 queries() const { return queries_; }

 private:
  const Instance& inst_;
  std::unordered_map<std::vector<int>, i64, OrderHash> memo_;
  u64 queries_ = 0;
};

struct Descended {
  Sequence seq;
  i64 value;
};

// Best-improvement descent over the n-1 adjacent swaps, ties to the smallest
// swap position, until no swap strictly improves.
inline Descended descend_adjacent(WorstCaseEvaluator& eval, Sequence current) {
  i64 cur = eval.value(current);
  const int n = current.n();
  while (true) {
    int best_pos = -1;
    i64 best = cur;
    for (int pos = 0; pos + 1 < n; ++pos) {
      std::swap(current.order[static_cast<std::size_t>(pos)],
                current.order[static_cast<std::size_t>(pos + 1)]);
      const i64 v = eval.value(current);
      std::swap(current.order[static_cast<std::size_t>(pos)],
                current.order[static_cast<std::size_t>(pos + 1)]);
      if (v < best) {
        best = v;
        best_pos = pos;
      }
    }
    if (best_pos < 0) return {std::move(current), cur};
    std::swap(current.order[static_cast<std::size_t>(best_pos)],
              current.order[static_cast<std::size_t>(best_pos + 1)]);
    cur = best;
  }
}

}  // namespace detail

inline Sequence local_search(const Instance& inst, const Sequence& start) {
  detail::check_sequence(start, inst.n(), "local_search");
  detail::WorstCaseEvaluator eval(inst);
  return detail::descend_adjacent(eval, start).seq;
}

// k uniformly random general pairwise interchanges.
inline Sequence shake(const Sequence& seq, int k, SplitMix64& rng) {
  const int n = seq.n();
  if (n < 2) throw ValidationError("shake: need at least two jobs");
  if (k < 1 || k > n - 1) {
    std::ostringstream msg;
    msg << "shake: k = " << k << " outside [1, " << n - 1 << "]";
    throw ValidationError(msg.str());
  }
  Sequence out = seq;
  for (int t = 0; t < k; ++t) {
    const int i = static_cast<int>(uniform_int(rng, 0, n - 1));
    int j = static_cast<int>(uniform_int(rng, 0, n - 2));
    if (j >= i) ++j;
    std::swap(out.order[static_cast<std::size_t>(i)], out.order[static_cast<std::size_t>(j)]);
  }
  return out;
}

namespace detail {

struct SearchDriver {
  const Instance& inst;
  SearchConfig cfg;
  WorstCaseEvaluator eval;
  SplitMix64 rng;
  std::chrono::steady_clock::time_point t0;
  SearchOutcome out;
  bool have_best = false;

  SearchDriver(const Instance& instance, SearchConfig config)
      : inst(instance),
        cfg(config),
        eval(instance),
        rng(substream_seed(config.seed, 0)),
        t0(std::chrono::steady_clock::now()) {}

  u64 mark() const {
    if (cfg.budget_mode == BudgetMode::kEvaluations) return eval.queries();
    return static_cast<u64>(std::chrono::duration_cast<std::chrono::seconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count());
  }

  bool budget_exhausted() const { return mark() >= cfg.budget; }

  Sequence random_sequence() {
    Sequence s = Sequence::identity(inst.n());
    shuffle(s.order, rng);
    return s;
  }

  void consider(const Sequence& s, i64 v) {
    if (!have_best || v < out.value) {
      out.best = s;
      out.value = v;
      out.trace.push_back({mark(), v});
      have_best = true;
    }
  }

  SearchOutcome finish() {
    out.evaluations = eval.queries();
    return std::move(out);
  }
};

inline SearchConfig normalize(const Instance& inst, SearchConfig cfg, bool vns) {
  if (inst.n() < 2) throw ValidationError("search: need at least two jobs");
  if (cfg.budget == 0) throw ValidationError("search: budget must be positive");
  if (cfg.restart_stall == 0) cfg.restart_stall = std::max<u64>(1, cfg.budget / 10);
  if (cfg.restart_stall > cfg.budget)
    throw ValidationError("search: restart stall exceeds the budget");
  if (vns) {
    if (cfg.k_max == 0) cfg.k_max = inst.n() - 1;
    if (cfg.k_max < 1 || cfg.k_max > inst.n() - 1)
      throw ValidationError("search: k_max outside [1, n-1]");
  }
  return cfg;
}

}  // namespace detail

// Iterated local search, restart flavor: descend from the current best every
// iteration, accept strict improvements, and reseed from a fresh random
// permutation (keeping the global best) once the current best has not
// improved for restart_stall budget units.
inline SearchOutcome run_ils(const Instance& inst, const SearchConfig& config) {
  const SearchConfig cfg = detail::normalize(inst, config, false);
  detail::SearchDriver d(inst, cfg);

  Sequence current = d.random_sequence();
  i64 current_value = d.eval.value(current);
  d.consider(current, current_value);
  u64 last_improvement = d.mark();

  while (true) {
    detail::Descended x = detail::descend_adjacent(d.eval, current);
    if (x.value < current_value) {
      current = std::move(x.seq);
      current_value = x.value;
      d.consider(current, current_value);
      last_improvement = d.mark();
    }
    if (d.mark() - last_improvement >= cfg.restart_stall) {
      current = d.random_sequence();
      current_value = d.eval.value(current);
      d.consider(current, current_value);
      last_improvement = d.mark();
      ++d.out.restarts;
    }
    if (d.budget_exhausted()) break;
  }
  return d.finish();
}

// Variable neighborhood search: shake the current best with k interchanges,
// descend, accept strict improvements (k back to 1), otherwise grow k,
// wrapping past k_max. Stalls trigger a random restart like ILS. Initial and
// restart solutions are descended once so every reported best is a local
// optimum.
inline SearchOutcome run_vns(const Instance& inst, const SearchConfig& config) {
  const SearchConfig cfg = detail::normalize(inst, config, true);
  detail::SearchDriver d(inst, cfg);

  detail::Descended cur = detail::descend_adjacent(d.eval, d.random_sequence());
  d.consider(cur.seq, cur.value);
  u64 last_improvement = d.mark();
  int k = 1;

  while (!d.budget_exhausted()) {
    const Sequence shaken = shake(cur.seq, k, d.rng);
    detail::Descended x = detail::descend_adjacent(d.eval, shaken);
    if (x.value < cur.value) {
      cur = std::move(x);
      d.consider(cur.seq, cur.value);
      last_improvement = d.mark();
      k = 1;
    } else {
      ++k;
      if (k > cfg.k_max) k = 1;
    }
    if (d.mark() - last_improvement >= cfg.restart_stall) {
      cur = detail::descend_adjacent(d.eval, d.random_sequence());
      d.consider(cur.seq, cur.value);
      last_improvement = d.mark();
      k = 1;
      ++d.out.restarts;
    }
  }
  return d.finish();
}

inline constexpr int kExhaustiveRobustCap = 9;

// Exact robust optimum by enumerating all n! sequences in lexicographic
// order; strict improvement keeps the lexicographically smallest minimizer.
inline SearchOutcome exhaustive_robust(const Instance& inst, int cap = kExhaustiveRobustCap) {
  const int n = inst.n();
  if (n < 1) throw ValidationError("exhaustive_robust: empty instance");
  if (n > cap) {
    std::ostringstream msg;
    msg << "exhaustive_robust: n = " << n << " exceeds the enumeration cap of " << cap;
    throw SizeCapError(msg.str());
  }
  SearchOutcome out;
  Sequence perm = Sequence::identity(n);
  bool first = true;
  do {
    ++out.evaluations;
    const i64 v = worst_case_flow(inst, perm).value;
    if (first || v < out.value) {
      out.value = v;
      out.best = perm;
      out.trace.push_back({out.evaluations, v});
      first = false;
    }
  } while (std::next_permutation(perm.order.begin(), perm.order.end()));
  return out;
}

}  // namespace robustsched
