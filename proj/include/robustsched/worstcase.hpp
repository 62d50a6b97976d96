#pragma once
// Worst-case total flow of a fixed sequence over the release/processing box.
//
// The maximum is attained at an extreme point of a restricted form: every
// processing time at its upper endpoint, the first job's release at its upper
// endpoint (a later first release can only push everyone back), the last
// job's release at its lower endpoint (only its own waiting term remains),
// and each interior release at one of its two endpoints. That leaves
// max(1, 2^(n-2)) candidate scenarios.
//
// worst_case_flow searches them with a forward DP over sequence positions.
// A state is (prefix completion c, prefix flow v); a state is dominated when
// another has both c and v at least as large, because remaining flow is
// nondecreasing in the prefix completion. The frontier is tiny in practice
// (bounded by the number of distinct completion values), so this is exact
// and fast where plain enumeration would need 2^(n-2) evaluations.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "robustsched/errors.hpp"
#include "robustsched/evaluate.hpp"
#include "robustsched/lp_writer.hpp"
#include "robustsched/model.hpp"
#include "robustsched/rng.hpp"

namespace robustsched {

struct WorstCaseResult {
  i64 value = 0;
  Scenario witness;
};

inline u64 extreme_scenario_count(int n) {
  if (n < 1) throw ValidationError("extreme_scenario_count: n must be >= 1");
  if (n - 2 >= 63) throw SizeCapError("extreme_scenario_count: count overflows 64 bits");
  return n <= 2 ? u64{1} : u64{1} << (n - 2);
}

// Candidate #index, with interior release choices read off the bits of index
// along sequence positions 1..n-2 (bit 0 = first interior position, 0 = low).
inline Scenario extreme_scenario(const Instance& inst, const Sequence& seq, u64 index) {
  const int n = inst.n();
  detail::check_sequence(seq, n, "extreme_scenario");
  if (index >= extreme_scenario_count(n))
    throw ValidationError("extreme_scenario: index out of range");
  Scenario sc;
  sc.release.resize(static_cast<std::size_t>(n));
  sc.processing.resize(static_cast<std::size_t>(n));
  for (int pos = 0; pos < n; ++pos) {
    const auto j = static_cast<std::size_t>(seq.order[static_cast<std::size_t>(pos)]);
    const Job& job = inst.jobs[j];
    sc.processing[j] = job.processing.hi;
    if (pos == 0) {
      sc.release[j] = job.release.hi;
    } else if (pos == n - 1) {
      sc.release[j] = job.release.lo;
    } else {
      const bool high = (index >> (pos - 1)) & 1;
      sc.release[j] = high ? job.release.hi : job.release.lo;
    }
  }
  return sc;
}

template <class Fn>
void for_each_extreme_scenario(const Instance& inst, const Sequence& seq, Fn&& fn) {
  const u64 count = extreme_scenario_count(inst.n());
  for (u64 m = 0; m < count; ++m) fn(extreme_scenario(inst, seq, m));
}

inline WorstCaseResult worst_case_flow(const Instance& inst, const Sequence& seq) {
  const int n = inst.n();
  detail::check_sequence(seq, n, "worst_case_flow");

  struct State {
    i64 completion;
    i64 flow;
    int parent;  // index into previous layer
    bool high;   // release endpoint chosen at this position
  };
  std::vector<std::vector<State>> layers(static_cast<std::size_t>(n));

  {
    const Job& first = inst.jobs[static_cast<std::size_t>(seq.order[0])];
    layers[0].push_back(
        {first.release.hi + first.processing.hi, first.processing.hi, -1, true});
  }
  std::vector<State> candidates;
  for (int pos = 1; pos < n; ++pos) {
    const Job& job = inst.jobs[static_cast<std::size_t>(seq.order[static_cast<std::size_t>(pos)])];
    const bool last = pos == n - 1;
    candidates.clear();
    const auto& prev = layers[static_cast<std::size_t>(pos - 1)];
    for (int pi = 0; pi < static_cast<int>(prev.size()); ++pi) {
      const State& ps = prev[static_cast<std::size_t>(pi)];
      for (int hi = 1; hi >= 0; --hi) {
        if (last && hi == 1) continue;                       // last job: low endpoint only
        if (hi == 1 && job.release.degenerate()) continue;   // avoid duplicate choice
        const i64 r = hi ? job.release.hi : job.release.lo;
        const i64 s = std::max(r, ps.completion);
        candidates.push_back(
            {s + job.processing.hi, ps.flow + s - r + job.processing.hi, pi, hi == 1});
      }
    }
    // Pareto filter: completion descending, keep strictly increasing flow.
    std::sort(candidates.begin(), candidates.end(), [](const State& a, const State& b) {
      if (a.completion != b.completion) return a.completion > b.completion;
      if (a.flow != b.flow) return a.flow > b.flow;
      if (a.parent != b.parent) return a.parent < b.parent;
      return a.high && !b.high;
    });
    auto& layer = layers[static_cast<std::size_t>(pos)];
    i64 best_flow = -1;
    for (const State& c : candidates) {
      if (c.flow > best_flow) {
        layer.push_back(c);
        best_flow = c.flow;
      }
    }
  }

  // Flows strictly increase along the final frontier, so the max is the back.
  const auto& final_layer = layers[static_cast<std::size_t>(n - 1)];
  int idx = static_cast<int>(final_layer.size()) - 1;
  WorstCaseResult out;
  out.value = final_layer[static_cast<std::size_t>(idx)].flow;

  std::vector<bool> high(static_cast<std::size_t>(n));
  for (int pos = n - 1; pos >= 0; --pos) {
    const State& st = layers[static_cast<std::size_t>(pos)][static_cast<std::size_t>(idx)];
    high[static_cast<std::size_t>(pos)] = st.high;
    idx = st.parent;
  }
  out.witness.release.resize(static_cast<std::size_t>(n));
  out.witness.processing.resize(static_cast<std::size_t>(n));
  for (int pos = 0; pos < n; ++pos) {
    const auto j = static_cast<std::size_t>(seq.order[static_cast<std::size_t>(pos)]);
    const Job& job = inst.jobs[j];
    out.witness.release[j] = high[static_cast<std::size_t>(pos)] ? job.release.hi : job.release.lo;
    out.witness.processing[j] = job.processing.hi;
  }
  return out;
}

inline constexpr int kCornerSweepCap = 12;

// Independent check: sweep all 4^n corners of the box (both release and both
// processing endpoints per job, unrestricted) plus uniformly random interior
// scenarios. Exponential; capped hard.
inline WorstCaseResult worst_case_bruteforce(const Instance& inst, const Sequence& seq,
                                             int interior_samples, u64 seed) {
  const int n = inst.n();
  detail::check_sequence(seq, n, "worst_case_bruteforce");
  if (n > kCornerSweepCap) {
    std::ostringstream msg;
    msg << "worst_case_bruteforce: n = " << n << " exceeds the 4^n corner sweep cap of "
        << kCornerSweepCap << "; use worst_case_flow";
    throw SizeCapError(msg.str());
  }

  Scenario current;
  current.release.resize(static_cast<std::size_t>(n));
  current.processing.resize(static_cast<std::size_t>(n));
  WorstCaseResult best;
  best.value = -1;

  // DFS over sequence positions with incremental completion/flow.
  auto sweep = [&](auto&& self, int pos, i64 completion, i64 flow) -> void {
    if (pos == n) {
      if (flow > best.value) {
        best.value = flow;
        best.witness = current;
      }
      return;
    }
    const auto j = static_cast<std::size_t>(seq.order[static_cast<std::size_t>(pos)]);
    const Job& job = inst.jobs[j];
    for (int rc = 0; rc < (job.release.degenerate() ? 1 : 2); ++rc) {
      const i64 r = rc ? job.release.hi : job.release.lo;
      for (int pc = 0; pc < (job.processing.degenerate() ? 1 : 2); ++pc) {
        const i64 p = pc ? job.processing.hi : job.processing.lo;
        const i64 s = std::max(r, completion);
        current.release[j] = r;
        current.processing[j] = p;
        self(self, pos + 1, s + p, flow + s - r + p);
      }
    }
  };
  sweep(sweep, 0, 0, 0);

  SplitMix64 rng(substream_seed(seed, 0));
  Scenario sample = current;
  for (int k = 0; k < interior_samples; ++k) {
    for (int i = 0; i < n; ++i) {
      const Job& job = inst.jobs[static_cast<std::size_t>(i)];
      sample.release[static_cast<std::size_t>(i)] = uniform_int(rng, job.release.lo, job.release.hi);
      sample.processing[static_cast<std::size_t>(i)] =
          uniform_int(rng, job.processing.lo, job.processing.hi);
    }
    i64 completion = 0, flow = 0;
    for (int pos = 0; pos < n; ++pos) {
      const auto j = static_cast<std::size_t>(seq.order[static_cast<std::size_t>(pos)]);
      const i64 s = std::max(sample.release[j], completion);
      completion = s + sample.processing[j];
      flow += completion - sample.release[j];
    }
    if (flow > best.value) {
      best.value = flow;
      best.witness = sample;
    }
  }
  return best;
}

// Latest time anything can complete: every wait and every gap is below this.
inline i64 planning_horizon(const Instance& inst) {
  i64 max_r = 0, sum_p = 0;
  for (const Job& job : inst.jobs) {
    max_r = std::max(max_r, job.release.hi);
    sum_p += job.processing.hi;
  }
  return max_r + sum_p;
}

inline int min_feasible_bit_count(const Instance& inst) {
  const i64 horizon = planning_horizon(inst);
  int k = 1;
  while (((i64{1} << k) - 1) < horizon) ++k;
  return k;
}

inline constexpr int kDefaultBitCount = 10;

// MILP for the worst case of a fixed sequence. Processing times are preset
// to their upper endpoints; releases stay free in their intervals. For each
// non-first job, eta = start - release and rho = start - previous completion
// are expanded in binary (u and v bits); u_k + v_k' <= 1 forces eta * rho = 0,
// i.e. the job starts either exactly at its release or right after its
// predecessor. 2^K - 1 must cover every possible slack.
inline std::string export_awcpp_model(const Instance& inst, const Sequence& seq,
                                      int bit_count = kDefaultBitCount) {
  const int n = inst.n();
  detail::check_sequence(seq, n, "export_awcpp_model");
  if (bit_count < 1 || bit_count > 62)
    throw ValidationError("export_awcpp_model: bit count must be in [1, 62]");
  const i64 horizon = planning_horizon(inst);
  if (((i64{1} << bit_count) - 1) < horizon) {
    std::ostringstream msg;
    msg << "export_awcpp_model: K = " << bit_count << " cannot cover slacks up to " << horizon
        << "; minimal feasible K = " << min_feasible_bit_count(inst);
    throw ValidationError(msg.str());
  }

  auto var = [](const char* stem, int a) {
    std::ostringstream v;
    v << stem << "_" << a;
    return v.str();
  };
  auto var2 = [](const char* stem, int a, int b) {
    std::ostringstream v;
    v << stem << "_" << a << "_" << b;
    return v.str();
  };

  LpModel lp;
  lp.maximize = true;
  {
    std::ostringstream c;
    c << "worst-case total flow of a fixed sequence, n = " << n << ", K = " << bit_count;
    lp.comment = c.str();
  }
  i64 const_p = 0;
  for (const Job& job : inst.jobs) const_p += job.processing.hi;
  lp.objective_constant = const_p;
  for (int pos = 0; pos < n; ++pos) {
    const int j = seq.order[static_cast<std::size_t>(pos)];
    lp.objective.push_back({1, var("s", j)});
    lp.objective.push_back({-1, var("r", j)});
  }

  {
    const int j0 = seq.order[0];
    lp.rows.push_back({"first_start", {{1, var("s", j0)}, {-1, var("r", j0)}}, Rel::kEq, 0});
  }
  for (int pos = 1; pos < n; ++pos) {
    const int j = seq.order[static_cast<std::size_t>(pos)];
    const int prev = seq.order[static_cast<std::size_t>(pos - 1)];
    LinRow eta{var("eta", j), {{1, var("s", j)}, {-1, var("r", j)}}, Rel::kEq, 0};
    for (int k = 0; k < bit_count; ++k)
      eta.terms.push_back({-(i64{1} << k), var2("u", j, k)});
    lp.rows.push_back(std::move(eta));

    LinRow rho{var("rho", j), {{1, var("s", j)}, {-1, var("s", prev)}}, Rel::kEq,
               inst.jobs[static_cast<std::size_t>(prev)].processing.hi};
    for (int k = 0; k < bit_count; ++k)
      rho.terms.push_back({-(i64{1} << k), var2("v", j, k)});
    lp.rows.push_back(std::move(rho));

    for (int k = 0; k < bit_count; ++k)
      for (int k2 = 0; k2 < bit_count; ++k2) {
        std::ostringstream name;
        name << "x_" << j << "_" << k << "_" << k2;
        lp.rows.push_back(
            {name.str(), {{1, var2("u", j, k)}, {1, var2("v", j, k2)}}, Rel::kLe, 1});
      }
  }

  for (int j = 0; j < n; ++j) {
    const Job& job = inst.jobs[static_cast<std::size_t>(j)];
    lp.bounds.push_back({var("r", j), job.release.lo, job.release.hi});
  }
  for (int pos = 1; pos < n; ++pos) {
    const int j = seq.order[static_cast<std::size_t>(pos)];
    for (int k = 0; k < bit_count; ++k) lp.binaries.push_back(var2("u", j, k));
    for (int k = 0; k < bit_count; ++k) lp.binaries.push_back(var2("v", j, k));
  }
  return lp.to_text();
}

}  // namespace robustsched
