#pragma once
// Exact and heuristic solvers for the deterministic problem: minimize total
// flow of all jobs on one machine under a fixed scenario. Strongly NP-hard
// with release times, so the exact path is depth-first branch and bound over
// sequence prefixes with a preemptive SRPT bound, capped by size. Also here:
// the time-indexed set-partitioning model and the big-M MILP export.

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "robustsched/errors.hpp"
#include "robustsched/evaluate.hpp"
#include "robustsched/lp_writer.hpp"
#include "robustsched/model.hpp"

namespace robustsched {

struct OptResult {
  Sequence sequence;
  i64 value = 0;
  u64 nodes = 0;
  bool proven_optimal = false;
};

struct SrptOutcome {
  i64 flow = 0;
  std::vector<i64> completions;  // one per scheduled job, in `ids` order
};

namespace detail {

// Preemptive shortest-remaining-processing-time schedule of the given jobs,
// machine unavailable before `available_from`. Optimal for the preemptive
// relaxation, so its flow lower-bounds any non-preemptive completion of the
// same jobs. Preemption decisions only happen at release instants.
inline SrptOutcome srpt_core(const Scenario& sc, const std::vector<int>& ids,
                             i64 available_from) {
  struct Item {
    i64 release;
    i64 remaining;
    int id;
    int slot;  // index into ids
  };
  std::vector<Item> items;
  items.reserve(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const auto j = static_cast<std::size_t>(ids[k]);
    items.push_back({sc.release[j], sc.processing[j], ids[k], static_cast<int>(k)});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.release != b.release ? a.release < b.release : a.id < b.id;
  });

  auto cmp = [](const Item& a, const Item& b) {
    return a.remaining != b.remaining ? a.remaining > b.remaining : a.id > b.id;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> ready(cmp);

  SrptOutcome out;
  out.completions.assign(ids.size(), 0);
  std::size_t next = 0;
  i64 t = available_from;
  while (next < items.size() || !ready.empty()) {
    if (ready.empty()) {
      t = std::max(t, items[next].release);
    }
    while (next < items.size() && items[next].release <= t) ready.push(items[next++]);
    Item cur = ready.top();
    ready.pop();
    const i64 next_release = next < items.size() ? items[next].release : 0;
    if (next < items.size() && t + cur.remaining > next_release) {
      cur.remaining -= next_release - t;
      t = next_release;
      ready.push(cur);
    } else {
      t += cur.remaining;
      out.flow += t - cur.release;
      out.completions[static_cast<std::size_t>(cur.slot)] = t;
    }
  }
  return out;
}

}  // namespace detail

// Flow of the preemptive SRPT relaxation over all jobs of the scenario.
inline SrptOutcome srpt_relaxation(const Scenario& sc, i64 available_from = 0) {
  if (sc.n() < 1) throw ValidationError("srpt_relaxation: empty scenario");
  std::vector<int> ids(static_cast<std::size_t>(sc.n()));
  std::iota(ids.begin(), ids.end(), 0);
  return detail::srpt_core(sc, ids, available_from);
}

enum class DispatchRule { kEst, kEct, kPhillips };

// EST: whenever the machine frees, run the shortest already-released job,
//      jumping to the next release when none is available.
// ECT: repeatedly pick the job that would complete earliest.
// PHILLIPS: order jobs by their preemptive SRPT completion times.
// All ties by job id.
inline Sequence dispatch_heuristic(const Scenario& sc, DispatchRule rule) {
  const int n = sc.n();
  if (n < 1) throw ValidationError("dispatch_heuristic: empty scenario");
  Sequence seq;
  seq.order.reserve(static_cast<std::size_t>(n));

  if (rule == DispatchRule::kPhillips) {
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    const auto srpt = detail::srpt_core(sc, ids, 0);
    seq.order = ids;
    std::sort(seq.order.begin(), seq.order.end(), [&](int a, int b) {
      const i64 ca = srpt.completions[static_cast<std::size_t>(a)];
      const i64 cb = srpt.completions[static_cast<std::size_t>(b)];
      return ca != cb ? ca < cb : a < b;
    });
    return seq;
  }

  std::vector<char> used(static_cast<std::size_t>(n), 0);
  i64 t = 0;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    if (rule == DispatchRule::kEst) {
      i64 next_release = -1;
      for (int j = 0; j < n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const i64 r = sc.release[static_cast<std::size_t>(j)];
        if (r <= t) {
          if (pick < 0 || sc.processing[static_cast<std::size_t>(j)] <
                              sc.processing[static_cast<std::size_t>(pick)])
            pick = j;
        } else if (next_release < 0 || r < next_release) {
          next_release = r;
        }
      }
      if (pick < 0) {
        t = next_release;
        --step;
        continue;
      }
      t += sc.processing[static_cast<std::size_t>(pick)];
    } else {  // kEct
      i64 best_ct = 0;
      for (int j = 0; j < n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const i64 ct = std::max(t, sc.release[static_cast<std::size_t>(j)]) +
                       sc.processing[static_cast<std::size_t>(j)];
        if (pick < 0 || ct < best_ct) {
          pick = j;
          best_ct = ct;
        }
      }
      t = best_ct;
    }
    used[static_cast<std::size_t>(pick)] = 1;
    seq.order.push_back(pick);
  }
  return seq;
}

inline constexpr int kDefaultExactCap = 20;

// Exact minimizer of total flow. DFS over sequence prefixes; bound = prefix
// flow + SRPT relaxation of the remaining jobs with the machine freed at the
// prefix completion; initial incumbent from the dispatch heuristics; children
// explored in ascending earliest-completion order. No other dominance rules.
inline OptResult solve_optimal(const Scenario& sc, int exact_cap = kDefaultExactCap) {
  const int n = sc.n();
  if (n < 1) throw ValidationError("solve_optimal: empty scenario");
  exact_cap = std::min(exact_cap, 62);  // prefix bitmask width
  if (n > exact_cap) {
    std::ostringstream msg;
    msg << "solve_optimal: n = " << n << " exceeds the exact cap of " << exact_cap
        << "; raise the cap or use a dispatch heuristic";
    throw SizeCapError(msg.str());
  }

  OptResult best;
  best.proven_optimal = true;
  for (DispatchRule rule : {DispatchRule::kEst, DispatchRule::kEct, DispatchRule::kPhillips}) {
    Sequence s = dispatch_heuristic(sc, rule);
    const i64 v = evaluate_sequence(s, sc).total_flow;
    if (best.sequence.order.empty() || v < best.value) {
      best.sequence = std::move(s);
      best.value = v;
    }
  }

  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(n));
  std::vector<int> remaining;

  auto dfs = [&](auto&& self, u64 used_mask, i64 completion, i64 flow) -> void {
    ++best.nodes;
    if (static_cast<int>(prefix.size()) == n) {
      if (flow < best.value) {
        best.value = flow;
        best.sequence.order = prefix;
      }
      return;
    }
    remaining.clear();
    for (int j = 0; j < n; ++j)
      if (!(used_mask >> j & 1)) remaining.push_back(j);
    const i64 bound = flow + detail::srpt_core(sc, remaining, completion).flow;
    if (bound >= best.value) return;

    // ascending earliest completion, ties by id (remaining is id-sorted)
    std::vector<int> children = remaining;
    std::stable_sort(children.begin(), children.end(), [&](int a, int b) {
      const i64 ca = std::max(completion, sc.release[static_cast<std::size_t>(a)]) +
                     sc.processing[static_cast<std::size_t>(a)];
      const i64 cb = std::max(completion, sc.release[static_cast<std::size_t>(b)]) +
                     sc.processing[static_cast<std::size_t>(b)];
      return ca < cb;
    });
    for (int j : children) {
      const i64 s = std::max(completion, sc.release[static_cast<std::size_t>(j)]);
      const i64 c = s + sc.processing[static_cast<std::size_t>(j)];
      prefix.push_back(j);
      self(self, used_mask | (u64{1} << j), c, flow + c - sc.release[static_cast<std::size_t>(j)]);
      prefix.pop_back();
    }
  };
  dfs(dfs, 0, 0, 0);
  return best;
}

inline constexpr int kExhaustiveCap = 10;

// Plain n! enumeration, lexicographic order, strict improvement (so ties
// resolve to the lexicographically smallest optimal sequence).
inline OptResult exhaustive_optimal(const Scenario& sc, int cap = kExhaustiveCap) {
  const int n = sc.n();
  if (n < 1) throw ValidationError("exhaustive_optimal: empty scenario");
  if (n > cap) {
    std::ostringstream msg;
    msg << "exhaustive_optimal: n = " << n << " exceeds the enumeration cap of " << cap;
    throw SizeCapError(msg.str());
  }
  Sequence perm = Sequence::identity(n);
  OptResult best;
  best.proven_optimal = true;
  best.value = 0;
  do {
    ++best.nodes;
    i64 completion = 0, flow = 0;
    for (int pos = 0; pos < n; ++pos) {
      const auto j = static_cast<std::size_t>(perm.order[static_cast<std::size_t>(pos)]);
      const i64 s = std::max(completion, sc.release[j]);
      completion = s + sc.processing[j];
      flow += completion - sc.release[j];
    }
    if (best.sequence.order.empty() || flow < best.value) {
      best.value = flow;
      best.sequence = perm;
    }
  } while (std::next_permutation(perm.order.begin(), perm.order.end()));
  return best;
}

// --- time-indexed set partitioning ------------------------------------------
//
// Slots are 1-indexed unit intervals; a release value names the first slot a
// job may occupy. Releases of 0 have no slot under that convention, so all
// releases are shifted up by max(0, 1 - min release); a uniform shift changes
// neither delays nor total flow. A column is (job, start slot); its cost is
// the delay start - release-slot, the constant sum of processing times being
// dropped from the objective.

struct SetPartitioningColumn {
  int job = 0;
  i64 start_slot = 0;
  i64 delay = 0;
  i64 duration = 0;
};

struct SetPartitioningModel {
  std::vector<SetPartitioningColumn> columns;
  std::vector<std::vector<std::uint8_t>> job_rows;   // n x L, one 1-block per job
  std::vector<std::vector<std::uint8_t>> slot_rows;  // H x L, machine capacity
  i64 horizon = 0;
  i64 slot_shift = 0;
};

namespace detail {
// Earliest-release-first eager packing = minimal horizon admitting any
// feasible selection.
inline i64 min_feasible_horizon(const std::vector<i64>& release_slot,
                                const std::vector<i64>& duration) {
  std::vector<int> ids(release_slot.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const auto ra = release_slot[static_cast<std::size_t>(a)];
    const auto rb = release_slot[static_cast<std::size_t>(b)];
    return ra != rb ? ra < rb : a < b;
  });
  i64 last_used = 0;
  for (int j : ids) {
    const i64 start = std::max(release_slot[static_cast<std::size_t>(j)], last_used + 1);
    last_used = start + duration[static_cast<std::size_t>(j)] - 1;
  }
  return last_used;
}
}  // namespace detail

inline SetPartitioningModel build_set_partitioning(const Scenario& sc,
                                                   std::optional<i64> horizon = {}) {
  const int n = sc.n();
  if (n < 1) throw ValidationError("build_set_partitioning: empty scenario");

  SetPartitioningModel model;
  const i64 min_r = *std::min_element(sc.release.begin(), sc.release.end());
  model.slot_shift = std::max<i64>(0, 1 - min_r);
  std::vector<i64> release_slot(static_cast<std::size_t>(n));
  i64 sum_p = 0, max_slot = 0;
  for (int j = 0; j < n; ++j) {
    release_slot[static_cast<std::size_t>(j)] = sc.release[static_cast<std::size_t>(j)] + model.slot_shift;
    max_slot = std::max(max_slot, release_slot[static_cast<std::size_t>(j)]);
    sum_p += sc.processing[static_cast<std::size_t>(j)];
  }
  const i64 min_h = detail::min_feasible_horizon(release_slot, sc.processing);
  model.horizon = horizon.value_or(max_slot + sum_p);
  if (model.horizon < min_h) {
    std::ostringstream msg;
    msg << "build_set_partitioning: horizon " << model.horizon
        << " too small; minimal feasible H = " << min_h;
    throw ValidationError(msg.str());
  }

  for (int j = 0; j < n; ++j) {
    const i64 rel = release_slot[static_cast<std::size_t>(j)];
    const i64 dur = sc.processing[static_cast<std::size_t>(j)];
    for (i64 a = rel; a + dur - 1 <= model.horizon; ++a)
      model.columns.push_back({j, a, a - rel, dur});
  }
  const std::size_t cols = model.columns.size();
  model.job_rows.assign(static_cast<std::size_t>(n), std::vector<std::uint8_t>(cols, 0));
  model.slot_rows.assign(static_cast<std::size_t>(model.horizon),
                         std::vector<std::uint8_t>(cols, 0));
  for (std::size_t l = 0; l < cols; ++l) {
    const auto& col = model.columns[l];
    model.job_rows[static_cast<std::size_t>(col.job)][l] = 1;
    for (i64 t = col.start_slot; t < col.start_slot + col.duration; ++t)
      model.slot_rows[static_cast<std::size_t>(t - 1)][l] = 1;
  }
  return model;
}

inline std::string export_set_partitioning_model(const SetPartitioningModel& model) {
  LpModel lp;
  {
    std::ostringstream c;
    c << "time-indexed set partitioning, " << model.job_rows.size() << " jobs, "
      << model.columns.size() << " columns, horizon " << model.horizon
      << " (total flow = objective + sum of processing times)";
    lp.comment = c.str();
  }
  auto var = [](const SetPartitioningColumn& col) {
    std::ostringstream v;
    v << "tau_" << col.job << "_" << col.start_slot;
    return v.str();
  };
  for (const auto& col : model.columns) {
    lp.objective.push_back({col.delay, var(col)});
    lp.binaries.push_back(var(col));
  }
  for (std::size_t j = 0; j < model.job_rows.size(); ++j) {
    LinRow row;
    {
      std::ostringstream name;
      name << "assign_" << j;
      row.name = name.str();
    }
    row.rel = Rel::kEq;
    row.rhs = 1;
    for (std::size_t l = 0; l < model.columns.size(); ++l)
      if (model.job_rows[j][l]) row.terms.push_back({1, var(model.columns[l])});
    lp.rows.push_back(std::move(row));
  }
  for (std::size_t t = 0; t < model.slot_rows.size(); ++t) {
    LinRow row;
    {
      std::ostringstream name;
      name << "slot_" << (t + 1);
      row.name = name.str();
    }
    row.rel = Rel::kLe;
    row.rhs = 1;
    for (std::size_t l = 0; l < model.columns.size(); ++l)
      if (model.slot_rows[t][l]) row.terms.push_back({1, var(model.columns[l])});
    if (!row.terms.empty()) lp.rows.push_back(std::move(row));
  }
  return lp.to_text();
}

// Disjunctive big-M MILP for the deterministic problem: continuous starts,
// one ordering binary per ordered pair, M = max release + sum of processing.
inline std::string export_dsmsp_bigm(const Scenario& sc) {
  const int n = sc.n();
  if (n < 1) throw ValidationError("export_dsmsp_bigm: empty scenario");
  i64 max_r = 0, sum_p = 0, sum_r = 0;
  for (int j = 0; j < n; ++j) {
    max_r = std::max(max_r, sc.release[static_cast<std::size_t>(j)]);
    sum_p += sc.processing[static_cast<std::size_t>(j)];
    sum_r += sc.release[static_cast<std::size_t>(j)];
  }
  const i64 big_m = max_r + sum_p;

  auto svar = [](int j) {
    std::ostringstream v;
    v << "s_" << j;
    return v.str();
  };
  LpModel lp;
  {
    std::ostringstream c;
    c << "single machine total flow, big-M ordering formulation, n = " << n << ", M = " << big_m;
    lp.comment = c.str();
  }
  lp.maximize = false;
  for (int j = 0; j < n; ++j) lp.objective.push_back({1, svar(j)});
  lp.objective_constant = sum_p - sum_r;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::ostringstream zname, rname;
      zname << "z_" << i << "_" << j;
      rname << "bigm_" << i << "_" << j;
      // s_j >= s_i + p_i when z_ij = 1
      lp.rows.push_back({rname.str(),
                         {{1, svar(j)}, {-1, svar(i)}, {-big_m, zname.str()}},
                         Rel::kGe,
                         sc.processing[static_cast<std::size_t>(i)] - big_m});
      lp.binaries.push_back(zname.str());
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::ostringstream name, zij, zji;
      name << "pair_" << i << "_" << j;
      zij << "z_" << i << "_" << j;
      zji << "z_" << j << "_" << i;
      lp.rows.push_back({name.str(), {{1, zij.str()}, {1, zji.str()}}, Rel::kEq, 1});
    }
  for (int j = 0; j < n; ++j)
    lp.bounds.push_back({svar(j), sc.release[static_cast<std::size_t>(j)], std::nullopt});
  return lp.to_text();
}

}  // namespace robustsched
