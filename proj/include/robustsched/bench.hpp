#pragma once
// Desk-scale benchmark harness: builds seeded instance grids (sizes x mu,
// a fixed count per cell), computes the sampling lower bound, runs the
// requested algorithms and emits deterministic CSV. Cells run in parallel
// (capped by ROBUSTSCHED_THREADS); results are assembled by cell index, so
// thread count and scheduling never change a byte of output.
//
// In evaluation-budget mode the elapsed column reports consumed evaluations
// and reruns are byte-identical; wall-clock mode reports seconds instead and
// is inherently nondeterministic.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "robustsched/detopt.hpp"
#include "robustsched/errors.hpp"
#include "robustsched/evaluate.hpp"
#include "robustsched/model.hpp"
#include "robustsched/robustbound.hpp"
#include "robustsched/search.hpp"
#include "robustsched/worstcase.hpp"

namespace robustsched {

// Percent gap of a lower bound against a reference optimum, rounded to two
// decimals (half away from zero).
inline double gap(i64 lower, i64 reference) {
  if (reference <= 0) throw ValidationError("gap: reference must be positive");
  if (lower > reference) throw ValidationError("gap: lower bound exceeds reference");
  return std::round(10000.0 * static_cast<double>(reference - lower) /
                    static_cast<double>(reference)) /
         100.0;
}

struct ResultRow {
  std::string instance;
  int n = 0;
  i64 mu = 0;
  std::optional<i64> lower_bound;
  std::string algo;
  std::optional<i64> cost;
  std::optional<u64> budget;
  std::string elapsed;  // evaluations (eval mode) or seconds (wall-clock mode)
  std::optional<double> gap_pct;
  std::optional<u64> seed;
};

inline constexpr const char* kResultsCsvHeader =
    "instance,n,mu,lower_bound,algo,cost,budget,elapsed,gap_pct,seed";

inline std::string results_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << kResultsCsvHeader << "\n";
  for (const ResultRow& r : rows) {
    out << r.instance << "," << r.n << "," << r.mu << ",";
    if (r.lower_bound) out << *r.lower_bound;
    out << "," << r.algo << ",";
    if (r.cost) out << *r.cost;
    out << ",";
    if (r.budget) out << *r.budget;
    out << "," << r.elapsed << ",";
    if (r.gap_pct) out << std::fixed << std::setprecision(2) << *r.gap_pct;
    out << ",";
    if (r.seed) out << *r.seed;
    out << "\n";
  }
  return out.str();
}

struct SuiteConfig {
  std::vector<int> sizes;
  std::vector<i64> mus;
  int instances_per_cell = 5;
  std::map<int, u64> budgets;  // per size; missing sizes use default_budget
  u64 default_budget = 20000;
  u64 seed = 1;
  std::vector<std::string> algorithms;  // EXH, VNS, ILS, SPT, EST, ECT, PHILLIPS
  BudgetMode budget_mode = BudgetMode::kEvaluations;
  int lb_random_extreme = 32;
  int exact_cap = kDefaultExactCap;
  int exhaustive_cap = kExhaustiveRobustCap;
};

inline const std::vector<std::string>& known_bench_algorithms() {
  static const std::vector<std::string> algos = {"EXH", "VNS",  "ILS",     "SPT",
                                                 "EST", "ECT", "PHILLIPS"};
  return algos;
}

// Suite files are JSON mirroring SuiteConfig:
//   {"sizes": [7], "mus": [2,3,4,6], "instances_per_cell": 5,
//    "budgets": {"7": 20000}, "seed": 1, "algorithms": ["EXH","VNS","ILS"]}
inline SuiteConfig parse_suite_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("suite config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("suite config: top level must be an object");
  SuiteConfig cfg;
  if (!doc.contains("sizes") || !doc["sizes"].is_array() || doc["sizes"].empty())
    throw ParseError("suite config: missing non-empty array 'sizes'");
  for (const auto& v : doc["sizes"]) cfg.sizes.push_back(v.get<int>());
  if (!doc.contains("mus") || !doc["mus"].is_array() || doc["mus"].empty())
    throw ParseError("suite config: missing non-empty array 'mus'");
  for (const auto& v : doc["mus"]) cfg.mus.push_back(v.get<i64>());
  if (doc.contains("instances_per_cell")) cfg.instances_per_cell = doc["instances_per_cell"].get<int>();
  if (cfg.instances_per_cell < 1) throw ParseError("suite config: instances_per_cell must be >= 1");
  if (doc.contains("budgets")) {
    if (!doc["budgets"].is_object()) throw ParseError("suite config: 'budgets' must map size -> budget");
    for (const auto& [key, value] : doc["budgets"].items())
      cfg.budgets[std::stoi(key)] = value.get<u64>();
  }
  if (doc.contains("default_budget")) cfg.default_budget = doc["default_budget"].get<u64>();
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<u64>();
  if (doc.contains("algorithms")) {
    for (const auto& v : doc["algorithms"]) cfg.algorithms.push_back(v.get<std::string>());
  } else {
    cfg.algorithms = {"EXH", "VNS", "ILS"};
  }
  for (const std::string& a : cfg.algorithms) {
    const auto& known = known_bench_algorithms();
    if (std::find(known.begin(), known.end(), a) == known.end())
      throw ParseError("suite config: unknown algorithm '" + a + "'");
  }
  if (doc.contains("lb_random_extreme")) cfg.lb_random_extreme = doc["lb_random_extreme"].get<int>();
  if (doc.contains("budget_mode")) {
    const std::string mode = doc["budget_mode"].get<std::string>();
    if (mode == "evals")
      cfg.budget_mode = BudgetMode::kEvaluations;
    else if (mode == "wallclock")
      cfg.budget_mode = BudgetMode::kWallClock;
    else
      throw ParseError("suite config: budget_mode must be 'evals' or 'wallclock'");
  }
  return cfg;
}

inline int harness_threads() {
  if (const char* env = std::getenv("ROBUSTSCHED_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {

inline std::string format_seconds(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << s;
  return out.str();
}

struct BenchTask {
  std::string label;
  int n = 0;
  i64 mu = 0;
  u64 instance_seed = 0;
};

// Every row of one instance, in a fixed algorithm order. Runs on a worker.
inline std::vector<ResultRow> run_bench_task(const SuiteConfig& cfg, const BenchTask& task) {
  std::vector<ResultRow> rows;
  const Instance inst = generate_instance({task.n, task.mu, task.instance_seed});

  std::optional<i64> lb;
  if (task.n <= cfg.exact_cap) {
    SampleSpec lb_spec;
    lb_spec.random_extreme_count = cfg.lb_random_extreme;
    lb_spec.seed = substream_seed(task.instance_seed, 1);
    lb = robust_lower_bound(inst, lb_spec, cfg.exact_cap).value;
  }

  const u64 budget = [&] {
    auto it = cfg.budgets.find(task.n);
    return it != cfg.budgets.end() ? it->second : cfg.default_budget;
  }();

  int algo_index = 0;
  for (const std::string& algo : cfg.algorithms) {
    ++algo_index;
    ResultRow row;
    row.instance = task.label;
    row.n = task.n;
    row.mu = task.mu;
    row.lower_bound = lb;
    row.algo = algo;
    const auto started = std::chrono::steady_clock::now();
    auto elapsed_seconds = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };
    bool proven_optimal = false;
    try {
      if (task.n == 1) {
        // one sequence; every algorithm returns it
        row.cost = worst_case_flow(inst, Sequence::identity(1)).value;
        row.elapsed = cfg.budget_mode == BudgetMode::kEvaluations
                          ? "1"
                          : format_seconds(elapsed_seconds());
        proven_optimal = true;
      } else if (algo == "EXH") {
        const SearchOutcome out = exhaustive_robust(inst, cfg.exhaustive_cap);
        row.cost = out.value;
        row.elapsed = cfg.budget_mode == BudgetMode::kEvaluations
                          ? std::to_string(out.evaluations)
                          : format_seconds(elapsed_seconds());
        proven_optimal = true;
      } else if (algo == "VNS" || algo == "ILS") {
        SearchConfig sc;
        sc.budget_mode = cfg.budget_mode;
        sc.budget = budget;
        sc.seed = substream_seed(task.instance_seed, static_cast<u64>(1 + algo_index));
        const SearchOutcome out = algo == "VNS" ? run_vns(inst, sc) : run_ils(inst, sc);
        row.cost = out.value;
        row.budget = budget;
        row.seed = sc.seed;
        row.elapsed = cfg.budget_mode == BudgetMode::kEvaluations
                          ? std::to_string(out.evaluations)
                          : format_seconds(elapsed_seconds());
      } else {  // dispatch rules, applied to the all-max scenario
        const Scenario all_max = all_max_scenario(inst);
        Sequence seq;
        if (algo == "SPT")
          seq = spt_sequence(all_max).sequence;
        else if (algo == "EST")
          seq = dispatch_heuristic(all_max, DispatchRule::kEst);
        else if (algo == "ECT")
          seq = dispatch_heuristic(all_max, DispatchRule::kEct);
        else
          seq = dispatch_heuristic(all_max, DispatchRule::kPhillips);
        row.cost = worst_case_flow(inst, seq).value;
        row.elapsed = cfg.budget_mode == BudgetMode::kEvaluations
                          ? "1"
                          : format_seconds(elapsed_seconds());
      }
    } catch (const SizeCapError&) {
      // infeasible cell for this algorithm: keep the row, leave cost empty
    }
    if (proven_optimal && lb && row.cost) row.gap_pct = gap(*lb, *row.cost);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline std::vector<ResultRow> run_benchmark(const SuiteConfig& cfg) {
  if (cfg.sizes.empty() || cfg.mus.empty())
    throw ValidationError("run_benchmark: sizes and mus must be non-empty");
  if (cfg.algorithms.empty()) throw ValidationError("run_benchmark: no algorithms requested");

  // labels: letter per size, instance number runs across mus
  std::vector<detail::BenchTask> tasks;
  u64 running = 0;
  for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
    int number = 0;
    for (i64 mu : cfg.mus) {
      for (int rep = 0; rep < cfg.instances_per_cell; ++rep) {
        ++number;
        detail::BenchTask t;
        std::ostringstream label;
        if (si < 26)
          label << static_cast<char>('A' + si) << number;
        else
          label << "S" << cfg.sizes[si] << "_" << number;
        t.label = label.str();
        t.n = cfg.sizes[si];
        t.mu = mu;
        t.instance_seed = cfg.seed + running;
        ++running;
        tasks.push_back(std::move(t));
      }
    }
  }

  std::vector<std::vector<ResultRow>> per_task(tasks.size());
  const int threads = std::min<int>(harness_threads(), static_cast<int>(tasks.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      per_task[i] = detail::run_bench_task(cfg, tasks[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          per_task[i] = detail::run_bench_task(cfg, tasks[i]);
        }
      });
    for (std::thread& th : pool) th.join();
  }

  // assemble in task order; per-(size, mu) mean-gap rows close each cell
  std::vector<ResultRow> rows;
  std::size_t t = 0;
  for (int size : cfg.sizes) {
    for (i64 mu : cfg.mus) {
      double gap_sum = 0;
      int gap_count = 0;
      for (int rep = 0; rep < cfg.instances_per_cell; ++rep, ++t) {
        for (ResultRow& row : per_task[t]) {
          if (row.gap_pct) {
            gap_sum += *row.gap_pct;
            ++gap_count;
          }
          rows.push_back(std::move(row));
        }
      }
      if (gap_count > 0) {
        ResultRow mean;
        mean.instance = "MEAN";
        mean.n = size;
        mean.mu = mu;
        mean.algo = "MEAN";
        mean.gap_pct = std::round(100.0 * gap_sum / gap_count) / 100.0;
        rows.push_back(std::move(mean));
      }
    }
  }
  return rows;
}

// --- run-to-run distribution of a randomized search --------------------------

struct DistributionResult {
  struct Run {
    u64 seed;
    i64 final_value;
  };
  struct Bin {
    double lo;
    double hi;
    int count;
  };
  std::vector<Run> runs;
  std::vector<Bin> bins;
  double mean = 0;
  double variance = 0;  // population variance
};

inline DistributionResult distribution_study(const Instance& inst, const std::string& algo,
                                             int runs, u64 budget, u64 seed = 1,
                                             BudgetMode mode = BudgetMode::kEvaluations,
                                             int bin_count = 10) {
  if (runs < 2) throw ValidationError("distribution_study: need at least 2 runs");
  if (algo != "VNS" && algo != "ILS")
    throw ValidationError("distribution_study: algo must be VNS or ILS");
  if (bin_count < 1) throw ValidationError("distribution_study: bin count must be >= 1");

  DistributionResult out;
  out.runs.reserve(static_cast<std::size_t>(runs));
  for (int r = 0; r < runs; ++r) {
    const u64 run_seed = seed + static_cast<u64>(r);
    i64 value;
    if (inst.n() == 1) {
      value = worst_case_flow(inst, Sequence::identity(1)).value;
    } else {
      SearchConfig sc;
      sc.budget_mode = mode;
      sc.budget = budget;
      sc.seed = run_seed;
      value = (algo == "VNS" ? run_vns(inst, sc) : run_ils(inst, sc)).value;
    }
    out.runs.push_back({run_seed, value});
  }

  i64 lo = out.runs.front().final_value, hi = lo;
  double sum = 0;
  for (const auto& r : out.runs) {
    lo = std::min(lo, r.final_value);
    hi = std::max(hi, r.final_value);
    sum += static_cast<double>(r.final_value);
  }
  out.mean = sum / runs;
  double sq = 0;
  for (const auto& r : out.runs) {
    const double d = static_cast<double>(r.final_value) - out.mean;
    sq += d * d;
  }
  out.variance = sq / runs;

  if (lo == hi) {
    out.bins.push_back({static_cast<double>(lo), static_cast<double>(hi), runs});
  } else {
    const double width = static_cast<double>(hi - lo) / bin_count;
    out.bins.resize(static_cast<std::size_t>(bin_count));
    for (int b = 0; b < bin_count; ++b)
      out.bins[static_cast<std::size_t>(b)] = {lo + b * width, lo + (b + 1) * width, 0};
    for (const auto& r : out.runs) {
      int b = static_cast<int>((static_cast<double>(r.final_value) - static_cast<double>(lo)) / width);
      b = std::min(b, bin_count - 1);
      ++out.bins[static_cast<std::size_t>(b)].count;
    }
  }
  return out;
}

inline std::string distribution_to_csv(const DistributionResult& dist) {
  std::ostringstream out;
  out << "seed,final_value\n";
  for (const auto& r : dist.runs) out << r.seed << "," << r.final_value << "\n";
  return out.str();
}

inline std::string distribution_bins_to_csv(const DistributionResult& dist) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count\n" << std::fixed << std::setprecision(2);
  for (const auto& b : dist.bins) out << b.lo << "," << b.hi << "," << b.count << "\n";
  return out.str();
}

inline std::string trace_to_csv(const SearchOutcome& outcome) {
  std::ostringstream out;
  out << "step,best_value\n";
  for (const TracePoint& p : outcome.trace) out << p.step << "," << p.value << "\n";
  return out.str();
}

}  // namespace robustsched
