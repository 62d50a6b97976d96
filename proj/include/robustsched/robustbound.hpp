#pragma once
// Scenario-sampling lower bound on the robust optimum: for any scenario w,
// the deterministic optimum f*(w) is a valid lower bound on the min-max
// value, so the max of f* over a scenario sample is one too. The default
// sample is the all-max scenario plus extreme points (independent per-job
// endpoint choices). Interior-release draws can be added on top: f*(w) as a
// function of the release vector is a min of convex functions, so its maximum
// over the interval box is often attained strictly inside, where no endpoint
// sample can reach. Those draws keep processing at the upper endpoints, which
// never hurts: raising any processing time weakly raises every sequence's
// flow and hence f*.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "robustsched/detopt.hpp"
#include "robustsched/errors.hpp"
#include "robustsched/model.hpp"
#include "robustsched/rng.hpp"

namespace robustsched {

struct SampleSpec {
  bool include_all_max = true;
  int random_extreme_count = 32;
  int random_interior_count = 0;  // releases uniform inside their intervals, processing at hi
  u64 seed = 1;
};

struct ScenarioOptimum {
  std::string digest;
  i64 optimal_flow = 0;
};

struct LBResult {
  i64 value = 0;
  Scenario argmax_scenario;
  std::vector<ScenarioOptimum> per_scenario;  // sorted by digest
};

inline LBResult robust_lower_bound(const Instance& inst, const SampleSpec& spec = {},
                                   int exact_cap = kDefaultExactCap) {
  if (inst.jobs.empty()) throw ValidationError("robust_lower_bound: empty instance");
  if (spec.random_extreme_count < 0 || spec.random_interior_count < 0)
    throw ValidationError("robust_lower_bound: negative sample count");
  if (!spec.include_all_max && spec.random_extreme_count == 0 &&
      spec.random_interior_count == 0)
    throw ValidationError("robust_lower_bound: empty scenario sample");
  if (inst.n() > exact_cap) {
    std::ostringstream msg;
    msg << "robust_lower_bound: n = " << inst.n() << " exceeds the exact cap of " << exact_cap
        << "; shrink the instance or solve the sampled scenarios externally";
    throw SizeCapError(msg.str());
  }

  std::vector<Scenario> sample;
  if (spec.include_all_max) sample.push_back(all_max_scenario(inst));
  SplitMix64 rng(substream_seed(spec.seed, 0));
  for (int k = 0; k < spec.random_extreme_count; ++k) {
    Scenario sc;
    sc.release.reserve(inst.jobs.size());
    sc.processing.reserve(inst.jobs.size());
    // per job: release endpoint bit, then processing endpoint bit
    for (const Job& job : inst.jobs) {
      sc.release.push_back(uniform_int(rng, 0, 1) ? job.release.hi : job.release.lo);
      sc.processing.push_back(uniform_int(rng, 0, 1) ? job.processing.hi : job.processing.lo);
    }
    sample.push_back(std::move(sc));
  }
  SplitMix64 interior_rng(substream_seed(spec.seed, 1));
  for (int k = 0; k < spec.random_interior_count; ++k) {
    Scenario sc;
    sc.release.reserve(inst.jobs.size());
    sc.processing.reserve(inst.jobs.size());
    for (const Job& job : inst.jobs) {
      sc.release.push_back(uniform_int(interior_rng, job.release.lo, job.release.hi));
      sc.processing.push_back(job.processing.hi);
    }
    sample.push_back(std::move(sc));
  }

  LBResult out;
  bool first = true;
  for (const Scenario& sc : sample) {
    const OptResult opt = solve_optimal(sc, exact_cap);
    out.per_scenario.push_back({scenario_digest(sc), opt.value});
    if (first || opt.value > out.value) {  // ties keep the earliest scenario
      out.value = opt.value;
      out.argmax_scenario = sc;
      first = false;
    }
  }
  std::sort(out.per_scenario.begin(), out.per_scenario.end(),
            [](const ScenarioOptimum& a, const ScenarioOptimum& b) {
              return a.digest != b.digest ? a.digest < b.digest
                                          : a.optimal_flow < b.optimal_flow;
            });
  return out;
}

}  // namespace robustsched
