#pragma once

// Small instance builders shared by the test binaries.

#include <array>
#include <string>
#include <vector>

#include "robustsched/robustsched.hpp"

namespace testutil {

using robustsched::Instance;
using robustsched::Interval;
using robustsched::i64;

// jobs given as {release_lo, release_hi, processing_lo, processing_hi}
inline Instance make_instance(const std::vector<std::array<i64, 4>>& rows,
                              const std::string& name = "t") {
  Instance inst;
  inst.name = name;
  for (std::size_t i = 0; i < rows.size(); ++i)
    inst.jobs.push_back({static_cast<int>(i),
                         Interval{rows[i][0], rows[i][1]},
                         Interval{rows[i][2], rows[i][3]}});
  return inst;
}

// job 0: r in [0,2], p in [1,3]; job 1: r in [0,4], p in [2,2].
// Worst-case flows: sequence [0,1] -> 10, sequence [1,0] -> 11.
inline Instance two_job_example() {
  return make_instance({{0, 2, 1, 3}, {0, 4, 2, 2}}, "two_job");
}

// Two unit-slot jobs, both p = 2, releases 1 and 3; degenerate intervals.
inline Instance slot_pair_example() {
  return make_instance({{1, 1, 2, 2}, {3, 3, 2, 2}}, "slot_pair");
}

// Zero releases, degenerate processing (5, 2, 4); robust order is [1,2,0].
inline Instance zero_release_trio() {
  return make_instance({{0, 0, 5, 5}, {0, 0, 2, 2}, {0, 0, 4, 4}}, "trio");
}

// Uniform random instance with non-degenerate intervals, for property tests.
inline Instance random_instance(int n, robustsched::SplitMix64& rng, i64 r_span = 12,
                                i64 p_span = 6) {
  Instance inst;
  inst.name = "rand";
  for (int i = 0; i < n; ++i) {
    const i64 rlo = robustsched::uniform_int(rng, 0, r_span);
    const i64 rhi = rlo + robustsched::uniform_int(rng, 0, r_span / 2);
    const i64 plo = robustsched::uniform_int(rng, 1, p_span);
    const i64 phi = plo + robustsched::uniform_int(rng, 0, p_span / 2);
    inst.jobs.push_back({i, Interval{rlo, rhi}, Interval{plo, phi}});
  }
  return inst;
}

inline robustsched::Sequence random_sequence(int n, robustsched::SplitMix64& rng) {
  robustsched::Sequence seq = robustsched::Sequence::identity(n);
  robustsched::shuffle(seq.order, rng);
  return seq;
}

inline robustsched::Scenario random_scenario(int n, robustsched::SplitMix64& rng,
                                             i64 r_span = 12, i64 p_span = 6) {
  robustsched::Scenario sc;
  for (int i = 0; i < n; ++i) {
    sc.release.push_back(robustsched::uniform_int(rng, 0, r_span));
    sc.processing.push_back(robustsched::uniform_int(rng, 1, p_span));
  }
  return sc;
}

}  // namespace testutil
