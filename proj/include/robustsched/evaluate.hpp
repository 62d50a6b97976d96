#pragma once
// Flow-time evaluation of a fixed job sequence under a fixed scenario, plus
// the two provably-optimal sorting rules for the no-release special cases.
//
// Scheduling rule: jobs run in sequence order, each starting as soon as it is
// released and the machine is free. Since times are nonnegative the first job
// starts exactly at its release. Flow of a job is completion minus release.

#include <algorithm>
#include <numeric>
#include <vector>

#include "robustsched/errors.hpp"
#include "robustsched/model.hpp"

namespace robustsched {

struct Schedule {
  Sequence sequence;
  std::vector<i64> starts;       // indexed by job id
  std::vector<i64> completions;  // indexed by job id
  i64 total_flow = 0;
};

namespace detail {
inline void check_sequence(const Sequence& seq, int n, const char* who) {
  if (seq.n() != n)
    throw ValidationError(std::string(who) + ": sequence length does not match job count");
  if (!seq.is_permutation())
    throw ValidationError(std::string(who) + ": sequence is not a permutation of 0..n-1");
}
}  // namespace detail

inline Schedule evaluate_sequence(const Sequence& seq, const Scenario& sc) {
  const int n = sc.n();
  detail::check_sequence(seq, n, "evaluate_sequence");
  Schedule out;
  out.sequence = seq;
  out.starts.assign(static_cast<std::size_t>(n), 0);
  out.completions.assign(static_cast<std::size_t>(n), 0);
  i64 prev_completion = 0;
  for (int pos = 0; pos < n; ++pos) {
    const auto j = static_cast<std::size_t>(seq.order[static_cast<std::size_t>(pos)]);
    const i64 s = std::max(sc.release[j], prev_completion);
    out.starts[j] = s;
    prev_completion = s + sc.processing[j];
    out.completions[j] = prev_completion;
    out.total_flow += prev_completion - sc.release[j];
  }
  return out;
}

struct SptResult {
  Sequence sequence;
  bool advisory = false;  // true when releases are nonzero: SPT is a heuristic there
};

// Shortest processing time first, ties by job id. Exact minimizer of total
// flow when all releases are zero; otherwise returned as advisory.
inline SptResult spt_sequence(const Scenario& sc) {
  const int n = sc.n();
  if (n < 1) throw ValidationError("spt_sequence: empty scenario");
  SptResult out;
  out.sequence = Sequence::identity(n);
  std::sort(out.sequence.order.begin(), out.sequence.order.end(), [&](int a, int b) {
    const auto pa = sc.processing[static_cast<std::size_t>(a)];
    const auto pb = sc.processing[static_cast<std::size_t>(b)];
    return pa != pb ? pa < pb : a < b;
  });
  out.advisory =
      std::any_of(sc.release.begin(), sc.release.end(), [](i64 r) { return r != 0; });
  return out;
}

// Nondecreasing upper processing endpoints, ties by job id. Exact minimizer
// of the worst-case flow when every release interval is [0, 0].
inline Sequence robust_sequence_no_release(const Instance& inst) {
  if (inst.jobs.empty()) throw ValidationError("robust_sequence_no_release: empty instance");
  for (const Job& job : inst.jobs)
    if (job.release.lo != 0 || job.release.hi != 0)
      throw ValidationError("robust_sequence_no_release: job " + std::to_string(job.id) +
                            " has a nonzero release interval");
  Sequence seq = Sequence::identity(inst.n());
  std::sort(seq.order.begin(), seq.order.end(), [&](int a, int b) {
    const auto pa = inst.jobs[static_cast<std::size_t>(a)].processing.hi;
    const auto pb = inst.jobs[static_cast<std::size_t>(b)].processing.hi;
    return pa != pb ? pa < pb : a < b;
  });
  return seq;
}

}  // namespace robustsched
