// Minimal end-to-end tour: generate an instance, look at two fixed
// sequences, then let VNS look for a robust one.

#include <iostream>

#include "robustsched/robustsched.hpp"

int main() {
  namespace rs = robustsched;

  const rs::Instance inst = rs::generate_instance({/*n=*/7, /*mu=*/2, /*seed=*/42});
  std::cout << "instance " << inst.name << " with " << inst.n() << " jobs\n";
  for (const auto& job : inst.jobs)
    std::cout << "  job " << job.id << ": release [" << job.release.lo << ", " << job.release.hi
              << "], processing [" << job.processing.lo << ", " << job.processing.hi << "]\n";

  // Identity order versus shortest-nominal-processing order.
  const rs::Sequence identity = rs::Sequence::identity(inst.n());
  const rs::Sequence spt = rs::spt_sequence(rs::all_max_scenario(inst)).sequence;
  std::cout << "identity worst-case flow: " << rs::worst_case_flow(inst, identity).value << "\n";
  std::cout << "SPT order worst-case flow: " << rs::worst_case_flow(inst, spt).value << "\n";

  rs::SearchConfig cfg;
  cfg.budget = 5000;
  cfg.seed = 7;
  const rs::SearchOutcome out = rs::run_vns(inst, cfg);
  std::cout << "VNS best worst-case flow: " << out.value << " after " << out.evaluations
            << " evaluations\n  order:";
  for (int j : out.best.order) std::cout << " " << j;
  std::cout << "\n";

  const rs::LBResult lb = rs::robust_lower_bound(inst);
  std::cout << "sampled lower bound: " << lb.value << "  (gap "
            << rs::gap(static_cast<double>(lb.value), static_cast<double>(out.value))
            << "%)\n";
  return 0;
}
