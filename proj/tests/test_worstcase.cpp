#include <algorithm>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace robustsched;

namespace {

int count_lines_with(const std::string& text, const std::string& needle) {
  int count = 0;
  std::size_t pos = 0;
  std::string line;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    if (line.find(needle) != std::string::npos) ++count;
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  return count;
}

}  // namespace

TEST_CASE("candidate scenario counts by job count") {
  REQUIRE(extreme_scenario_count(1) == 1);
  REQUIRE(extreme_scenario_count(2) == 1);
  REQUIRE(extreme_scenario_count(3) == 2);
  REQUIRE(extreme_scenario_count(7) == 32);
  REQUIRE_THROWS_AS(extreme_scenario_count(70), SizeCapError);
}

TEST_CASE("two-job candidate pins first release high, last low, processing high") {
  const Instance inst = testutil::two_job_example();
  const Scenario sc = extreme_scenario(inst, Sequence{{0, 1}}, 0);
  REQUIRE(sc.release == std::vector<i64>{2, 0});
  REQUIRE(sc.processing == std::vector<i64>{3, 2});
}

TEST_CASE("three-job candidates differ only in the middle release") {
  const Instance inst =
      testutil::make_instance({{0, 2, 1, 2}, {1, 5, 1, 2}, {0, 3, 1, 2}});
  const Sequence seq{{0, 1, 2}};
  const Scenario a = extreme_scenario(inst, seq, 0);
  const Scenario b = extreme_scenario(inst, seq, 1);
  REQUIRE(a.release[0] == b.release[0]);
  REQUIRE(a.release[2] == b.release[2]);
  REQUIRE(a.release[1] == 1);
  REQUIRE(b.release[1] == 5);
  REQUIRE(a.processing == b.processing);
}

TEST_CASE("all candidates stay inside the instance intervals") {
  const Instance inst = generate_instance({7, 3, 4});
  const Sequence seq = Sequence::identity(7);
  int seen = 0;
  for_each_extreme_scenario(inst, seq, [&](const Scenario& sc) {
    ++seen;
    for (std::size_t j = 0; j < 7; ++j) {
      REQUIRE(inst.jobs[j].release.contains(sc.release[j]));
      REQUIRE(inst.jobs[j].processing.contains(sc.processing[j]));
    }
  });
  REQUIRE(seen == 32);
}

TEST_CASE("worst case of the natural order on the two-job example is 10") {
  const Instance inst = testutil::two_job_example();
  const WorstCaseResult res = worst_case_flow(inst, Sequence{{0, 1}});
  REQUIRE(res.value == 10);
  REQUIRE(res.witness.release == std::vector<i64>{2, 0});
  REQUIRE(res.witness.processing == std::vector<i64>{3, 2});
  REQUIRE(evaluate_sequence(Sequence{{0, 1}}, res.witness).total_flow == 10);
}

TEST_CASE("worst case of the reversed order on the two-job example is 11") {
  const Instance inst = testutil::two_job_example();
  const WorstCaseResult res = worst_case_flow(inst, Sequence{{1, 0}});
  REQUIRE(res.value == 11);
  REQUIRE(res.witness.release == std::vector<i64>{0, 4});
  REQUIRE(res.witness.processing == std::vector<i64>{3, 2});
  REQUIRE(evaluate_sequence(Sequence{{1, 0}}, res.witness).total_flow == 11);
}

TEST_CASE("degenerate intervals collapse the worst case to plain evaluation") {
  const Instance inst = testutil::slot_pair_example();
  const Sequence seq{{0, 1}};
  REQUIRE(worst_case_flow(inst, seq).value ==
          evaluate_sequence(seq, all_max_scenario(inst)).total_flow);
}

TEST_CASE("single job worst case is its upper processing bound") {
  const Instance inst = testutil::make_instance({{1, 4, 2, 6}});
  const WorstCaseResult res = worst_case_flow(inst, Sequence{{0}});
  REQUIRE(res.value == 6);
  REQUIRE(res.witness.release == std::vector<i64>{4});
}

TEST_CASE("corner sweep agrees with the pruned dynamic program") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(uniform_int(rng, 0, 6));
    const Instance inst = testutil::random_instance(n, rng);
    const Sequence seq = testutil::random_sequence(n, rng);
    const WorstCaseResult fast = worst_case_flow(inst, seq);
    const WorstCaseResult brute = worst_case_bruteforce(inst, seq, 200, 7);
    REQUIRE(fast.value == brute.value);
    REQUIRE(evaluate_sequence(seq, brute.witness).total_flow == brute.value);
    REQUIRE(evaluate_sequence(seq, fast.witness).total_flow == fast.value);
  }
}

TEST_CASE("the dynamic program equals explicit candidate enumeration at n = 20") {
  SplitMix64 rng(55);
  const Instance inst = testutil::random_instance(20, rng);
  const Sequence seq = testutil::random_sequence(20, rng);
  i64 enumerated = 0;
  for_each_extreme_scenario(inst, seq, [&](const Scenario& sc) {
    enumerated = std::max(enumerated, evaluate_sequence(seq, sc).total_flow);
  });
  REQUIRE(worst_case_flow(inst, seq).value == enumerated);
}

TEST_CASE("interior scenarios never beat the reported worst case") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = testutil::random_instance(6, rng);
    const Sequence seq = testutil::random_sequence(6, rng);
    const i64 value = worst_case_flow(inst, seq).value;
    SplitMix64 sampler(substream_seed(900 + trial, 0));
    for (int s = 0; s < 300; ++s) {
      Scenario sc;
      for (const auto& job : inst.jobs) {
        sc.release.push_back(uniform_int(sampler, job.release.lo, job.release.hi));
        sc.processing.push_back(uniform_int(sampler, job.processing.lo, job.processing.hi));
      }
      REQUIRE(evaluate_sequence(seq, sc).total_flow <= value);
    }
  }
}

TEST_CASE("widening any interval cannot shrink the worst case") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(uniform_int(rng, 0, 4));
    Instance inst = testutil::random_instance(n, rng);
    const Sequence seq = testutil::random_sequence(n, rng);
    const i64 base = worst_case_flow(inst, seq).value;
    Instance wider = inst;
    const auto j = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
    if (uniform_int(rng, 0, 1) == 0)
      wider.jobs[j].release.hi += 2;
    else
      wider.jobs[j].processing.hi += 2;
    REQUIRE(worst_case_flow(wider, seq).value >= base);
  }
}

TEST_CASE("brute force size cap") {
  SplitMix64 rng(1);
  const Instance inst = testutil::random_instance(kCornerSweepCap + 1, rng);
  REQUIRE_THROWS_AS(worst_case_bruteforce(inst, Sequence::identity(kCornerSweepCap + 1), 0, 1),
                    SizeCapError);
}

TEST_CASE("planning horizon is max release bound plus total processing") {
  REQUIRE(planning_horizon(testutil::two_job_example()) == 4 + 3 + 2);
}

TEST_CASE("binary expansion width covers the horizon") {
  const Instance inst = testutil::two_job_example();  // horizon 9 -> K = 4
  REQUIRE(min_feasible_bit_count(inst) == 4);
}

TEST_CASE("worst-case model export has the documented shape") {
  // five unit jobs, horizon 6, so three expansion bits suffice
  const Instance inst = testutil::make_instance(
      {{0, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}});
  const std::string lp = export_awcpp_model(inst, Sequence::identity(5), 3);
  REQUIRE(count_lines_with(lp, " u_") >= 1);
  int u_bins = 0, v_bins = 0;
  std::size_t pos = 0;
  const std::size_t bin_start = lp.find("Binaries");
  REQUIRE(bin_start != std::string::npos);
  for (pos = bin_start; (pos = lp.find("u_", pos)) != std::string::npos; ++pos) ++u_bins;
  for (pos = bin_start; (pos = lp.find("v_", pos)) != std::string::npos; ++pos) ++v_bins;
  REQUIRE(u_bins == 12);
  REQUIRE(v_bins == 12);
  REQUIRE(count_lines_with(lp, "x_") == 36);
  REQUIRE(count_lines_with(lp, "first_start") == 1);
  REQUIRE(lp.find("Maximize") != std::string::npos);
}

TEST_CASE("export scales as jobs times bits") {
  const Instance inst = testutil::make_instance(
      {{0, 3, 1, 2}, {1, 2, 1, 2}, {0, 1, 2, 2}, {2, 3, 1, 2}});  // horizon 11
  const std::string lp = export_awcpp_model(inst, Sequence::identity(4), 5);
  REQUIRE(count_lines_with(lp, "x_") == 3 * 5 * 5);
}

TEST_CASE("export rejects an expansion too narrow for the horizon") {
  const Instance inst = testutil::two_job_example();  // needs K >= 4
  REQUIRE_THROWS_AS(export_awcpp_model(inst, Sequence{{0, 1}}, 2), ValidationError);
  REQUIRE_THROWS_WITH(export_awcpp_model(inst, Sequence{{0, 1}}, 2),
                      Catch::Matchers::ContainsSubstring("4"));
  REQUIRE_THROWS_AS(export_awcpp_model(inst, Sequence{{0, 1}}, 0), ValidationError);
  REQUIRE_THROWS_AS(export_awcpp_model(inst, Sequence{{0, 1}}, 63), ValidationError);
}
