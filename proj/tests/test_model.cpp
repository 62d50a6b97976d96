#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace robustsched;

TEST_CASE("splitmix64 streams are deterministic and distinct") {
  SplitMix64 a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
  bool differs = false;
  SplitMix64 a2(42);
  for (int i = 0; i < 100; ++i) differs |= (a2.next() != c.next());
  REQUIRE(differs);
}

TEST_CASE("substream seeds do not collide for small indices") {
  std::set<u64> seen;
  for (u64 i = 0; i < 1000; ++i) seen.insert(substream_seed(7, i));
  REQUIRE(seen.size() == 1000);
  REQUIRE(substream_seed(7, 0) != substream_seed(8, 0));
}

TEST_CASE("uniform_int stays in range and hits both endpoints") {
  SplitMix64 rng(1);
  bool lo_seen = false, hi_seen = false;
  for (int i = 0; i < 2000; ++i) {
    const i64 v = uniform_int(rng, -3, 5);
    REQUIRE(v >= -3);
    REQUIRE(v <= 5);
    lo_seen |= (v == -3);
    hi_seen |= (v == 5);
  }
  REQUIRE(lo_seen);
  REQUIRE(hi_seen);
  REQUIRE(uniform_int(rng, 4, 4) == 4);
}

TEST_CASE("shuffle yields a permutation and is seed-deterministic") {
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
  SplitMix64 r1(9), r2(9);
  auto a = v, b = v;
  shuffle(a, r1);
  shuffle(b, r2);
  REQUIRE(a == b);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  REQUIRE(sorted == v);
}

TEST_CASE("fnv1a64 matches the published reference vector") {
  REQUIRE(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cULL);
  REQUIRE(fnv1a64("", 0) == 0xcbf29ce484222325ULL);
}

TEST_CASE("interval helpers") {
  const Interval iv{2, 5};
  REQUIRE(iv.contains(2));
  REQUIRE(iv.contains(5));
  REQUIRE_FALSE(iv.contains(6));
  REQUIRE_FALSE(iv.degenerate());
  REQUIRE(Interval{3, 3}.degenerate());
}

TEST_CASE("generator respects the documented interval bounds") {
  for (u64 seed : {1ULL, 2ULL, 99ULL}) {
    const Instance inst = generate_instance({7, 2, seed});
    REQUIRE(inst.n() == 7);
    for (const auto& job : inst.jobs) {
      REQUIRE(job.release.lo >= 0);
      REQUIRE(job.release.lo <= 10);
      REQUIRE(job.release.hi - job.release.lo == 10);
      REQUIRE(job.processing.lo >= 1);
      REQUIRE(job.processing.lo <= 4);
      REQUIRE(job.processing.hi - job.processing.lo == 6);
    }
    REQUIRE(inst.meta.has_value());
    REQUIRE(inst.meta->mu == 2);
    REQUIRE(inst.meta->seed == seed);
    REQUIRE(inst.meta->n == 7);
    REQUIRE(inst.meta->rng == kRngFamily);
  }
}

TEST_CASE("generator widens the release interval for mu above 3") {
  const Instance inst = generate_instance({7, 4, 5});
  for (const auto& job : inst.jobs) {
    REQUIRE(job.release.lo >= 0);
    REQUIRE(job.release.lo <= 20);
    REQUIRE(job.release.hi - job.release.lo == 20);
  }
}

TEST_CASE("generator handles a single job") {
  const Instance inst = generate_instance({1, 2, 3});
  REQUIRE(inst.n() == 1);
  REQUIRE(validate_instance(inst).empty());
}

TEST_CASE("generator is seed-deterministic and seed-sensitive") {
  REQUIRE(generate_instance({7, 2, 11}).jobs == generate_instance({7, 2, 11}).jobs);
  REQUIRE(generate_instance({7, 2, 11}).jobs != generate_instance({7, 2, 12}).jobs);
}

TEST_CASE("generator draws released lows uniformly") {
  // 2000 five-job instances give 1e4 release lows over the 11 values of
  // [0, 10]; chi-square with 10 degrees of freedom, 1% critical value.
  std::vector<double> bins(11, 0);
  for (u64 s = 1; s <= 2000; ++s)
    for (const auto& job : generate_instance({5, 2, s}).jobs)
      bins[static_cast<std::size_t>(job.release.lo)] += 1;
  const double expected = 10000.0 / 11.0;
  double chi = 0;
  for (double b : bins) chi += (b - expected) * (b - expected) / expected;
  REQUIRE(chi < 23.209);
}

TEST_CASE("generator rejects bad parameters") {
  REQUIRE_THROWS_AS(generate_instance({0, 2, 1}), ValidationError);
  REQUIRE_THROWS_AS(generate_instance({3, 0, 1}), ValidationError);
}

TEST_CASE("endpoint scenario selection") {
  const Instance inst = testutil::two_job_example();
  const Scenario hi = all_max_scenario(inst);
  REQUIRE(hi.release == std::vector<i64>{2, 4});
  REQUIRE(hi.processing == std::vector<i64>{3, 2});
  const Scenario lo = all_min_scenario(inst);
  REQUIRE(lo.release == std::vector<i64>{0, 0});
  REQUIRE(lo.processing == std::vector<i64>{1, 2});
}

TEST_CASE("scenario selection on degenerate intervals is the unique scenario") {
  const Instance inst = testutil::slot_pair_example();
  REQUIRE(all_max_scenario(inst).release == all_min_scenario(inst).release);
  REQUIRE(all_max_scenario(inst).processing == all_min_scenario(inst).processing);
}

TEST_CASE("explicit scenario values are range-checked") {
  const Instance inst = testutil::two_job_example();
  std::vector<Choice> rel{Choice::at(1), Choice::at(3)};
  std::vector<Choice> proc{Choice::at(2), Choice::at(2)};
  const Scenario sc = make_scenario(inst, rel, proc);
  REQUIRE(sc.release == std::vector<i64>{1, 3});
  rel[1] = Choice::at(5);  // outside [0, 4]
  REQUIRE_THROWS_AS(make_scenario(inst, rel, proc), ValidationError);
  REQUIRE_THROWS_WITH(make_scenario(inst, rel, proc),
                      Catch::Matchers::ContainsSubstring("job 1"));
}

TEST_CASE("validation flags each malformed field") {
  Instance inst = testutil::make_instance({{5, 3, 1, 2}});
  auto v = validate_instance(inst);
  REQUIRE(v.size() == 1);
  REQUIRE_THAT(v[0], Catch::Matchers::ContainsSubstring("job 0"));
  REQUIRE_THAT(v[0], Catch::Matchers::ContainsSubstring("release interval lo > hi"));

  inst = testutil::make_instance({{0, 1, 0, 6}});
  v = validate_instance(inst);
  REQUIRE(v.size() == 1);
  REQUIRE_THAT(v[0], Catch::Matchers::ContainsSubstring("processing lo < 1"));

  inst = testutil::make_instance({{-1, 1, 1, 2}});
  v = validate_instance(inst);
  REQUIRE(v.size() == 1);
  REQUIRE_THAT(v[0], Catch::Matchers::ContainsSubstring("negative release"));

  REQUIRE(validate_instance(Instance{}).size() == 1);
  REQUIRE(validate_instance(testutil::two_job_example()).empty());
}

TEST_CASE("serialize then parse round-trips generated instances") {
  for (u64 seed : {1ULL, 7ULL, 31ULL}) {
    const Instance inst = generate_instance({6, 3, seed});
    const Instance back = parse_instance(serialize_instance(inst));
    REQUIRE(back.name == inst.name);
    REQUIRE(back.jobs == inst.jobs);
    REQUIRE(back.meta.has_value());
    REQUIRE(back.meta->mu == inst.meta->mu);
    REQUIRE(back.meta->seed == inst.meta->seed);
    REQUIRE(back.meta->n == inst.meta->n);
    REQUIRE(back.meta->rng == inst.meta->rng);
  }
}

TEST_CASE("the unit-slot pair instance round-trips") {
  const Instance inst = testutil::slot_pair_example();
  const Instance back = parse_instance(serialize_instance(inst));
  REQUIRE(back.jobs == inst.jobs);
  REQUIRE_FALSE(back.meta.has_value());
}

TEST_CASE("parse errors name the offending job and field") {
  const std::string text = R"({
    "name": "broken",
    "jobs": [
      {"id": 0, "release": [0, 1], "processing": [1, 2]},
      {"id": 1, "release": [0, 1]}
    ]
  })";
  REQUIRE_THROWS_AS(parse_instance(text), ParseError);
  REQUIRE_THROWS_WITH(parse_instance(text),
                      Catch::Matchers::ContainsSubstring("jobs[1]") &&
                          Catch::Matchers::ContainsSubstring("processing"));
}

TEST_CASE("parse rejects non-integer times and malformed documents") {
  REQUIRE_THROWS_AS(parse_instance("not json"), ParseError);
  REQUIRE_THROWS_AS(parse_instance("[1,2,3]"), ParseError);
  REQUIRE_THROWS_AS(
      parse_instance(R"({"name":"x","jobs":[{"id":0,"release":[0,1.5],"processing":[1,2]}]})"),
      ParseError);
  REQUIRE_THROWS_AS(parse_instance(R"({"jobs":[]})"), ParseError);
}

TEST_CASE("scenario digests are stable 16-hex strings") {
  const Instance inst = testutil::two_job_example();
  const std::string d1 = scenario_digest(all_max_scenario(inst));
  REQUIRE(d1.size() == 16);
  REQUIRE(d1.find_first_not_of("0123456789abcdef") == std::string::npos);
  REQUIRE(d1 == scenario_digest(all_max_scenario(inst)));
  REQUIRE(d1 != scenario_digest(all_min_scenario(inst)));
}

TEST_CASE("sequence identity and permutation checks") {
  const Sequence seq = Sequence::identity(4);
  REQUIRE(seq.order == std::vector<int>{0, 1, 2, 3});
  REQUIRE(seq.is_permutation());
  REQUIRE_FALSE(Sequence{{0, 0, 1}}.is_permutation());
  REQUIRE_FALSE(Sequence{{0, 2}}.is_permutation());
}
