#pragma once
// Problem data: jobs with integer release/processing windows, realized
// scenarios, job sequences, the seeded instance generator and the JSON
// instance file format.
//
// Conventions used throughout the library:
//   - job ids are 0..n-1 and double as indices,
//   - all times are integers, flows fit in 64 bits,
//   - a scenario fixes one release and one processing time per job.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "robustsched/errors.hpp"
#include "robustsched/rng.hpp"

namespace robustsched {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline constexpr const char* kRngFamily = "splitmix64";

struct Interval {
  i64 lo = 0;
  i64 hi = 0;

  bool contains(i64 t) const { return lo <= t && t <= hi; }
  bool degenerate() const { return lo == hi; }
  bool operator==(const Interval&) const = default;
};

struct Job {
  int id = 0;
  Interval release;
  Interval processing;

  bool operator==(const Job&) const = default;
};

struct InstanceMeta {
  i64 mu = 0;
  u64 seed = 0;
  int n = 0;
  std::string rng = kRngFamily;

  bool operator==(const InstanceMeta&) const = default;
};

struct Instance {
  std::string name;
  std::vector<Job> jobs;
  std::optional<InstanceMeta> meta;

  int n() const { return static_cast<int>(jobs.size()); }
  bool operator==(const Instance&) const = default;
};

struct Scenario {
  std::vector<i64> release;
  std::vector<i64> processing;

  int n() const { return static_cast<int>(release.size()); }
  bool operator==(const Scenario&) const = default;
};

struct Sequence {
  std::vector<int> order;  // job ids, first to last

  int n() const { return static_cast<int>(order.size()); }
  bool operator==(const Sequence&) const = default;

  static Sequence identity(int n) {
    Sequence s;
    s.order.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s.order[static_cast<std::size_t>(i)] = i;
    return s;
  }

  // True iff order is a permutation of 0..n-1.
  bool is_permutation() const {
    std::vector<char> seen(order.size(), 0);
    for (int id : order) {
      if (id < 0 || id >= n() || seen[static_cast<std::size_t>(id)]) return false;
      seen[static_cast<std::size_t>(id)] = 1;
    }
    return true;
  }
};

struct GenParams {
  int n = 0;
  i64 mu = 0;
  u64 seed = 0;
};

// The generation protocol draws release lows from [0, 5*mu] and uses window
// width 10 for mu in {2,3} and 20 for mu in {4,6}. Other positive mu values
// are accepted but off-protocol; they take the same width rule (10 up to
// mu=3, else 20).
inline bool protocol_mu(i64 mu) { return mu == 2 || mu == 3 || mu == 4 || mu == 6; }

inline i64 release_width(i64 mu) { return mu <= 3 ? 10 : 20; }

// Seeded generator. Per job, in id order, draws release lo then processing
// lo from the instance's own substream; bit-for-bit reproducible.
inline Instance generate_instance(const GenParams& params) {
  if (params.n < 1) throw ValidationError("generate_instance: n must be >= 1");
  if (params.mu <= 0) throw ValidationError("generate_instance: mu must be positive");
  SplitMix64 rng(substream_seed(params.seed, 0));
  Instance inst;
  {
    std::ostringstream name;
    name << "n" << params.n << "_mu" << params.mu << "_s" << params.seed;
    inst.name = name.str();
  }
  inst.meta = InstanceMeta{params.mu, params.seed, params.n, kRngFamily};
  const i64 width = release_width(params.mu);
  inst.jobs.reserve(static_cast<std::size_t>(params.n));
  for (int i = 0; i < params.n; ++i) {
    Job job;
    job.id = i;
    const i64 r_lo = uniform_int(rng, 0, 5 * params.mu);
    const i64 p_lo = uniform_int(rng, 1, 4);
    job.release = {r_lo, r_lo + width};
    job.processing = {p_lo, p_lo + 6};
    inst.jobs.push_back(job);
  }
  return inst;
}

// Per-job endpoint selector for realizing scenarios.
struct Choice {
  enum class Kind { kLow, kHigh, kValue };
  Kind kind = Kind::kHigh;
  i64 value = 0;

  static Choice low() { return {Kind::kLow, 0}; }
  static Choice high() { return {Kind::kHigh, 0}; }
  static Choice at(i64 t) { return {Kind::kValue, t}; }
};

namespace detail {
inline i64 pick(const Interval& iv, const Choice& c, const char* what, int job_id) {
  switch (c.kind) {
    case Choice::Kind::kLow:
      return iv.lo;
    case Choice::Kind::kHigh:
      return iv.hi;
    case Choice::Kind::kValue:
      if (!iv.contains(c.value)) {
        std::ostringstream msg;
        msg << "make_scenario: job " << job_id << ": " << what << " value "
            << c.value << " outside [" << iv.lo << ", " << iv.hi << "]";
        throw ValidationError(msg.str());
      }
      return c.value;
  }
  throw ValidationError("make_scenario: bad choice kind");
}
}  // namespace detail

inline Scenario make_scenario(const Instance& inst,
                              std::span<const Choice> release_choices,
                              std::span<const Choice> processing_choices) {
  const auto n = inst.jobs.size();
  if (release_choices.size() != n || processing_choices.size() != n)
    throw ValidationError("make_scenario: choice count != job count");
  Scenario sc;
  sc.release.reserve(n);
  sc.processing.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Job& job = inst.jobs[i];
    sc.release.push_back(detail::pick(job.release, release_choices[i], "release", job.id));
    sc.processing.push_back(
        detail::pick(job.processing, processing_choices[i], "processing", job.id));
  }
  return sc;
}

// Same selector applied to every job.
inline Scenario make_scenario(const Instance& inst, Choice release_all, Choice processing_all) {
  std::vector<Choice> r(inst.jobs.size(), release_all);
  std::vector<Choice> p(inst.jobs.size(), processing_all);
  return make_scenario(inst, r, p);
}

inline Scenario all_max_scenario(const Instance& inst) {
  return make_scenario(inst, Choice::high(), Choice::high());
}

inline Scenario all_min_scenario(const Instance& inst) {
  return make_scenario(inst, Choice::low(), Choice::low());
}

// Human-readable violations, empty when the instance is well formed.
inline std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.jobs.empty()) {
    out.push_back("instance has no jobs");
    return out;
  }
  for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
    const Job& job = inst.jobs[i];
    std::ostringstream at;
    at << "job " << job.id;
    const std::string who = at.str();
    if (job.id != static_cast<int>(i)) {
      std::ostringstream msg;
      msg << "job at position " << i << ": id " << job.id << " out of order (expected " << i
          << ")";
      out.push_back(msg.str());
    }
    if (job.release.lo > job.release.hi) out.push_back(who + ": release interval lo > hi");
    if (job.release.lo < 0) out.push_back(who + ": negative release time");
    if (job.processing.lo > job.processing.hi)
      out.push_back(who + ": processing interval lo > hi");
    if (job.processing.lo < 1) out.push_back(who + ": processing lo < 1");
  }
  return out;
}

// --- instance files ---------------------------------------------------------
//
// One JSON document per instance. Canonical key order (used when writing):
//   name, meta {mu, seed, n, rng}, jobs [{id, release: [lo, hi],
//   processing: [lo, hi]}]. All numbers are integers; meta is optional.

namespace detail {

inline i64 require_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw ParseError("instance: " + where + " must be an integer");
  return j.get<i64>();
}

inline Interval parse_interval(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("instance: " + where + " must be a [lo, hi] pair");
  return {require_int(j[0], where + "[0]"), require_int(j[1], where + "[1]")};
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance: top level must be an object");
  if (!doc.contains("name") || !doc["name"].is_string())
    throw ParseError("instance: missing string field 'name'");
  if (!doc.contains("jobs") || !doc["jobs"].is_array())
    throw ParseError("instance: missing array field 'jobs'");

  Instance inst;
  inst.name = doc["name"].get<std::string>();
  if (doc.contains("meta")) {
    const auto& m = doc["meta"];
    if (!m.is_object()) throw ParseError("instance: 'meta' must be an object");
    for (const char* field : {"mu", "seed", "n"})
      if (!m.contains(field))
        throw ParseError(std::string("instance: meta missing '") + field + "'");
    InstanceMeta meta;
    meta.mu = detail::require_int(m["mu"], "meta.mu");
    if (!m["seed"].is_number_unsigned() && !m["seed"].is_number_integer())
      throw ParseError("instance: meta.seed must be an integer");
    meta.seed = m["seed"].get<u64>();
    meta.n = static_cast<int>(detail::require_int(m["n"], "meta.n"));
    meta.rng = m.contains("rng") ? m["rng"].get<std::string>() : std::string(kRngFamily);
    inst.meta = meta;
  }
  int pos = 0;
  for (const auto& jj : doc["jobs"]) {
    std::ostringstream where;
    where << "jobs[" << pos << "]";
    if (!jj.is_object()) throw ParseError("instance: " + where.str() + " must be an object");
    Job job;
    if (!jj.contains("id")) throw ParseError("instance: " + where.str() + " missing 'id'");
    job.id = static_cast<int>(detail::require_int(jj["id"], where.str() + ".id"));
    if (!jj.contains("release"))
      throw ParseError("instance: " + where.str() + " missing 'release'");
    job.release = detail::parse_interval(jj["release"], where.str() + ".release");
    if (!jj.contains("processing"))
      throw ParseError("instance: " + where.str() + " missing 'processing'");
    job.processing = detail::parse_interval(jj["processing"], where.str() + ".processing");
    inst.jobs.push_back(job);
    ++pos;
  }
  return inst;
}

inline std::string serialize_instance(const Instance& inst) {
  nlohmann::ordered_json doc;
  doc["name"] = inst.name;
  if (inst.meta) {
    nlohmann::ordered_json m;
    m["mu"] = inst.meta->mu;
    m["seed"] = inst.meta->seed;
    m["n"] = inst.meta->n;
    m["rng"] = inst.meta->rng;
    doc["meta"] = m;
  }
  doc["jobs"] = nlohmann::ordered_json::array();
  for (const Job& job : inst.jobs) {
    nlohmann::ordered_json jj;
    jj["id"] = job.id;
    jj["release"] = {job.release.lo, job.release.hi};
    jj["processing"] = {job.processing.lo, job.processing.hi};
    doc["jobs"].push_back(jj);
  }
  return doc.dump(2) + "\n";
}

// Stable 16-hex-digit content digest, used to key per-scenario reports.
inline std::string scenario_digest(const Scenario& sc) {
  u64 h = fnv1a64(sc.release.data(), sc.release.size() * sizeof(i64));
  h = fnv1a64(sc.processing.data(), sc.processing.size() * sizeof(i64), h);
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace robustsched
