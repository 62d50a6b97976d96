// Command line front end. Subcommands mirror the library operations:
//   gen eval worst opt lb ils vns exhaustive bench dist export-model
// Exit codes: 0 ok, 2 unreadable/malformed input, 3 invalid data or
// arguments, 4 size cap exceeded, 1 anything else.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "robustsched/robustsched.hpp"

namespace rs = robustsched;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rs::ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rs::ParseError("cannot write file: " + path);
  out << text;
}

rs::Instance load_instance(const std::string& path) {
  rs::Instance inst = rs::parse_instance(read_file(path));
  const auto violations = rs::validate_instance(inst);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << path << ": invalid instance:";
    for (const auto& v : violations) msg << "\n  " << v;
    throw rs::ValidationError(msg.str());
  }
  return inst;
}

rs::Sequence parse_sequence_arg(const std::string& csv) {
  rs::Sequence seq;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      seq.order.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw rs::ValidationError("bad sequence element: '" + item + "'");
    }
  }
  if (seq.order.empty()) throw rs::ValidationError("empty sequence");
  return seq;
}

std::vector<rs::i64> parse_int_list(const std::string& csv, const char* what) {
  std::vector<rs::i64> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw rs::ValidationError(std::string("bad ") + what + " element: '" + item + "'");
    }
  }
  return out;
}

// Scenario selection shared by eval/opt/export-model: endpoint keywords or
// explicit per-job values.
struct ScenarioOpts {
  std::string release = "high";
  std::string processing = "high";
  std::string release_values;
  std::string processing_values;

  void attach(CLI::App* cmd) {
    cmd->add_option("--release", release, "release endpoint: low|high")
        ->check(CLI::IsMember({"low", "high"}));
    cmd->add_option("--processing", processing, "processing endpoint: low|high")
        ->check(CLI::IsMember({"low", "high"}));
    cmd->add_option("--release-values", release_values, "explicit releases, comma separated");
    cmd->add_option("--processing-values", processing_values,
                    "explicit processing times, comma separated");
  }

  rs::Scenario realize(const rs::Instance& inst) const {
    std::vector<rs::Choice> rel(inst.jobs.size(),
                                release == "low" ? rs::Choice::low() : rs::Choice::high());
    std::vector<rs::Choice> proc(inst.jobs.size(),
                                 processing == "low" ? rs::Choice::low() : rs::Choice::high());
    if (!release_values.empty()) {
      const auto vals = parse_int_list(release_values, "release");
      if (vals.size() != inst.jobs.size())
        throw rs::ValidationError("release value count != job count");
      for (std::size_t i = 0; i < vals.size(); ++i) rel[i] = rs::Choice::at(vals[i]);
    }
    if (!processing_values.empty()) {
      const auto vals = parse_int_list(processing_values, "processing");
      if (vals.size() != inst.jobs.size())
        throw rs::ValidationError("processing value count != job count");
      for (std::size_t i = 0; i < vals.size(); ++i) proc[i] = rs::Choice::at(vals[i]);
    }
    return rs::make_scenario(inst, rel, proc);
  }
};

void print_sequence(std::ostream& out, const rs::Sequence& seq) {
  for (std::size_t i = 0; i < seq.order.size(); ++i)
    out << (i ? "," : "") << seq.order[i];
}

void print_scenario(std::ostream& out, const rs::Scenario& sc) {
  out << "  release:    ";
  for (std::size_t i = 0; i < sc.release.size(); ++i) out << (i ? "," : "") << sc.release[i];
  out << "\n  processing: ";
  for (std::size_t i = 0; i < sc.processing.size(); ++i)
    out << (i ? "," : "") << sc.processing[i];
  out << "\n";
}

rs::BudgetMode parse_budget_mode(const std::string& mode) {
  if (mode == "evals") return rs::BudgetMode::kEvaluations;
  if (mode == "wallclock") return rs::BudgetMode::kWallClock;
  throw rs::ValidationError("budget mode must be evals or wallclock");
}

int run(int argc, char** argv) {
  CLI::App app{"robust single machine scheduling with interval release and processing times"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  int gen_n = 7;
  rs::i64 gen_mu = 2;
  rs::u64 gen_seed = 1;
  std::string gen_out, gen_name;
  gen->add_option("--n", gen_n, "job count")->required();
  gen->add_option("--mu", gen_mu, "release spread parameter")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--name", gen_name, "override instance name");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a sequence under a scenario");
  std::string eval_inst, eval_seq;
  ScenarioOpts eval_sc;
  eval->add_option("instance", eval_inst, "instance file")->required();
  eval->add_option("--sequence", eval_seq, "job ids, comma separated")->required();
  eval_sc.attach(eval);

  // worst
  auto* worst = app.add_subcommand("worst", "worst-case flow of a sequence");
  std::string worst_inst, worst_seq;
  worst->add_option("instance", worst_inst, "instance file")->required();
  worst->add_option("--sequence", worst_seq, "job ids, comma separated")->required();

  // opt
  auto* opt = app.add_subcommand("opt", "exact deterministic optimum for a scenario");
  std::string opt_inst;
  int opt_cap = rs::kDefaultExactCap;
  ScenarioOpts opt_sc;
  opt->add_option("instance", opt_inst, "instance file")->required();
  opt->add_option("--cap", opt_cap, "exact size cap");
  opt_sc.attach(opt);

  // lb
  auto* lb = app.add_subcommand("lb", "scenario-sampling lower bound");
  std::string lb_inst, lb_out;
  int lb_samples = 32, lb_interior = 0, lb_cap = rs::kDefaultExactCap;
  rs::u64 lb_seed = 1;
  bool lb_no_all_max = false;
  lb->add_option("instance", lb_inst, "instance file")->required();
  lb->add_option("--samples", lb_samples, "random extreme scenarios");
  lb->add_option("--interior", lb_interior, "random interior-release scenarios");
  lb->add_option("--seed", lb_seed, "sampling seed");
  lb->add_option("--cap", lb_cap, "exact size cap");
  lb->add_flag("--no-all-max", lb_no_all_max, "drop the all-max scenario");
  lb->add_option("--out", lb_out, "write per-scenario CSV here");

  // ils / vns
  auto add_search = [&](const char* name, const char* desc) {
    auto* cmd = app.add_subcommand(name, desc);
    return cmd;
  };
  std::string ils_inst, ils_trace, vns_inst, vns_trace;
  rs::SearchConfig ils_cfg, vns_cfg;
  std::string ils_mode = "evals", vns_mode = "evals";
  int vns_kmax = 0;
  auto* ils = add_search("ils", "iterated local search with restarts");
  ils->add_option("instance", ils_inst, "instance file")->required();
  ils->add_option("--budget", ils_cfg.budget, "evaluation count or seconds")->required();
  ils->add_option("--budget-mode", ils_mode, "evals|wallclock")
      ->check(CLI::IsMember({"evals", "wallclock"}));
  ils->add_option("--stall", ils_cfg.restart_stall, "restart stall (default budget/10)");
  ils->add_option("--seed", ils_cfg.seed, "run seed");
  ils->add_option("--trace", ils_trace, "write improvement trace CSV here");
  auto* vns = add_search("vns", "variable neighborhood search");
  vns->add_option("instance", vns_inst, "instance file")->required();
  vns->add_option("--budget", vns_cfg.budget, "evaluation count or seconds")->required();
  vns->add_option("--budget-mode", vns_mode, "evals|wallclock")
      ->check(CLI::IsMember({"evals", "wallclock"}));
  vns->add_option("--stall", vns_cfg.restart_stall, "restart stall (default budget/10)");
  vns->add_option("--seed", vns_cfg.seed, "run seed");
  vns->add_option("--kmax", vns_kmax, "max shake strength (default n-1)");
  vns->add_option("--trace", vns_trace, "write improvement trace CSV here");

  // exhaustive
  auto* exh = app.add_subcommand("exhaustive", "exact robust optimum by enumeration");
  std::string exh_inst;
  int exh_cap = rs::kExhaustiveRobustCap;
  exh->add_option("instance", exh_inst, "instance file")->required();
  exh->add_option("--cap", exh_cap, "enumeration size cap");

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  std::string bench_suite, bench_out = "results.csv", bench_mode;
  bench->add_option("--suite", bench_suite, "suite config JSON")->required();
  bench->add_option("--out", bench_out, "results CSV path");
  bench->add_option("--budget-mode", bench_mode, "override suite budget mode: evals|wallclock")
      ->check(CLI::IsMember({"evals", "wallclock"}));

  // dist
  auto* dist = app.add_subcommand("dist", "run-to-run distribution of a search");
  std::string dist_inst, dist_algo = "VNS", dist_out, dist_bins_out, dist_mode = "evals";
  int dist_runs = 20, dist_bins = 10;
  rs::u64 dist_budget = 10000, dist_seed = 1;
  dist->add_option("instance", dist_inst, "instance file")->required();
  dist->add_option("--algo", dist_algo, "VNS or ILS")->check(CLI::IsMember({"VNS", "ILS"}));
  dist->add_option("--runs", dist_runs, "number of runs");
  dist->add_option("--budget", dist_budget, "per-run budget");
  dist->add_option("--budget-mode", dist_mode, "evals|wallclock")
      ->check(CLI::IsMember({"evals", "wallclock"}));
  dist->add_option("--seed", dist_seed, "base seed; run r uses seed + r");
  dist->add_option("--bins", dist_bins, "histogram bin count");
  dist->add_option("--out", dist_out, "write per-run CSV here");
  dist->add_option("--bins-out", dist_bins_out, "write histogram CSV here");

  // export-model
  auto* exp = app.add_subcommand("export-model", "write an LP-format model file");
  std::string exp_inst, exp_kind, exp_seq, exp_out;
  int exp_bits = rs::kDefaultBitCount;
  std::optional<rs::i64> exp_horizon;
  rs::i64 exp_horizon_raw = -1;
  ScenarioOpts exp_sc;
  exp->add_option("instance", exp_inst, "instance file")->required();
  exp->add_option("--kind", exp_kind, "awcpp | bigm | setpart")
      ->required()
      ->check(CLI::IsMember({"awcpp", "bigm", "setpart"}));
  exp->add_option("--sequence", exp_seq, "job ids (awcpp only)");
  exp->add_option("--bits", exp_bits, "binary expansion width K (awcpp only)");
  exp->add_option("--horizon", exp_horizon_raw, "slot count (setpart only)");
  exp->add_option("--out", exp_out, "output file (default stdout)");
  exp_sc.attach(exp);

  CLI11_PARSE(app, argc, argv);

  std::ostream& os = std::cout;
  if (*gen) {
    rs::Instance inst = rs::generate_instance({gen_n, gen_mu, gen_seed});
    if (!gen_name.empty()) inst.name = gen_name;
    const std::string text = rs::serialize_instance(inst);
    if (gen_out.empty())
      os << text;
    else
      write_file(gen_out, text);
  } else if (*eval) {
    const rs::Instance inst = load_instance(eval_inst);
    const rs::Scenario sc = eval_sc.realize(inst);
    const rs::Schedule sched = rs::evaluate_sequence(parse_sequence_arg(eval_seq), sc);
    os << "sequence:   ";
    print_sequence(os, sched.sequence);
    os << "\n";
    os << "job start completion flow\n";
    for (int j : sched.sequence.order) {
      const auto ju = static_cast<std::size_t>(j);
      os << j << " " << sched.starts[ju] << " " << sched.completions[ju] << " "
         << sched.completions[ju] - sc.release[ju] << "\n";
    }
    os << "total_flow: " << sched.total_flow << "\n";
  } else if (*worst) {
    const rs::Instance inst = load_instance(worst_inst);
    const auto res = rs::worst_case_flow(inst, parse_sequence_arg(worst_seq));
    os << "worst_case_flow: " << res.value << "\nwitness:\n";
    print_scenario(os, res.witness);
  } else if (*opt) {
    const rs::Instance inst = load_instance(opt_inst);
    const auto res = rs::solve_optimal(opt_sc.realize(inst), opt_cap);
    os << "sequence: ";
    print_sequence(os, res.sequence);
    os << "\nvalue: " << res.value << "\nnodes: " << res.nodes << "\n";
  } else if (*lb) {
    const rs::Instance inst = load_instance(lb_inst);
    rs::SampleSpec spec;
    spec.include_all_max = !lb_no_all_max;
    spec.random_extreme_count = lb_samples;
    spec.random_interior_count = lb_interior;
    spec.seed = lb_seed;
    const auto res = rs::robust_lower_bound(inst, spec, lb_cap);
    os << "lower_bound: " << res.value << "\n";
    os << "scenarios: " << res.per_scenario.size() << "\n";
    for (const auto& s : res.per_scenario)
      os << "  " << s.digest << " " << s.optimal_flow << "\n";
    if (!lb_out.empty()) {
      std::ostringstream csv;
      csv << "digest,optimal_flow\n";
      for (const auto& s : res.per_scenario) csv << s.digest << "," << s.optimal_flow << "\n";
      write_file(lb_out, csv.str());
    }
  } else if (*ils || *vns) {
    const bool is_vns = static_cast<bool>(*vns);
    const rs::Instance inst = load_instance(is_vns ? vns_inst : ils_inst);
    rs::SearchConfig cfg = is_vns ? vns_cfg : ils_cfg;
    cfg.budget_mode = parse_budget_mode(is_vns ? vns_mode : ils_mode);
    if (is_vns) cfg.k_max = vns_kmax;
    const rs::SearchOutcome out = is_vns ? rs::run_vns(inst, cfg) : rs::run_ils(inst, cfg);
    os << "best: ";
    print_sequence(os, out.best);
    os << "\nvalue: " << out.value << "\nevaluations: " << out.evaluations
       << "\nrestarts: " << out.restarts << "\n";
    const std::string& trace_path = is_vns ? vns_trace : ils_trace;
    if (!trace_path.empty()) write_file(trace_path, rs::trace_to_csv(out));
  } else if (*exh) {
    const rs::Instance inst = load_instance(exh_inst);
    const rs::SearchOutcome out = rs::exhaustive_robust(inst, exh_cap);
    os << "best: ";
    print_sequence(os, out.best);
    os << "\nvalue: " << out.value << "\nsequences: " << out.evaluations << "\n";
  } else if (*bench) {
    rs::SuiteConfig cfg = rs::parse_suite_config(read_file(bench_suite));
    if (!bench_mode.empty()) cfg.budget_mode = parse_budget_mode(bench_mode);
    const auto rows = rs::run_benchmark(cfg);
    write_file(bench_out, rs::results_to_csv(rows));
    os << "wrote " << rows.size() << " rows to " << bench_out << "\n";
  } else if (*dist) {
    const rs::Instance inst = load_instance(dist_inst);
    const auto res = rs::distribution_study(inst, dist_algo, dist_runs, dist_budget, dist_seed,
                                            parse_budget_mode(dist_mode), dist_bins);
    os << "runs: " << res.runs.size() << "\nmean: " << res.mean
       << "\nvariance: " << res.variance << "\n";
    if (!dist_out.empty()) write_file(dist_out, rs::distribution_to_csv(res));
    if (!dist_bins_out.empty()) write_file(dist_bins_out, rs::distribution_bins_to_csv(res));
  } else if (*exp) {
    const rs::Instance inst = load_instance(exp_inst);
    std::string text;
    if (exp_kind == "awcpp") {
      if (exp_seq.empty())
        throw rs::ValidationError("export-model --kind awcpp needs --sequence");
      text = rs::export_awcpp_model(inst, parse_sequence_arg(exp_seq), exp_bits);
    } else if (exp_kind == "bigm") {
      text = rs::export_dsmsp_bigm(exp_sc.realize(inst));
    } else {
      if (exp_horizon_raw >= 0) exp_horizon = exp_horizon_raw;
      text = rs::export_set_partitioning_model(
          rs::build_set_partitioning(exp_sc.realize(inst), exp_horizon));
    }
    if (exp_out.empty())
      os << text;
    else
      write_file(exp_out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rs::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rs::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const rs::SizeCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
