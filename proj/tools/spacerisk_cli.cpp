// spacerisk: command-line front end over the library.
//
// Exit codes: 0 ok, 1 bad input, 2 cascade did not converge, 3 hardening could
// not bring every mission under tau.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spacerisk/spacerisk.hpp"

#ifndef SPACERISK_DATA_DIR
#define SPACERISK_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace spacerisk;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kNotConverged = 2;
constexpr int kUnmitigable = 3;

// Relative paths that do not exist here are tried under $SPACERISK_SCENARIO_DIR,
// then under the bundled data directory.
fs::path resolve(const std::string& given, const char* fallback_name) {
  const std::string name = given.empty() ? fallback_name : given;
  if (name.empty()) throw ValidationError("no input file given");
  fs::path p(name);
  if (p.is_absolute() || fs::exists(p)) return p;
  if (const char* env = std::getenv("SPACERISK_SCENARIO_DIR"); env && *env) {
    if (fs::exists(fs::path(env) / p)) return fs::path(env) / p;
  }
  if (fs::exists(fs::path(SPACERISK_DATA_DIR) / p)) return fs::path(SPACERISK_DATA_DIR) / p;
  return p;  // let the loader report it
}

void write_out(const std::string& out, const std::string& body) {
  if (out.empty() || out == "-") {
    std::cout << body;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + out + "'");
  f << body;
}

Format pick_format(const std::string& flag, const std::string& out) {
  if (!flag.empty()) return parse_format(flag);
  return fs::path(out).extension() == ".csv" ? Format::csv : Format::text;
}

CascadeCase parse_case(int c) {
  if (c == 0) return CascadeCase::case0;
  if (c == 1) return CascadeCase::case1;
  throw ValidationError("--case must be 0 or 1");
}

UpdateSchedule parse_schedule(const std::string& s) {
  if (s == "synchronous" || s == "sync") return UpdateSchedule::synchronous;
  if (s == "in-place" || s == "in_place") return UpdateSchedule::in_place;
  throw ValidationError("unknown schedule '" + s + "'");
}

std::string num(double x) { return full_precision(x); }

struct Globals {
  std::uint64_t seed = 0;  // reserved; nothing here is random
  double epsilon = 1e-10;
  std::size_t max_iters = 1'000'000;
};

struct RiskArgs {
  std::string scenario;
  int flag = 0;
  std::string schedule = "synchronous";
  std::string out;
  std::string format;
};

struct HardenArgs : RiskArgs {
  double tau = 0.1;
  std::string controls;
};

struct NrsArgs {
  std::string scenario;
  std::string tau = "medium";
  std::string matrix;
  std::string out;
  std::string format;
};

struct KillchainArgs {
  std::string incident;
  std::string rules;
  bool count_only = false;
  std::string out;
  std::uint64_t cap = 1'000'000;
};

struct MetricsArgs {
  std::string chains;
  std::string scores;
  std::string out;
};

CascadeConfig make_config(const Globals& g, const RiskArgs& a) {
  CascadeConfig c;
  c.flag = parse_case(a.flag);
  c.epsilon = g.epsilon;
  c.max_iterations = g.max_iters;
  c.schedule = parse_schedule(a.schedule);
  c.validate();
  return c;
}

RunInfo run_info(const std::string& command, const Globals& g, const RiskArgs& a,
                 const fs::path& scenario) {
  RunInfo info{command, {}};
  info.settings["scenario"] = scenario.filename().string();
  info.settings["case"] = std::to_string(a.flag);
  info.settings["epsilon"] = num(g.epsilon);
  info.settings["max_iterations"] = std::to_string(g.max_iters);
  info.settings["schedule"] = a.schedule;
  info.settings["seed"] = std::to_string(g.seed);
  return info;
}

int run_analyze(const Globals& g, const RiskArgs& a) {
  const auto path = resolve(a.scenario, "satcom_case_study.json");
  const Scenario s = load_scenario(path);
  const auto config = make_config(g, a);
  auto info = run_info("analyze", g, a, path);
  const Format fmt = pick_format(a.format, a.out);
  try {
    const RiskState st = analyze(s.graph, s.missions, s.caps, s.sus, config);
    info.settings["nodes_analyzed"] = std::to_string(st.node_l.size());
    info.settings["arcs_analyzed"] = std::to_string(st.arc_l.size());
    write_out(a.out, emit_report(st, fmt, info));
    return kOk;
  } catch (const NotConverged& e) {
    write_out(a.out, emit_report(e.state(), fmt, info));
    std::cerr << "spacerisk: " << e.what() << "\n";
    return kNotConverged;
  }
}

int run_harden(const Globals& g, const HardenArgs& a) {
  const auto path = resolve(a.scenario, "satcom_case_study.json");
  const Scenario s = load_scenario(path);
  const ControlCatalog catalog = load_control_catalog(resolve(a.controls, "satcom_controls.json"));
  HardenOptions opts;
  opts.tau = a.tau;
  opts.config = make_config(g, a);
  auto info = run_info("harden", g, a, path);
  info.settings["tau"] = num(a.tau);
  const HardeningPlan plan = harden(s.graph, s.missions, s.caps, s.sus, catalog, opts);
  write_out(a.out, emit_report(plan, pick_format(a.format, a.out), info));
  if (plan.unmitigable) {
    std::cerr << "spacerisk: some mission stays above tau " << num(a.tau) << "\n";
    return kUnmitigable;
  }
  return kOk;
}

int run_nrs(const NrsArgs& a) {
  const auto path = resolve(a.scenario, "");
  const NrsScenario s = load_nrs_scenario(path);
  RiskMatrix matrix = s.matrix.value_or(RiskMatrix::standard());
  if (!a.matrix.empty()) matrix = load_risk_matrix(resolve(a.matrix, ""));
  RunInfo info{"nrs assess", {{"scenario", path.filename().string()}, {"tau", a.tau}}};
  const NrsResult r = assess(s.applicable, s.base, parse_band(a.tau), s.catalog, matrix);
  write_out(a.out, emit_report(r, pick_format(a.format, a.out), info));
  return kOk;
}

int run_killchain(const KillchainArgs& a) {
  const IncidentAnnotation ann = load_annotation(resolve(a.incident, ""));
  SenseFilter filter;
  if (!a.rules.empty()) filter = register_sense_rules(load_sense_rules(resolve(a.rules, "")));
  const ExtrapolateOptions opts{a.cap};
  const auto shape = shape_of(ann.steps);
  if (a.count_only) {
    nlohmann::ordered_json j;
    j["incident_id"] = ann.incident_id;
    j["observed"] = shape.observed;
    j["length"] = shape.length;
    j["candidate_counts"] = shape.counts;
    j["total_before_filter"] = shape.total;
    j["count"] = count_extrapolations(ann.steps, filter, opts);
    write_out(a.out, j.dump(2) + "\n");
    return kOk;
  }
  const auto r = extrapolate(ann.steps, filter, opts);
  if (!r.diagnostic.empty()) std::cerr << "spacerisk: " << r.diagnostic << "\n";
  write_out(a.out, dump_chain_set({ann.incident_id, r.chains}, r.total));
  return kOk;
}

int run_metrics(const MetricsArgs& a) {
  const auto sets = load_chain_sets(resolve(a.chains, ""));
  const ScoreTable table = load_score_table(resolve(a.scores, ""));
  std::vector<MetricsRow> rows;
  for (const auto& set : sets) {
    MetricsRow row;
    row.incident_id = set.incident_id;
    row.chains = set.chains.size();
    std::string note;
    try {
      row.likelihood = set_likelihood(set.chains, table);
    } catch (const ValidationError& e) {
      note = e.what();
    }
    try {
      row.sophistication = sophistication(set.chains, table);
    } catch (const ValidationError& e) {
      note += (note.empty() ? "" : "; ") + std::string(e.what());
    }
    row.note = note;
    rows.push_back(std::move(row));
  }
  write_out(a.out, emit_metrics_csv(rows));
  return kOk;
}

void add_risk_options(CLI::App* sub, RiskArgs& a) {
  sub->add_option("--scenario", a.scenario, "scenario file (default: bundled case study)");
  sub->add_option("--case", a.flag, "0 keeps unattackable nodes, 1 prunes them")
      ->check(CLI::IsMember({0, 1}));
  sub->add_option("--schedule", a.schedule, "synchronous or in-place");
  sub->add_option("--out", a.out, "report file (default: stdout)");
  sub->add_option("--format", a.format, "text or csv (default: from --out extension)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space infrastructure cyber risk analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "reserved; results do not depend on it");
  app.add_option("--epsilon", g.epsilon, "convergence threshold on the largest change");
  app.add_option("--max-iters", g.max_iters, "cascade sweep cap");

  RiskArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "compromise likelihoods for a scenario");
  add_risk_options(analyze_cmd, analyze_args);

  HardenArgs harden_args;
  auto* harden_cmd = app.add_subcommand("harden", "pick techniques to mitigate until missions sit under tau");
  add_risk_options(harden_cmd, harden_args);
  harden_cmd->add_option("--tau", harden_args.tau, "tolerable mission disruption likelihood");
  harden_cmd->add_option("--controls", harden_args.controls, "control catalog (default: bundled)");

  NrsArgs nrs_args;
  auto* nrs_cmd = app.add_subcommand("nrs", "notional risk scores");
  nrs_cmd->require_subcommand(1);
  auto* nrs_assess = nrs_cmd->add_subcommand("assess", "band techniques and pick countermeasures");
  nrs_assess->add_option("--scenario", nrs_args.scenario, "NRS scenario file")->required();
  nrs_assess->add_option("--tau", nrs_args.tau, "low, medium or high");
  nrs_assess->add_option("--matrix", nrs_args.matrix, "5x5 matrix override");
  nrs_assess->add_option("--out", nrs_args.out, "report file (default: stdout)");
  nrs_assess->add_option("--format", nrs_args.format, "text or csv");

  KillchainArgs kc_args;
  auto* kc_cmd = app.add_subcommand("killchain", "kill chain tools");
  kc_cmd->require_subcommand(1);
  auto* kc_extra = kc_cmd->add_subcommand("extrapolate", "fill missing steps from candidate sets");
  kc_extra->add_option("--incident", kc_args.incident, "annotation file")->required();
  kc_extra->add_option("--rules", kc_args.rules, "sense rules file");
  kc_extra->add_flag("--count-only", kc_args.count_only, "print counts, not chains");
  kc_extra->add_option("--out", kc_args.out, "output file (default: stdout)");
  kc_extra->add_option("--cap", kc_args.cap, "largest product allowed before refusing");

  MetricsArgs m_args;
  auto* m_cmd = app.add_subcommand("metrics", "per-incident likelihood and sophistication");
  m_cmd->add_option("--chains", m_args.chains, "chain set file")->required();
  m_cmd->add_option("--scores", m_args.scores, "score table file")->required();
  m_cmd->add_option("--out", m_args.out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*analyze_cmd) return run_analyze(g, analyze_args);
    if (*harden_cmd) return run_harden(g, harden_args);
    if (*nrs_assess) return run_nrs(nrs_args);
    if (*kc_extra) return run_killchain(kc_args);
    if (*m_cmd) return run_metrics(m_args);
  } catch (const NotConverged& e) {
    std::cerr << "spacerisk: " << e.what() << "\n";
    return kNotConverged;
  } catch (const std::exception& e) {
    std::cerr << "spacerisk: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
