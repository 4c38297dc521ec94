// Thin file-in, JSON-out layer; the Python side decodes the strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spacerisk/spacerisk.hpp"

namespace py = pybind11;
using namespace spacerisk;

namespace {

CascadeConfig config(int flag, const std::string& schedule, double epsilon, std::size_t max_iterations) {
  CascadeConfig c;
  if (flag != 0 && flag != 1) throw ValidationError("case must be 0 or 1");
  c.flag = flag ? CascadeCase::case1 : CascadeCase::case0;
  if (schedule == "in-place" || schedule == "in_place")
    c.schedule = UpdateSchedule::in_place;
  else if (schedule != "synchronous")
    throw ValidationError("unknown schedule '" + schedule + "'");
  c.epsilon = epsilon;
  c.max_iterations = max_iterations;
  c.validate();
  return c;
}

std::string analyze_file(const std::string& path, int flag, const std::string& schedule, double epsilon,
                         std::size_t max_iterations) {
  const Scenario s = load_scenario(path);
  const auto st = analyze(s.graph, s.missions, s.caps, s.sus, config(flag, schedule, epsilon, max_iterations));
  return emit_report(st, Format::text, {"analyze", {}});
}

std::string harden_file(const std::string& path, const std::string& controls, double tau, int flag,
                        double epsilon, std::size_t max_iterations) {
  const Scenario s = load_scenario(path);
  HardenOptions o;
  o.tau = tau;
  o.config = config(flag, "synchronous", epsilon, max_iterations);
  const auto plan = harden(s.graph, s.missions, s.caps, s.sus, load_control_catalog(controls), o);
  return emit_report(plan, Format::text, {"harden", {}});
}

std::string nrs_file(const std::string& path, const std::string& tau) {
  const NrsScenario s = load_nrs_scenario(path);
  const auto r = assess(s.applicable, s.base, parse_band(tau), s.catalog, s.matrix.value_or(RiskMatrix::standard()));
  return emit_report(r, Format::text, {"nrs assess", {}});
}

std::string extrapolate_file(const std::string& path, const std::string& rules, std::uint64_t cap) {
  const auto ann = load_annotation(path);
  SenseFilter f;
  if (!rules.empty()) f = register_sense_rules(load_sense_rules(rules));
  const auto r = extrapolate(ann.steps, f, {cap});
  return dump_chain_set({ann.incident_id, r.chains}, r.total);
}

py::list metrics_files(const std::string& chains, const std::string& scores) {
  const auto table = load_score_table(scores);
  py::list out;
  for (const auto& set : load_chain_sets(chains)) {
    py::dict row;
    row["incident_id"] = set.incident_id;
    row["chains"] = set.chains.size();
    row["likelihood"] = set_likelihood(set.chains, table);
    try {
      const auto s = sophistication(set.chains, table);
      row["sophistication"] = py::make_tuple(s.ta_plus, s.te_plus, s.ta_minus, s.te_minus);
    } catch (const MissingScore& e) {
      row["sophistication"] = py::none();
      row["note"] = std::string(e.what());
    }
    out.append(row);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_spacerisk, m) {
  m.doc() = "spacerisk core";

  // Later registrations are tried first, so the base class goes in first.
  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<NotConverged>(m, "NotConverged", error.ptr());

  m.def("joint_likelihood", &joint_node_likelihood, py::arg("contributions"));
  m.def("cascade_node_update", &cascade_node_update, py::arg("v"), py::arg("u"), py::arg("e"));
  m.def("cascade_arc_update", &cascade_arc_update, py::arg("e"), py::arg("u"));
  m.def("matrix_lookup", &matrix_lookup, py::arg("impact"), py::arg("likelihood"));
  m.def("risk_band", [](int score) { return to_string(categorize(score)); }, py::arg("score"));

  m.def("_analyze", &analyze_file, py::arg("scenario"), py::arg("case") = 0, py::arg("schedule") = "synchronous",
        py::arg("epsilon") = 1e-10, py::arg("max_iterations") = 1'000'000);
  m.def("_harden", &harden_file, py::arg("scenario"), py::arg("controls"), py::arg("tau"), py::arg("case") = 0,
        py::arg("epsilon") = 1e-10, py::arg("max_iterations") = 1'000'000);
  m.def("_nrs_assess", &nrs_file, py::arg("scenario"), py::arg("tau") = "medium");
  m.def("_extrapolate", &extrapolate_file, py::arg("annotation"), py::arg("rules") = "",
        py::arg("cap") = 1'000'000);
  m.def("chain_metrics", &metrics_files, py::arg("chains"), py::arg("scores"));
}
