#include "spacerisk/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "spacerisk/errors.hpp"

namespace spacerisk {

using nlohmann::ordered_json;

Format parse_format(const std::string& s) {
  if (s == "text" || s == "json") return Format::text;
  if (s == "csv") return Format::csv;
  throw ValidationError("unknown report format '" + s + "'");
}

// Shortest text that reads back to the same double.
std::string full_precision(double x) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string two_decimals(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

namespace {

double checked(double x, const std::string& what) {
  if (!(std::isfinite(x) && x >= 0.0 && x <= 1.0))
    throw Error("refusing to report " + what + " = " + full_precision(x) + " outside [0,1]");
  return x;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json value_json(double x, const std::string& what) {
  return {{"likelihood", checked(x, what)}, {"summary", two_decimals(x)}};
}

ordered_json info_json(const RunInfo& info) {
  ordered_json settings = ordered_json::object();
  for (const auto& [k, v] : info.settings) settings[k] = v;
  return {{"command", info.command}, {"settings", settings}};
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

}  // namespace

std::string emit_report(const RiskState& state, Format format, const RunInfo& info) {
  if (format == Format::csv) {
    std::ostringstream os;
    os << "kind,id,likelihood,summary\n";
    auto row = [&](const char* kind, const std::string& id, double x) {
      os << kind << ',' << csv_field(id) << ',' << full_precision(checked(x, id)) << ','
         << two_decimals(x) << '\n';
    };
    for (const auto& [id, l] : state.mission_l) row("mission", std::to_string(id), l);
    for (const auto& [id, l] : state.flow_l) row("flow", to_string(id), l);
    for (const auto& [id, l] : state.node_l) row("node", id, l);
    for (const auto& [id, l] : state.arc_l) row("arc", to_string(id), l);
    return os.str();
  }
  ordered_json j;
  j["run"] = info_json(info);
  j["converged"] = state.converged;
  j["iterations"] = state.iterations;
  j["last_delta"] = state.last_delta;
  ordered_json missions = ordered_json::array();
  for (const auto& [id, l] : state.mission_l) {
    auto v = value_json(l, "mission " + std::to_string(id));
    v["id"] = id;
    missions.push_back(v);
  }
  ordered_json flows = ordered_json::array();
  for (const auto& [id, l] : state.flow_l) {
    auto v = value_json(l, to_string(id));
    v["id"] = to_string(id);
    flows.push_back(v);
  }
  ordered_json nodes = ordered_json::array();
  for (const auto& [id, l] : state.node_l) {
    auto v = value_json(l, id);
    v["id"] = id;
    nodes.push_back(v);
  }
  ordered_json arcs = ordered_json::array();
  for (const auto& [id, l] : state.arc_l) {
    auto v = value_json(l, to_string(id));
    v["source"] = id.source;
    v["target"] = id.target;
    v["key"] = id.key;
    arcs.push_back(v);
  }
  j["missions"] = missions;
  j["flows"] = flows;
  j["nodes"] = nodes;
  j["arcs"] = arcs;
  return j.dump(2) + "\n";
}

std::string emit_report(const HardeningPlan& plan, Format format, const RunInfo& info) {
  if (format == Format::csv) {
    std::ostringstream os;
    os << "technique,status,control,candidates\n";
    for (const auto& t : plan.mitigated_set()) {
      auto c = plan.controls.chosen.find(t);
      auto cands = plan.controls.candidates.find(t);
      os << csv_field(t) << ",mitigated,"
         << csv_field(c == plan.controls.chosen.end() ? "" : c->second) << ','
         << csv_field(cands == plan.controls.candidates.end() ? "" : join(cands->second, ";"))
         << '\n';
    }
    return os.str();
  }
  ordered_json j;
  j["run"] = info_json(info);
  j["tau"] = plan.tau;
  j["case"] = plan.flag == CascadeCase::case0 ? 0 : 1;
  j["necessary"] = plan.necessary;
  j["unmitigable"] = plan.unmitigable;
  j["mitigated"] = plan.mitigated_set();
  j["mitigation_order"] = plan.mitigated;
  ordered_json steps = ordered_json::array();
  for (const auto& s : plan.steps) {
    ordered_json js = {{"kind", to_string(s.kind)}};
    if (!s.node.empty()) js["node"] = s.node;
    if (!s.arc.source.empty()) js["arc"] = to_string(s.arc);
    js["mitigated"] = s.mitigated;
    steps.push_back(js);
  }
  j["steps"] = steps;
  j["deleted_nodes"] = plan.deleted_nodes;
  ordered_json darcs = ordered_json::array();
  for (const auto& a : plan.deleted_arcs) darcs.push_back(to_string(a));
  j["deleted_arcs"] = darcs;
  j["pruned_nodes"] = plan.pruned_nodes;
  ordered_json controls = ordered_json::object();
  for (const auto& [t, c] : plan.controls.chosen)
    controls[t] = {{"selected", c}, {"candidates", plan.controls.candidates.at(t)}};
  j["controls"] = controls;
  j["selected_controls"] = plan.controls.controls();
  ordered_json initial = ordered_json::array(), residual = ordered_json::array();
  for (const auto& [id, l] : plan.initial) {
    auto v = value_json(l, "mission " + std::to_string(id));
    v["id"] = id;
    initial.push_back(v);
  }
  for (const auto& [id, l] : plan.residual) {
    auto v = value_json(l, "mission " + std::to_string(id));
    v["id"] = id;
    residual.push_back(v);
  }
  j["initial"] = initial;
  j["residual"] = residual;
  return j.dump(2) + "\n";
}

std::string emit_report(const NrsResult& result, Format format, const RunInfo& info) {
  if (format == Format::csv) {
    std::ostringstream os;
    os << "technique,criticality,impact,likelihood,score,band,tolerable,countermeasures,controls\n";
    for (const auto& a : result.assessments)
      os << csv_field(a.technique) << ',' << to_string(a.criticality) << ',' << a.tailored.impact
         << ',' << a.tailored.likelihood << ',' << a.score << ',' << to_string(a.band) << ','
         << (a.tolerable ? "yes" : "no") << ','
         << csv_field(join(a.selected_countermeasures, ";")) << ','
         << csv_field(join(a.selected_controls, ";")) << '\n';
    return os.str();
  }
  ordered_json j;
  j["run"] = info_json(info);
  j["tau"] = to_string(result.tau);
  ordered_json rows = ordered_json::array();
  for (const auto& a : result.assessments) {
    ordered_json r = {{"technique", a.technique}, {"criticality", to_string(a.criticality)}};
    if (a.base) r["base"] = {{"impact", a.base->impact}, {"likelihood", a.base->likelihood}};
    r["tailored"] = {{"impact", a.tailored.impact}, {"likelihood", a.tailored.likelihood}};
    r["score"] = a.score;
    r["band"] = to_string(a.band);
    r["tolerable"] = a.tolerable;
    if (!a.tolerable) {
      r["candidate_countermeasures"] = a.candidate_countermeasures;
      r["selected_countermeasures"] = a.selected_countermeasures;
      r["selected_controls"] = a.selected_controls;
    }
    rows.push_back(r);
  }
  j["assessments"] = rows;
  j["intolerable"] = result.intolerable();
  j["controls"] = result.controls;
  return j.dump(2) + "\n";
}

std::string emit_metrics_csv(const std::vector<MetricsRow>& rows) {
  std::ostringstream os;
  os << "incident_id,chains,likelihood,likelihood_2dp,ta_plus,te_plus,ta_minus,te_minus,note\n";
  for (const auto& r : rows) {
    os << csv_field(r.incident_id) << ',' << r.chains << ',';
    if (r.likelihood)
      os << full_precision(checked(*r.likelihood, r.incident_id)) << ',' << two_decimals(*r.likelihood);
    else
      os << ',';
    if (r.sophistication) {
      const auto& s = *r.sophistication;
      os << ',' << full_precision(s.ta_plus) << ',' << full_precision(s.te_plus) << ','
         << full_precision(s.ta_minus) << ',' << full_precision(s.te_minus);
    } else {
      os << ",,,,";
    }
    os << ',' << csv_field(r.note) << '\n';
  }
  return os.str();
}

}  // namespace spacerisk
