#include "spacerisk/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spacerisk/errors.hpp"

namespace spacerisk {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& what) {
  if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }))
    throw ParseError(what + ": empty input");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

// nlohmann type/lookup errors become ParseError; our own errors pass through.
template <class F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

std::string opt_str(const json& j, const char* key, const std::string& dflt = "") {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? dflt : it->get<std::string>();
}

ArcId arc_ref(const json& j) {
  if (j.is_array()) {
    if (j.size() < 2 || j.size() > 3) throw ParseError("arc reference needs 2 or 3 entries");
    return {j.at(0).get<std::string>(), j.at(1).get<std::string>(),
            j.size() == 3 ? j.at(2).get<int>() : 0};
  }
  return {j.at("source").get<std::string>(), j.at("target").get<std::string>(),
          j.value("key", 0)};
}

json arc_ref_json(const ArcId& a) {
  json j = json::array({a.source, a.target});
  if (a.key != 0) j.push_back(a.key);
  return j;
}

MissionFlow parse_flow(const json& j, int mission, FlowKind kind, int position) {
  MissionFlow f;
  f.mission_id = mission;
  f.kind = kind;
  f.flow_index = j.value("index", position);
  f.name = opt_str(j, "name");
  for (const auto& v : j.at("nodes")) f.nodes.push_back(v.get<std::string>());
  if (j.contains("arcs"))
    for (const auto& a : j.at("arcs")) f.arcs.push_back(arc_ref(a));
  return f;
}

json flow_json(const MissionFlow& f) {
  json arcs = json::array();
  for (const auto& a : f.arcs) arcs.push_back(arc_ref_json(a));
  return {{"index", f.flow_index}, {"name", f.name}, {"nodes", f.nodes}, {"arcs", arcs}};
}

Phase phase_of(const json& j) { return parse_phase(j.at("phase").get<std::string>()); }
Activity activity_of(const json& j) { return parse_activity(j.at("activity").get<std::string>()); }

void check_taxonomy(Activity a, const std::string& tactic, const std::string& where) {
  if (auto expected = activity_of_tactic(tactic); expected && *expected != a)
    throw ValidationError(where + ": tactic '" + tactic + "' is a " + to_string(*expected) +
                          " activity, annotated as " + to_string(a));
}

template <std::size_t N>
void fill(std::array<double, N>& out, const json& j, const char* key) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (v.size() != N)
    throw ParseError(std::string(key) + " needs " + std::to_string(N) + " entries, got " +
                     std::to_string(v.size()));
  for (std::size_t i = 0; i < N; ++i) out[i] = v.at(i).get<double>();
}

RiskMatrix matrix_from(const json& rows) {
  // Rows run from likelihood 5 down to 1, columns from impact 1 to 5.
  if (!rows.is_array() || rows.size() != 5) throw ParseError("matrix needs 5 rows");
  RiskMatrix m;
  for (int r = 0; r < 5; ++r) {
    if (rows.at(r).size() != 5) throw ParseError("matrix rows need 5 cells");
    for (int c = 0; c < 5; ++c) m.cells[4 - r][c] = rows.at(r).at(c).get<int>();
  }
  m.validate();
  return m;
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario parse_scenario(const std::string& text) {
  const json j = parse_json(text, "scenario");
  Scenario s = guarded("scenario", [&] {
    Scenario s;
    s.name = opt_str(j, "name");
    s.version = opt_str(j, "version");
    if (j.contains("notes"))
      for (const auto& n : j.at("notes")) s.notes.push_back(n.get<std::string>());

    const auto& infra = j.at("infrastructure");
    std::vector<ModuleNode> nodes;
    for (const auto& n : infra.at("nodes")) {
      ModuleNode m;
      m.id = n.at("id").get<std::string>();
      m.name = opt_str(n, "name", m.id);
      m.segment = parse_segment(n.at("segment").get<std::string>());
      m.component = n.at("component").get<std::string>();
      m.emulated = n.value("emulated", false);
      nodes.push_back(std::move(m));
    }
    std::vector<Arc> arcs;
    for (const auto& a : infra.value("arcs", json::array())) {
      Arc arc;
      arc.source = a.at("source").get<std::string>();
      arc.target = a.at("target").get<std::string>();
      arc.arc_key = a.value("key", 0);
      arc.channel = opt_str(a, "channel");
      arc.note = opt_str(a, "note");
      arcs.push_back(std::move(arc));
    }
    s.graph = build_infrastructure(nodes, arcs);

    for (const auto& m : j.value("missions", json::array())) {
      Mission mission;
      mission.id = m.at("id").get<int>();
      mission.name = opt_str(m, "name");
      int i = 0;
      for (const auto& f : m.value("control_flows", json::array()))
        mission.control_flows.push_back(parse_flow(f, mission.id, FlowKind::control, ++i));
      i = 0;
      for (const auto& f : m.value("data_flows", json::array()))
        mission.data_flows.push_back(parse_flow(f, mission.id, FlowKind::data, ++i));
      s.missions.push_back(bind_mission(mission, s.graph));
    }
    std::set<int> ids;
    for (const auto& m : s.missions)
      if (!ids.insert(m.id).second)
        throw InvalidMission("duplicate mission id " + std::to_string(m.id));

    const json attacker = j.value("attacker", json::object());
    std::vector<std::pair<AttackTechnique, double>> entries;
    for (const auto& t : attacker.value("techniques", json::array())) {
      AttackTechnique at;
      at.id = t.at("id").get<std::string>();
      at.name = opt_str(t, "name");
      at.tactic = opt_str(t, "tactic");
      at.catalog = parse_catalog(opt_str(t, "catalog", "ATTACK"));
      entries.emplace_back(at, t.at("possession").get<double>());
    }
    s.caps = load_capability_set(entries);

    for (const auto& b : attacker.value("node_beta", json::array())) {
      const auto node = b.at("node").get<std::string>();
      const auto tech = b.at("technique").get<std::string>();
      if (!s.graph.has_node(node))
        throw CrossRefError("beta entry references unknown node '" + node + "'");
      if (!s.caps.contains(tech))
        throw CrossRefError("beta entry for node '" + node + "' references unknown technique '" +
                            tech + "'");
      if (!s.sus.node_beta.emplace(std::make_pair(node, tech), b.at("beta").get<double>()).second)
        throw CrossRefError("duplicate beta entry (" + node + ", " + tech + ")");
    }
    for (const auto& b : attacker.value("arc_beta", json::array())) {
      const ArcId e = arc_ref(b);
      const auto tech = b.at("technique").get<std::string>();
      if (!s.graph.has_arc(e))
        throw CrossRefError("beta entry references unknown arc " + to_string(e));
      if (!s.caps.contains(tech))
        throw CrossRefError("beta entry for arc " + to_string(e) +
                            " references unknown technique '" + tech + "'");
      if (!s.sus.arc_beta.emplace(std::make_pair(e, tech), b.at("beta").get<double>()).second)
        throw CrossRefError("duplicate beta entry (" + to_string(e) + ", " + tech + ")");
    }
    s.sus.validate();
    return s;
  });
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_text(path)); }

std::string dump_scenario(const Scenario& s) {
  json nodes = json::array();
  for (const auto& [_, n] : s.graph.nodes())
    nodes.push_back({{"id", n.id},
                     {"name", n.name},
                     {"segment", to_string(n.segment)},
                     {"component", n.component},
                     {"emulated", n.emulated}});
  json arcs = json::array();
  for (const auto& [_, a] : s.graph.arcs()) {
    json ja = {{"source", a.source}, {"target", a.target}, {"key", a.arc_key}, {"channel", a.channel}};
    if (!a.note.empty()) ja["note"] = a.note;
    arcs.push_back(std::move(ja));
  }
  json missions = json::array();
  for (const auto& m : s.missions) {
    json cf = json::array(), df = json::array();
    for (const auto& f : m.control_flows) cf.push_back(flow_json(f));
    for (const auto& f : m.data_flows) df.push_back(flow_json(f));
    missions.push_back({{"id", m.id}, {"name", m.name}, {"control_flows", cf}, {"data_flows", df}});
  }
  json techniques = json::array();
  for (const auto& [id, t] : s.caps.techniques())
    techniques.push_back({{"id", id},
                          {"name", t.name},
                          {"tactic", t.tactic},
                          {"catalog", to_string(t.catalog)},
                          {"possession", s.caps.possession(id)}});
  json node_beta = json::array();
  for (const auto& [k, b] : s.sus.node_beta)
    node_beta.push_back({{"node", k.first}, {"technique", k.second}, {"beta", b}});
  json arc_beta = json::array();
  for (const auto& [k, b] : s.sus.arc_beta)
    arc_beta.push_back({{"source", k.first.source},
                        {"target", k.first.target},
                        {"key", k.first.key},
                        {"technique", k.second},
                        {"beta", b}});
  json out = {{"name", s.name},
              {"version", s.version},
              {"notes", s.notes},
              {"infrastructure", {{"nodes", nodes}, {"arcs", arcs}}},
              {"missions", missions},
              {"attacker", {{"techniques", techniques}, {"node_beta", node_beta}, {"arc_beta", arc_beta}}}};
  return out.dump(2) + "\n";
}

ControlCatalog parse_control_catalog(const std::string& text) {
  const json j = parse_json(text, "control catalog");
  return guarded("control catalog", [&] {
    const json& list = j.is_object() ? j.at("controls") : j;
    ControlCatalog c;
    std::set<std::string> ids;
    for (const auto& e : list) {
      ControlEntry entry;
      entry.control_id = e.at("control_id").get<std::string>();
      entry.name = opt_str(e, "name");
      for (const auto& t : e.at("techniques")) entry.techniques.push_back(t.get<std::string>());
      if (!ids.insert(entry.control_id).second)
        throw ValidationError("duplicate control '" + entry.control_id + "'");
      c.entries.push_back(std::move(entry));
    }
    return c;
  });
}

ControlCatalog load_control_catalog(const std::filesystem::path& path) {
  return parse_control_catalog(read_text(path));
}

ScoreTable parse_score_table(const std::string& text) {
  const json j = parse_json(text, "score table");
  ScoreTable t = guarded("score table", [&] {
    ScoreTable t;
    for (const auto& e : j.value("tactics", json::array()))
      t.tactic_scores[e.at("id").get<std::string>()] = e.at("score").get<double>();
    for (const auto& e : j.value("techniques", json::array())) {
      const auto id = e.at("id").get<std::string>();
      if (e.contains("score") && !e.at("score").is_null())
        t.technique_scores[id] = e.at("score").get<double>();
      if (e.contains("likelihood") && !e.at("likelihood").is_null())
        t.technique_likelihoods[id] = e.at("likelihood").get<double>();
    }
    return t;
  });
  t.validate();
  return t;
}

ScoreTable load_score_table(const std::filesystem::path& path) {
  return parse_score_table(read_text(path));
}

IncidentAnnotation parse_annotation(const std::string& text) {
  const json j = parse_json(text, "annotation");
  return guarded("annotation", [&] {
    IncidentAnnotation a;
    a.incident_id = j.at("incident_id").get<std::string>();
    std::size_t i = 0;
    for (const auto& st : j.at("steps")) {
      AttackStepAnnotation s;
      s.step_index = st.value("step", ++i);
      s.phase = phase_of(st);
      s.activity = activity_of(st);
      s.tactic = st.at("tactic").get<std::string>();
      s.observed_technique = st.at("observed_technique").get<std::string>();
      check_taxonomy(s.activity, s.tactic, "step " + std::to_string(s.step_index));
      for (const auto& x : st.value("extrapolated", json::array())) {
        CandidateSet c;
        c.phase = phase_of(x);
        c.activity = activity_of(x);
        c.tactic = x.at("tactic").get<std::string>();
        for (const auto& t : x.at("candidates")) c.candidates.push_back(t.get<std::string>());
        check_taxonomy(c.activity, c.tactic,
                       "extrapolated step before " + std::to_string(s.step_index));
        s.extrapolated.push_back(std::move(c));
      }
      a.steps.push_back(std::move(s));
    }
    return a;
  });
}

IncidentAnnotation load_annotation(const std::filesystem::path& path) {
  return parse_annotation(read_text(path));
}

std::vector<SenseRule> parse_sense_rules(const std::string& text) {
  const json j = parse_json(text, "sense rules");
  return guarded("sense rules", [&] {
    const json& list = j.is_object() ? j.at("rules") : j;
    std::vector<SenseRule> out;
    for (const auto& r : list) {
      SenseRule rule;
      rule.technique = r.at("technique").get<std::string>();
      for (const auto& t : r.value("requires_any_of", json::array()))
        rule.requires_any_of.insert(t.get<std::string>());
      rule.requires_tactic = opt_str(r, "requires_tactic");
      out.push_back(std::move(rule));
    }
    return out;
  });
}

std::vector<SenseRule> load_sense_rules(const std::filesystem::path& path) {
  return parse_sense_rules(read_text(path));
}

NrsScenario parse_nrs_scenario(const std::string& text) {
  const json j = parse_json(text, "NRS scenario");
  return guarded("NRS scenario", [&] {
    NrsScenario s;
    s.name = opt_str(j, "name");
    for (const auto& a : j.at("applicable")) {
      ApplicableTechnique t;
      t.technique = a.at("technique").get<std::string>();
      t.criticality = parse_criticality(a.at("criticality").get<std::string>());
      if (a.contains("tailored"))
        t.tailored = ImpactLikelihood{a.at("tailored").at("impact").get<int>(),
                                      a.at("tailored").at("likelihood").get<int>()};
      s.applicable.push_back(std::move(t));
    }
    for (const auto& b : j.value("base_scores", json::array()))
      s.base[{b.at("technique").get<std::string>(),
              parse_criticality(b.at("criticality").get<std::string>())}] =
          ImpactLikelihood{b.at("impact").get<int>(), b.at("likelihood").get<int>()};
    for (const auto& c : j.value("countermeasures", json::array())) {
      auto& list = s.catalog.by_technique[c.at("technique").get<std::string>()];
      for (const auto& o : c.at("options")) {
        Countermeasure cm;
        cm.id = o.at("id").get<std::string>();
        cm.name = opt_str(o, "name");
        for (const auto& ctl : o.value("controls", json::array())) cm.controls.push_back(ctl.get<std::string>());
        list.push_back(std::move(cm));
      }
    }
    for (const auto& sel : j.value("selections", json::array())) {
      Selection x;
      for (const auto& c : sel.at("countermeasures")) x.countermeasures.push_back(c.get<std::string>());
      for (const auto& c : sel.value("controls", json::array())) x.controls.push_back(c.get<std::string>());
      s.catalog.selections[sel.at("technique").get<std::string>()] = std::move(x);
    }
    if (j.contains("matrix")) s.matrix = matrix_from(j.at("matrix"));
    return s;
  });
}

NrsScenario load_nrs_scenario(const std::filesystem::path& path) {
  return parse_nrs_scenario(read_text(path));
}

RiskMatrix parse_risk_matrix(const std::string& text) {
  const json j = parse_json(text, "matrix");
  return guarded("matrix", [&] { return matrix_from(j.is_object() ? j.at("matrix") : j); });
}

RiskMatrix load_risk_matrix(const std::filesystem::path& path) {
  return parse_risk_matrix(read_text(path));
}

std::vector<ChainSet> parse_chain_sets(const std::string& text) {
  const json j = parse_json(text, "chains");
  return guarded("chains", [&] {
    std::vector<ChainSet> out;
    auto one = [&](const json& cs) {
      ChainSet set;
      set.incident_id = cs.at("incident_id").get<std::string>();
      for (const auto& chain : cs.at("chains")) {
        std::vector<ChainStep> steps;
        for (const auto& st : chain) {
          ChainStep s;
          if (st.contains("phase")) s.phase = phase_of(st);
          if (st.contains("activity")) s.activity = activity_of(st);
          s.tactic = opt_str(st, "tactic");
          s.technique = opt_str(st, "technique");
          steps.push_back(std::move(s));
        }
        set.chains.push_back(compile_usckc(steps));
      }
      out.push_back(std::move(set));
    };
    if (j.is_array()) {
      for (const auto& cs : j) one(cs);
    } else {
      one(j);
    }
    return out;
  });
}

std::vector<ChainSet> load_chain_sets(const std::filesystem::path& path) {
  return parse_chain_sets(read_text(path));
}

std::string dump_chain_set(const ChainSet& set, std::uint64_t total_before_filter) {
  nlohmann::ordered_json chains = nlohmann::ordered_json::array();
  for (const auto& c : set.chains) {
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < c.length(); ++i)
      steps.push_back({{"phase", to_string(c.phases[i])},
                       {"activity", to_string(c.activities[i])},
                       {"tactic", c.tactics[i]},
                       {"technique", c.techniques[i]}});
    chains.push_back(std::move(steps));
  }
  nlohmann::ordered_json out = {{"incident_id", set.incident_id},
              {"total_before_filter", total_before_filter},
              {"count", set.chains.size()},
              {"chains", chains}};
  return out.dump(2) + "\n";
}

ConsequenceProfile parse_consequence(const std::string& text) {
  const json j = parse_json(text, "consequence");
  ConsequenceProfile p = guarded("consequence", [&] {
    ConsequenceProfile p;
    fill(p.s_bs, j, "s_bs");
    fill(p.s_pl, j, "s_pl");
    fill(p.g_gs, j, "g_gs");
    fill(p.g_mc, j, "g_mc");
    fill(p.g_dpc, j, "g_dpc");
    fill(p.g_rt, j, "g_rt");
    fill(p.u, j, "u");
    const json links = j.value("links", json::object());
    for (const auto& [cls, list] : links.items()) {
      auto& out = p.links[parse_link_class(cls)];
      for (const auto& t : list)
        out.push_back({opt_str(t, "label"), t.at("c").get<double>(), t.at("i").get<double>(),
                       t.at("a").get<double>()});
    }
    return p;
  });
  p.validate();
  return p;
}

ConsequenceProfile load_consequence(const std::filesystem::path& path) {
  return parse_consequence(read_text(path));
}

std::vector<IncidentRecord> parse_incidents(const std::string& text) {
  const json j = parse_json(text, "incidents");
  auto out = guarded("incidents", [&] {
    std::vector<IncidentRecord> out;
    for (const auto& r : j) {
      IncidentRecord rec;
      rec.incident_id = r.at("incident_id").get<std::string>();
      rec.attack_type = parse_attack_type(r.at("attack_type").get<std::string>());
      rec.date = opt_str(r, "date");
      rec.locations = opt_str(r, "locations");
      rec.description = opt_str(r, "description");
      if (r.contains("attacker_identity")) rec.attacker_identity = opt_str(r, "attacker_identity");
      if (r.contains("victim_identity")) rec.victim_identity = opt_str(r, "victim_identity");
      for (const auto& s : r.value("sources", json::array())) rec.sources.push_back(s.get<std::string>());
      out.push_back(std::move(rec));
    }
    return out;
  });
  validate_incidents(out);
  return out;
}

}  // namespace spacerisk
