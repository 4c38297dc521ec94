#pragma once

// Shared fixtures and reference oracles for the test binaries. Nothing here calls
// into the library's arithmetic; the oracles are written out independently.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spacerisk/spacerisk.hpp"

#ifndef SPACERISK_TEST_DATA_DIR
#error "SPACERISK_TEST_DATA_DIR must point at the bundled data directory"
#endif

namespace testing {

using namespace spacerisk;

inline std::filesystem::path data(const std::string& name) {
  return std::filesystem::path(SPACERISK_TEST_DATA_DIR) / name;
}

inline const Scenario& case_study() {
  static const Scenario s = load_scenario(data("satcom_case_study.json"));
  return s;
}

inline const ControlCatalog& case_study_controls() {
  static const ControlCatalog c = load_control_catalog(data("satcom_controls.json"));
  return c;
}

inline ModuleNode mod(const std::string& id, Segment seg = Segment::ground) {
  return {id, id, seg, "component", false};
}

inline Arc edge(const std::string& s, const std::string& t, int key = 0) {
  return {s, t, key, "", ""};
}

inline CapabilitySet caps_of(const std::vector<std::pair<std::string, double>>& xs) {
  std::vector<std::pair<AttackTechnique, double>> entries;
  for (const auto& [id, p] : xs) entries.push_back({{id, id, "", Catalog::attack}, p});
  return load_capability_set(entries);
}

// P(at least one of independent events) by summing the probability of every
// outcome in which some event happens. 2^n terms.
inline double enumerate_union(const std::vector<double>& p) {
  const std::size_t n = p.size();
  double total = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) w *= (mask >> i & 1) ? p[i] : 1.0 - p[i];
    total += w;
  }
  return total;
}

struct Instance {
  InfrastructureGraph graph;
  CapabilitySet caps;
  SusceptibilityMap sus;
  std::vector<Mission> missions;
};

// Random multigraph instance. acyclic=true only adds arcs from lower to higher
// index. A single mission covers a random subset of nodes (no arcs).
inline Instance random_instance(std::mt19937_64& rng, std::size_t n_nodes, std::size_t n_tech,
                                double arc_density, bool acyclic, double beta_density = 0.25,
                                double beta_floor = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto beta = [&] { return beta_floor + (1.0 - beta_floor) * u(rng); };
  auto name = [](std::size_t i) {
    std::string s = std::to_string(i);
    return "N" + std::string(3 - std::min<std::size_t>(3, s.size()), '0') + s;
  };
  std::vector<ModuleNode> nodes;
  for (std::size_t i = 0; i < n_nodes; ++i) nodes.push_back(mod(name(i)));
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < n_nodes; ++i)
    for (std::size_t j = 0; j < n_nodes; ++j) {
      if (i == j || (acyclic && j < i)) continue;
      if (u(rng) < arc_density) arcs.push_back(edge(name(i), name(j)));
    }
  Instance inst;
  inst.graph = build_infrastructure(nodes, arcs);

  std::vector<std::pair<std::string, double>> techs;
  for (std::size_t t = 0; t < n_tech; ++t)
    techs.push_back({"T" + std::to_string(1000 + t), 0.05 + 0.95 * u(rng)});
  inst.caps = caps_of(techs);
  for (const auto& n : nodes)
    for (const auto& [t, _] : techs)
      if (u(rng) < beta_density) inst.sus.node_beta[{n.id, t}] = beta();
  for (const auto& a : arcs)
    for (const auto& [t, _] : techs)
      if (u(rng) < beta_density / 2) inst.sus.arc_beta[{a.id(), t}] = beta();

  Mission m;
  m.id = 1;
  MissionFlow f;
  f.mission_id = 1;
  f.kind = FlowKind::control;
  for (const auto& n : nodes)
    if (u(rng) < 0.3) f.nodes.push_back(n.id);
  if (f.nodes.empty()) f.nodes.push_back(nodes.front().id);
  m.control_flows.push_back(f);
  inst.missions.push_back(bind_mission(m, inst.graph));
  return inst;
}

// Nodes reachable along arcs from any node in `from` (the sources included).
inline std::set<std::string> reachable(const InfrastructureGraph& g, const std::set<std::string>& from) {
  std::set<std::string> seen = from;
  std::vector<std::string> stack(from.begin(), from.end());
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (const auto& a : g.out_arcs(v))
      if (seen.insert(a.target).second) stack.push_back(a.target);
  }
  return seen;
}

}  // namespace testing
