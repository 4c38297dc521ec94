#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "spacerisk/graph.hpp"
#include "spacerisk/risk.hpp"
#include "spacerisk/threat.hpp"

namespace spacerisk {

struct ControlEntry {
  std::string control_id;
  std::string name;
  std::vector<std::string> techniques;

  bool operator==(const ControlEntry&) const = default;
};

// Entries keep file order; "first listed" means first in this vector.
struct ControlCatalog {
  std::vector<ControlEntry> entries;

  std::vector<std::string> controls_for(const std::string& technique) const;
  bool operator==(const ControlCatalog&) const = default;
};

struct ControlSelection {
  std::map<std::string, std::string> chosen;                   // technique -> control
  std::map<std::string, std::vector<std::string>> candidates;  // technique -> all controls
  std::set<std::string> controls() const;
};

// First listed control per technique. Throws MissingControl naming the technique.
ControlSelection select_controls(const std::set<std::string>& mitigated,
                                 const ControlCatalog& catalog);

// One removal step, kept for the report.
struct HardeningStep {
  enum class Kind { node_threshold, arc_threshold, cascade };
  Kind kind = Kind::node_threshold;
  std::string node;  // set for node removals
  ArcId arc;         // the arc that triggered the step
  std::vector<std::string> mitigated;
};

std::string to_string(HardeningStep::Kind k);

struct HardeningPlan {
  double tau = 0.1;
  CascadeCase flag = CascadeCase::case0;
  bool necessary = false;
  bool unmitigable = false;
  std::vector<std::string> mitigated;  // in mitigation order
  std::set<std::string> pruned_nodes;  // removed by the case-1 reduction, not by hardening
  std::set<ArcId> pruned_arcs;
  std::set<std::string> deleted_nodes;
  std::set<ArcId> deleted_arcs;
  std::vector<HardeningStep> steps;
  ControlSelection controls;
  std::map<int, double> initial;   // L(j) before hardening
  std::map<int, double> residual;  // L(j) after hardening

  std::set<std::string> mitigated_set() const {
    return {mitigated.begin(), mitigated.end()};
  }
};

struct HardenOptions {
  double tau = 0.1;
  CascadeConfig config;  // flag picks case 0 or case 1 for the opening analysis
  bool select = true;    // run control selection at the end
};

// Iteratively strips techniques (and the nodes/arcs they hit) until every mission
// sits at or below tau. Unmitigable outcomes come back flagged, not thrown.
HardeningPlan harden(const InfrastructureGraph& graph, const std::vector<Mission>& missions,
                     const CapabilitySet& caps, const SusceptibilityMap& sus,
                     const ControlCatalog& catalog, const HardenOptions& opts = {});

// The graph the plan leaves behind: pruning and deletions applied.
InfrastructureGraph hardened_graph(const HardeningPlan& plan, const InfrastructureGraph& graph);

// Re-runs analysis (case 0) on the hardened graph with the reduced capability set.
std::map<int, double> residual_risk(const HardeningPlan& plan, const InfrastructureGraph& graph,
                                    const std::vector<Mission>& missions, const CapabilitySet& caps,
                                    const SusceptibilityMap& sus, const CascadeConfig& config = {});

}  // namespace spacerisk
