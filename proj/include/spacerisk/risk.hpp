#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "spacerisk/errors.hpp"
#include "spacerisk/graph.hpp"
#include "spacerisk/threat.hpp"

namespace spacerisk {

// Per-element compromise likelihoods plus flow/mission disruption.
struct RiskState {
  std::map<std::string, double> node_l;
  std::map<ArcId, double> arc_l;
  std::map<FlowId, double> flow_l;
  std::map<int, double> mission_l;
  std::size_t iterations = 0;
  bool converged = false;
  double last_delta = 0.0;

  double node(const std::string& v) const;  // 0 when absent
  double arc(const ArcId& e) const;         // 0 when absent
  double max_mission() const;               // 0 with no missions
};

// Independent-events fold 1 - prod(1 - x). Empty input gives 0.
double joint_node_likelihood(const std::vector<double>& contributions);
double joint_arc_likelihood(const std::vector<double>& contributions);

// Node update for one in-arc (u, v): L(v) + (1 - L(v)) * (1 - (1 - L(u)) * (1 - L(e))).
double cascade_node_update(double lv, double lu, double le);
// Arc update from its source: L(e) + (1 - L(e)) * L(u).
double cascade_arc_update(double le, double lu);

double max_of(const std::vector<double>& xs);

// f, g, h, h' plus the flow and mission folds. All default to the functions above.
struct Aggregators {
  std::function<double(const std::vector<double>&)> node_joint = joint_node_likelihood;
  // Second argument is the source node's joint likelihood; the default ignores it.
  std::function<double(const std::vector<double>&, double)> arc_joint =
      [](const std::vector<double>& c, double) { return joint_arc_likelihood(c); };
  std::function<double(double, double, double)> node_cascade = cascade_node_update;
  std::function<double(double, double)> arc_cascade = cascade_arc_update;
  std::function<double(const std::vector<double>&)> flow = max_of;
  std::function<double(const std::vector<double>&)> mission = max_of;
};

enum class CascadeCase { case0, case1 };
enum class UpdateSchedule { synchronous, in_place };

struct CascadeConfig {
  CascadeCase flag = CascadeCase::case0;
  double epsilon = 1e-10;
  std::size_t max_iterations = 1'000'000;
  UpdateSchedule schedule = UpdateSchedule::synchronous;
  Aggregators aggregators;
  // Called after every sweep with the sweep number and the current values.
  std::function<void(std::size_t, const RiskState&)> on_iteration;

  void validate() const;  // throws InvalidConfig
};

// The iteration cap was hit. The partial state travels with the exception.
class NotConverged : public Error {
 public:
  explicit NotConverged(RiskState s);
  const RiskState& state() const { return state_; }

 private:
  RiskState state_;
};

// Post-joint direct likelihoods for every node and arc of the graph.
RiskState direct_state(const InfrastructureGraph& graph, const CapabilitySet& caps,
                       const SusceptibilityMap& sus, const Aggregators& agg = {});

// Case-1 reduction. A node survives if it can be attacked directly or through one
// of its surviving in-arcs; an arc survives if both endpoints survive and either the
// arc or its source can be attacked directly. Repeats until nothing changes.
InfrastructureGraph prune_unattackable(const InfrastructureGraph& graph, const RiskState& direct);
InfrastructureGraph prune_unattackable(const InfrastructureGraph& graph, const CapabilitySet& caps,
                                       const SusceptibilityMap& sus);

// Runs h and h' to a fixed point. Only node_l/arc_l are touched. Throws NotConverged.
RiskState cascade_fixed_point(RiskState state, const InfrastructureGraph& graph,
                              const CascadeConfig& config);

// Fold over member nodes and arcs. Members missing from the state count as 0.
double flow_disruption(const MissionFlow& flow, const RiskState& state,
                       const Aggregators& agg = {});
double mission_disruption(const Mission& mission, const RiskState& state,
                          const Aggregators& agg = {});

// Fills flow_l and mission_l in place.
void aggregate_missions(RiskState& state, const std::vector<Mission>& missions,
                        const Aggregators& agg = {});

// direct -> joint -> optional prune -> cascade -> flow/mission aggregation.
RiskState analyze(const InfrastructureGraph& graph, const std::vector<Mission>& missions,
                  const CapabilitySet& caps, const SusceptibilityMap& sus,
                  const CascadeConfig& config = {});

}  // namespace spacerisk
