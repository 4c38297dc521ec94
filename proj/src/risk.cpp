#include "spacerisk/risk.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace spacerisk {

double RiskState::node(const std::string& v) const {
  auto it = node_l.find(v);
  return it == node_l.end() ? 0.0 : it->second;
}

double RiskState::arc(const ArcId& e) const {
  auto it = arc_l.find(e);
  return it == arc_l.end() ? 0.0 : it->second;
}

double RiskState::max_mission() const {
  double m = 0.0;
  for (const auto& [_, l] : mission_l) m = std::max(m, l);
  return m;
}

double joint_node_likelihood(const std::vector<double>& contributions) {
  double miss = 1.0;
  for (double x : contributions) miss *= 1.0 - x;
  return 1.0 - miss;
}

double joint_arc_likelihood(const std::vector<double>& contributions) {
  return joint_node_likelihood(contributions);
}

double cascade_node_update(double lv, double lu, double le) {
  return lv + (1.0 - lv) * (1.0 - (1.0 - lu) * (1.0 - le));
}

double cascade_arc_update(double le, double lu) { return le + (1.0 - le) * lu; }

double max_of(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, x);
  return m;
}

void CascadeConfig::validate() const {
  if (!(epsilon > 0.0)) throw InvalidConfig("epsilon must be positive");
  if (max_iterations < 1) throw InvalidConfig("max_iterations must be at least 1");
  const auto& a = aggregators;
  if (!a.node_joint || !a.arc_joint || !a.node_cascade || !a.arc_cascade || !a.flow || !a.mission)
    throw InvalidConfig("every aggregator must be set");
}

NotConverged::NotConverged(RiskState s)
    : Error("cascade did not converge within " + std::to_string(s.iterations) +
            " iterations (last delta " + std::to_string(s.last_delta) + ")"),
      state_(std::move(s)) {}

RiskState direct_state(const InfrastructureGraph& graph, const CapabilitySet& caps,
                       const SusceptibilityMap& sus, const Aggregators& agg) {
  RiskState s;
  for (const auto& [v, _] : graph.nodes()) {
    std::vector<double> c;
    for (auto it = sus.node_beta.lower_bound({v, std::string()});
         it != sus.node_beta.end() && it->first.first == v; ++it)
      if (caps.contains(it->first.second))
        c.push_back(it->second * caps.possession(it->first.second));
    s.node_l[v] = agg.node_joint(c);
  }
  for (const auto& [e, _] : graph.arcs()) {
    std::vector<double> c;
    for (auto it = sus.arc_beta.lower_bound({e, std::string()});
         it != sus.arc_beta.end() && it->first.first == e; ++it)
      if (caps.contains(it->first.second))
        c.push_back(it->second * caps.possession(it->first.second));
    s.arc_l[e] = agg.arc_joint(c, s.node_l[e.source]);
  }
  return s;
}

InfrastructureGraph prune_unattackable(const InfrastructureGraph& graph, const RiskState& direct) {
  std::set<std::string> nodes;
  std::set<ArcId> arcs;
  for (const auto& [v, _] : graph.nodes()) nodes.insert(v);
  for (const auto& [e, _] : graph.arcs()) arcs.insert(e);

  for (bool changed = true; changed;) {
    changed = false;
    std::set<std::string> keep;
    for (const auto& v : nodes) {
      bool attackable = direct.node(v) > 0.0;
      for (const auto& e : graph.in_arcs(v))
        if (!attackable && arcs.count(e) && direct.arc(e) > 0.0) attackable = true;
      if (attackable) keep.insert(v);
    }
    std::set<ArcId> keep_arcs;
    for (const auto& e : arcs)
      if (keep.count(e.source) && keep.count(e.target) &&
          (direct.arc(e) > 0.0 || direct.node(e.source) > 0.0))
        keep_arcs.insert(e);
    if (keep != nodes || keep_arcs != arcs) changed = true;
    nodes = std::move(keep);
    arcs = std::move(keep_arcs);
  }
  return graph.restricted_to(nodes, arcs);
}

InfrastructureGraph prune_unattackable(const InfrastructureGraph& graph, const CapabilitySet& caps,
                                       const SusceptibilityMap& sus) {
  return prune_unattackable(graph, direct_state(graph, caps, sus));
}

RiskState cascade_fixed_point(RiskState state, const InfrastructureGraph& graph,
                              const CascadeConfig& config) {
  config.validate();
  const auto& agg = config.aggregators;
  // Make sure every graph element has a slot; missing entries start at 0.
  for (const auto& [v, _] : graph.nodes()) state.node_l.try_emplace(v, 0.0);
  for (const auto& [e, _] : graph.arcs()) state.arc_l.try_emplace(e, 0.0);

  const bool sync = config.schedule == UpdateSchedule::synchronous;
  state.iterations = 0;
  state.converged = false;
  while (state.iterations < config.max_iterations) {
    const RiskState prev = state;
    const RiskState& src = sync ? prev : state;
    double delta = 0.0;
    for (auto& [v, lv] : state.node_l) {
      if (!graph.has_node(v)) continue;
      double x = src.node_l.at(v);
      for (const auto& e : graph.in_arcs(v))
        x = agg.node_cascade(x, src.node_l.at(e.source), src.arc_l.at(e));
      lv = x;
      delta = std::max(delta, std::abs(x - prev.node_l.at(v)));
    }
    for (auto& [e, le] : state.arc_l) {
      if (!graph.has_arc(e)) continue;
      le = agg.arc_cascade(src.arc_l.at(e), src.node_l.at(e.source));
      delta = std::max(delta, std::abs(le - prev.arc_l.at(e)));
    }
    ++state.iterations;
    state.last_delta = delta;
    if (config.on_iteration) config.on_iteration(state.iterations, state);
    if (delta <= config.epsilon) {
      state.converged = true;
      return state;
    }
  }
  throw NotConverged(std::move(state));
}

double flow_disruption(const MissionFlow& flow, const RiskState& state, const Aggregators& agg) {
  std::vector<double> xs;
  xs.reserve(flow.nodes.size() + flow.arcs.size());
  for (const auto& v : flow.nodes) xs.push_back(state.node(v));
  for (const auto& e : flow.arcs) xs.push_back(state.arc(e));
  return agg.flow(xs);
}

double mission_disruption(const Mission& mission, const RiskState& state, const Aggregators& agg) {
  std::vector<double> xs;
  for (const auto* f : mission.flows()) xs.push_back(flow_disruption(*f, state, agg));
  return agg.mission(xs);
}

void aggregate_missions(RiskState& state, const std::vector<Mission>& missions,
                        const Aggregators& agg) {
  state.flow_l.clear();
  state.mission_l.clear();
  for (const auto& m : missions) {
    std::vector<double> xs;
    for (const auto* f : m.flows()) {
      double l = flow_disruption(*f, state, agg);
      state.flow_l[flow_id(*f)] = l;
      xs.push_back(l);
    }
    state.mission_l[m.id] = agg.mission(xs);
  }
}

RiskState analyze(const InfrastructureGraph& graph, const std::vector<Mission>& missions,
                  const CapabilitySet& caps, const SusceptibilityMap& sus,
                  const CascadeConfig& config) {
  config.validate();
  RiskState direct = direct_state(graph, caps, sus, config.aggregators);
  const InfrastructureGraph* g = &graph;
  InfrastructureGraph pruned;
  if (config.flag == CascadeCase::case1) {
    pruned = prune_unattackable(graph, direct);
    RiskState reduced;
    for (const auto& [v, _] : pruned.nodes()) reduced.node_l[v] = direct.node_l.at(v);
    for (const auto& [e, _] : pruned.arcs()) reduced.arc_l[e] = direct.arc_l.at(e);
    direct = std::move(reduced);
    g = &pruned;
  }
  RiskState out;
  try {
    out = cascade_fixed_point(std::move(direct), *g, config);
  } catch (NotConverged& nc) {
    RiskState partial = nc.state();
    aggregate_missions(partial, missions, config.aggregators);
    throw NotConverged(std::move(partial));
  }
  aggregate_missions(out, missions, config.aggregators);
  return out;
}

}  // namespace spacerisk
