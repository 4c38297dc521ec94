#include "spacerisk/hardening.hpp"

#include <algorithm>

namespace spacerisk {

std::vector<std::string> ControlCatalog::controls_for(const std::string& technique) const {
  std::vector<std::string> out;
  for (const auto& e : entries)
    if (std::find(e.techniques.begin(), e.techniques.end(), technique) != e.techniques.end())
      out.push_back(e.control_id);
  return out;
}

std::set<std::string> ControlSelection::controls() const {
  std::set<std::string> out;
  for (const auto& [_, c] : chosen) out.insert(c);
  return out;
}

ControlSelection select_controls(const std::set<std::string>& mitigated,
                                 const ControlCatalog& catalog) {
  ControlSelection sel;
  for (const auto& t : mitigated) {
    auto cands = catalog.controls_for(t);
    if (cands.empty()) throw MissingControl("no security control mitigates technique '" + t + "'");
    sel.chosen[t] = cands.front();
    sel.candidates[t] = std::move(cands);
  }
  return sel;
}

std::string to_string(HardeningStep::Kind k) {
  switch (k) {
    case HardeningStep::Kind::node_threshold: return "node-threshold";
    case HardeningStep::Kind::arc_threshold: return "arc-threshold";
    case HardeningStep::Kind::cascade: return "cascade";
  }
  return "?";
}

namespace {

bool over_tau(double x, double tau) { return x > tau; }

bool missions_over(const RiskState& s, double tau) {
  for (const auto& [_, l] : s.mission_l)
    if (over_tau(l, tau)) return true;
  return false;
}

class Hardener {
 public:
  Hardener(const CapabilitySet& caps, const SusceptibilityMap& sus, HardeningPlan& plan)
      : caps_(caps), sus_(sus), plan_(plan) {
    for (const auto& id : caps.ids()) remaining_.insert(id);
  }

  CapabilitySet current_caps() const {
    std::set<std::string> gone(plan_.mitigated.begin(), plan_.mitigated.end());
    return caps_.without(gone);
  }

  bool node_over_threshold(const std::string& v) const {
    for (const auto& t : remaining_)
      if (over_tau(sus_.node(v, t) * caps_.possession(t), plan_.tau)) return true;
    return false;
  }

  bool arc_over_threshold(const ArcId& e) const {
    for (const auto& t : remaining_)
      if (over_tau(sus_.arc(e, t) * caps_.possession(t), plan_.tau)) return true;
    return false;
  }

  // Mitigates what hits the node or its arcs, then drops the node and its arcs.
  void delete_node(InfrastructureGraph& g, const std::string& v, HardeningStep step) {
    step.node = v;
    std::vector<ArcId> adjacent = g.in_arcs(v);
    const auto& out = g.out_arcs(v);
    adjacent.insert(adjacent.end(), out.begin(), out.end());
    for (const auto& t : std::set<std::string>(remaining_)) {
      bool hit = sus_.node(v, t) > 0.0;
      for (const auto& e : adjacent) hit = hit || sus_.arc(e, t) > 0.0;
      if (hit) mitigate(t, step);
    }
    for (const auto& e : adjacent) plan_.deleted_arcs.insert(e);
    plan_.deleted_nodes.insert(v);
    g = g.without_node(v);
    plan_.steps.push_back(std::move(step));
  }

  void delete_arc(InfrastructureGraph& g, const ArcId& e) {
    HardeningStep step;
    step.kind = HardeningStep::Kind::arc_threshold;
    step.arc = e;
    for (const auto& t : std::set<std::string>(remaining_))
      if (sus_.arc(e, t) > 0.0) mitigate(t, step);
    plan_.deleted_arcs.insert(e);
    g = g.without_arc(e);
    plan_.steps.push_back(std::move(step));
  }

 private:
  void mitigate(const std::string& t, HardeningStep& step) {
    if (!remaining_.erase(t)) return;
    plan_.mitigated.push_back(t);
    step.mitigated.push_back(t);
  }

  const CapabilitySet& caps_;
  const SusceptibilityMap& sus_;
  HardeningPlan& plan_;
  std::set<std::string> remaining_;
};

}  // namespace

HardeningPlan harden(const InfrastructureGraph& graph, const std::vector<Mission>& missions,
                     const CapabilitySet& caps, const SusceptibilityMap& sus,
                     const ControlCatalog& catalog, const HardenOptions& opts) {
  if (!(opts.tau >= 0.0 && opts.tau <= 1.0)) throw InvalidConfig("tau must lie in [0,1]");
  opts.config.validate();

  HardeningPlan plan;
  plan.tau = opts.tau;
  plan.flag = opts.config.flag;

  const RiskState first = analyze(graph, missions, caps, sus, opts.config);
  plan.initial = first.mission_l;

  InfrastructureGraph g = graph;
  if (opts.config.flag == CascadeCase::case1) {
    g = prune_unattackable(graph, caps, sus);
    for (const auto& [v, _] : graph.nodes())
      if (!g.has_node(v)) plan.pruned_nodes.insert(v);
    for (const auto& [e, _] : graph.arcs())
      if (!g.has_arc(e)) plan.pruned_arcs.insert(e);
  }

  if (!missions_over(first, opts.tau)) {
    plan.residual = first.mission_l;
    return plan;
  }
  plan.necessary = true;

  Hardener h(caps, sus, plan);

  // Anything a single technique can push over tau goes first.
  for (const auto& v : g.node_ids()) {
    if (g.has_node(v) && h.node_over_threshold(v)) {
      HardeningStep step;
      step.kind = HardeningStep::Kind::node_threshold;
      h.delete_node(g, v, step);
    }
  }
  for (const auto& e : g.arc_ids()) {
    if (g.has_arc(e) && h.arc_over_threshold(e)) h.delete_arc(g, e);
  }

  // Then chase the cascade: cut the source of the first hot arc and re-analyze.
  CascadeConfig cfg = opts.config;
  cfg.flag = CascadeCase::case0;
  for (;;) {
    const RiskState s = analyze(g, missions, h.current_caps(), sus, cfg);
    if (!missions_over(s, opts.tau)) {
      plan.residual = s.mission_l;
      break;
    }
    const ArcId* hot = nullptr;
    for (const auto& [e, l] : s.arc_l)
      if (over_tau(l, opts.tau)) {
        hot = &e;
        break;
      }
    if (!hot) {
      plan.unmitigable = true;
      plan.residual = s.mission_l;
      break;
    }
    HardeningStep step;
    step.kind = HardeningStep::Kind::cascade;
    step.arc = *hot;
    h.delete_node(g, hot->source, step);
  }

  if (opts.select) plan.controls = select_controls(plan.mitigated_set(), catalog);
  return plan;
}

InfrastructureGraph hardened_graph(const HardeningPlan& plan, const InfrastructureGraph& graph) {
  std::set<std::string> nodes;
  std::set<ArcId> arcs;
  for (const auto& [v, _] : graph.nodes())
    if (!plan.pruned_nodes.count(v) && !plan.deleted_nodes.count(v)) nodes.insert(v);
  for (const auto& [e, _] : graph.arcs())
    if (!plan.pruned_arcs.count(e) && !plan.deleted_arcs.count(e)) arcs.insert(e);
  return graph.restricted_to(nodes, arcs);
}

std::map<int, double> residual_risk(const HardeningPlan& plan, const InfrastructureGraph& graph,
                                    const std::vector<Mission>& missions, const CapabilitySet& caps,
                                    const SusceptibilityMap& sus, const CascadeConfig& config) {
  CascadeConfig cfg = config;
  cfg.flag = CascadeCase::case0;
  return analyze(hardened_graph(plan, graph), missions, caps.without(plan.mitigated_set()), sus, cfg)
      .mission_l;
}

}  // namespace spacerisk
