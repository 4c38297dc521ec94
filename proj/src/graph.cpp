#include "spacerisk/graph.hpp"

#include <algorithm>

#include "spacerisk/errors.hpp"

namespace spacerisk {

std::string to_string(Segment s) {
  switch (s) {
    case Segment::space: return "space";
    case Segment::ground: return "ground";
    case Segment::user: return "user";
    case Segment::link_endpoint_owner: return "link-endpoint-owner";
  }
  return "?";
}

Segment parse_segment(const std::string& s) {
  if (s == "space") return Segment::space;
  if (s == "ground") return Segment::ground;
  if (s == "user") return Segment::user;
  if (s == "link-endpoint-owner" || s == "link") return Segment::link_endpoint_owner;
  throw InvalidNode("unknown segment '" + s + "'");
}

std::string to_string(const ArcId& a) {
  std::string s = a.source + "->" + a.target;
  if (a.key != 0) s += "#" + std::to_string(a.key);
  return s;
}

std::string to_string(FlowKind k) { return k == FlowKind::control ? "control" : "data"; }

std::string to_string(const FlowId& f) {
  return "m" + std::to_string(f.mission_id) + "." + to_string(f.kind) + "." +
         std::to_string(f.flow_index);
}

namespace {
const std::vector<ArcId> kNoArcs;
}

const ModuleNode& InfrastructureGraph::node(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw InvalidNode("no node '" + id + "'");
  return it->second;
}

const Arc& InfrastructureGraph::arc(const ArcId& a) const {
  auto it = arcs_.find(a);
  if (it == arcs_.end()) throw DanglingArc("no arc " + to_string(a));
  return it->second;
}

const std::vector<ArcId>& InfrastructureGraph::in_arcs(const std::string& v) const {
  auto it = in_.find(v);
  return it == in_.end() ? kNoArcs : it->second;
}

const std::vector<ArcId>& InfrastructureGraph::out_arcs(const std::string& v) const {
  auto it = out_.find(v);
  return it == out_.end() ? kNoArcs : it->second;
}

std::vector<std::string> InfrastructureGraph::node_ids() const {
  std::vector<std::string> out;
  out.reserve(nodes_.size());
  for (const auto& [id, _] : nodes_) out.push_back(id);
  return out;
}

std::vector<ArcId> InfrastructureGraph::arc_ids() const {
  std::vector<ArcId> out;
  out.reserve(arcs_.size());
  for (const auto& [id, _] : arcs_) out.push_back(id);
  return out;
}

void InfrastructureGraph::index() {
  in_.clear();
  out_.clear();
  for (const auto& [id, _] : arcs_) {
    in_[id.target].push_back(id);
    out_[id.source].push_back(id);
  }
}

InfrastructureGraph InfrastructureGraph::without_node(const std::string& id) const {
  InfrastructureGraph g = *this;
  g.nodes_.erase(id);
  std::erase_if(g.arcs_, [&](const auto& kv) {
    return kv.first.source == id || kv.first.target == id;
  });
  g.index();
  return g;
}

InfrastructureGraph InfrastructureGraph::without_arc(const ArcId& a) const {
  InfrastructureGraph g = *this;
  g.arcs_.erase(a);
  g.index();
  return g;
}

InfrastructureGraph InfrastructureGraph::restricted_to(const std::set<std::string>& keep_nodes,
                                                       const std::set<ArcId>& keep_arcs) const {
  InfrastructureGraph g;
  for (const auto& [id, n] : nodes_)
    if (keep_nodes.count(id)) g.nodes_.emplace(id, n);
  for (const auto& [id, a] : arcs_)
    if (keep_arcs.count(id) && keep_nodes.count(id.source) && keep_nodes.count(id.target))
      g.arcs_.emplace(id, a);
  g.index();
  return g;
}

InfrastructureGraph build_infrastructure(const std::vector<ModuleNode>& nodes,
                                         const std::vector<Arc>& arcs) {
  InfrastructureGraph g;
  for (const auto& n : nodes) {
    if (n.id.empty()) throw InvalidNode("node with empty id");
    if (n.component.empty()) throw InvalidNode("node '" + n.id + "' has no component");
    if (!g.nodes_.emplace(n.id, n).second) throw DuplicateNodeId("duplicate node id '" + n.id + "'");
  }
  for (const auto& a : arcs) {
    if (!g.nodes_.count(a.source))
      throw DanglingArc("arc " + to_string(a.id()) + " references unknown node '" + a.source + "'");
    if (!g.nodes_.count(a.target))
      throw DanglingArc("arc " + to_string(a.id()) + " references unknown node '" + a.target + "'");
    if (a.arc_key < 0) throw DuplicateArc("arc " + to_string(a.id()) + " has negative key");
    if (!g.arcs_.emplace(a.id(), a).second)
      throw DuplicateArc("duplicate arc " + to_string(a.id()));
  }
  g.index();
  return g;
}

std::vector<const MissionFlow*> Mission::flows() const {
  std::vector<const MissionFlow*> out;
  for (const auto& f : control_flows) out.push_back(&f);
  for (const auto& f : data_flows) out.push_back(&f);
  return out;
}

MissionFlow bind_flow(const MissionFlow& flow, const InfrastructureGraph& graph) {
  const std::string who = flow.name.empty() ? to_string(flow_id(flow)) : flow.name;
  std::set<std::string> members;
  for (const auto& v : flow.nodes) {
    if (!graph.has_node(v))
      throw FlowNotSubgraph("flow '" + who + "': node '" + v + "' is not in the graph");
    members.insert(v);
  }
  for (const auto& a : flow.arcs) {
    if (!graph.has_arc(a))
      throw FlowNotSubgraph("flow '" + who + "': arc " + to_string(a) + " is not in the graph");
    if (!members.count(a.source) || !members.count(a.target))
      throw FlowNotSubgraph("flow '" + who + "': arc " + to_string(a) +
                            " has an endpoint outside the flow's node set");
  }
  return flow;
}

Mission bind_mission(const Mission& mission, const InfrastructureGraph& graph) {
  if (mission.control_flows.empty() && mission.data_flows.empty())
    throw InvalidMission("mission " + std::to_string(mission.id) + " has no flows");
  std::set<FlowId> seen;
  auto check = [&](const MissionFlow& f, FlowKind kind) {
    if (f.mission_id != mission.id)
      throw InvalidMission("flow '" + f.name + "' carries mission id " +
                           std::to_string(f.mission_id) + ", expected " +
                           std::to_string(mission.id));
    if (f.kind != kind) throw InvalidMission("flow '" + f.name + "' is filed under the wrong kind");
    if (!seen.insert(flow_id(f)).second)
      throw InvalidMission("duplicate flow " + to_string(flow_id(f)));
    bind_flow(f, graph);
  };
  for (const auto& f : mission.control_flows) check(f, FlowKind::control);
  for (const auto& f : mission.data_flows) check(f, FlowKind::data);
  return mission;
}

InfrastructureGraph mission_union(const Mission& mission, const InfrastructureGraph& graph) {
  std::set<std::string> nodes;
  std::set<ArcId> arcs;
  for (const auto* f : mission.flows()) {
    nodes.insert(f->nodes.begin(), f->nodes.end());
    arcs.insert(f->arcs.begin(), f->arcs.end());
  }
  return graph.restricted_to(nodes, arcs);
}

}  // namespace spacerisk
