#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace spacerisk {

enum class Segment { space, ground, user, link_endpoint_owner };

std::string to_string(Segment s);
Segment parse_segment(const std::string& s);

struct ModuleNode {
  std::string id;
  std::string name;
  Segment segment = Segment::ground;
  std::string component;
  bool emulated = false;

  bool operator==(const ModuleNode&) const = default;
};

// (source, target, arc_key) identifies one arc of the multigraph.
struct ArcId {
  std::string source;
  std::string target;
  int key = 0;

  auto operator<=>(const ArcId&) const = default;
  bool operator==(const ArcId&) const = default;
};

std::string to_string(const ArcId& a);

struct Arc {
  std::string source;
  std::string target;
  int arc_key = 0;
  std::string channel;
  std::string note;  // free text, e.g. where the arc was reconstructed from

  ArcId id() const { return {source, target, arc_key}; }
  bool operator==(const Arc&) const = default;
};

// Immutable once built. Every mutation returns a new graph.
class InfrastructureGraph {
 public:
  InfrastructureGraph() = default;

  const std::map<std::string, ModuleNode>& nodes() const { return nodes_; }
  const std::map<ArcId, Arc>& arcs() const { return arcs_; }

  bool has_node(const std::string& id) const { return nodes_.count(id) != 0; }
  bool has_arc(const ArcId& a) const { return arcs_.count(a) != 0; }
  const ModuleNode& node(const std::string& id) const;
  const Arc& arc(const ArcId& a) const;

  const std::vector<ArcId>& in_arcs(const std::string& v) const;
  const std::vector<ArcId>& out_arcs(const std::string& v) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  std::vector<std::string> node_ids() const;
  std::vector<ArcId> arc_ids() const;

  // Removes the node together with every arc touching it.
  InfrastructureGraph without_node(const std::string& id) const;
  InfrastructureGraph without_arc(const ArcId& a) const;
  // Keeps the listed nodes and those listed arcs whose endpoints both survive.
  InfrastructureGraph restricted_to(const std::set<std::string>& keep_nodes,
                                    const std::set<ArcId>& keep_arcs) const;

  bool operator==(const InfrastructureGraph& o) const {
    return nodes_ == o.nodes_ && arcs_ == o.arcs_;
  }

 private:
  friend InfrastructureGraph build_infrastructure(const std::vector<ModuleNode>&,
                                                  const std::vector<Arc>&);
  void index();

  std::map<std::string, ModuleNode> nodes_;
  std::map<ArcId, Arc> arcs_;
  std::map<std::string, std::vector<ArcId>> in_;
  std::map<std::string, std::vector<ArcId>> out_;
};

// Throws DuplicateNodeId, DuplicateArc, DanglingArc or InvalidNode.
InfrastructureGraph build_infrastructure(const std::vector<ModuleNode>& nodes,
                                         const std::vector<Arc>& arcs);

enum class FlowKind { control, data };

std::string to_string(FlowKind k);

struct MissionFlow {
  int mission_id = 1;
  int flow_index = 1;
  FlowKind kind = FlowKind::control;
  std::string name;
  std::vector<std::string> nodes;
  std::vector<ArcId> arcs;

  bool operator==(const MissionFlow&) const = default;
};

// Orders flows inside a RiskState.
struct FlowId {
  int mission_id = 1;
  FlowKind kind = FlowKind::control;
  int flow_index = 1;

  auto operator<=>(const FlowId&) const = default;
  bool operator==(const FlowId&) const = default;
};

inline FlowId flow_id(const MissionFlow& f) { return {f.mission_id, f.kind, f.flow_index}; }
std::string to_string(const FlowId& f);

struct Mission {
  int id = 1;
  std::string name;
  std::vector<MissionFlow> control_flows;
  std::vector<MissionFlow> data_flows;

  std::vector<const MissionFlow*> flows() const;
  bool operator==(const Mission&) const = default;
};

// Accepts the flow iff its nodes and arcs live in the graph and every arc's
// endpoints are flow members. Throws FlowNotSubgraph naming the offender.
MissionFlow bind_flow(const MissionFlow& flow, const InfrastructureGraph& graph);

// Binds every flow and checks ids, kinds and that the mission is non-empty.
Mission bind_mission(const Mission& mission, const InfrastructureGraph& graph);

// Node/arc union of all flows. Node attributes come from the graph.
InfrastructureGraph mission_union(const Mission& mission, const InfrastructureGraph& graph);

}  // namespace spacerisk
