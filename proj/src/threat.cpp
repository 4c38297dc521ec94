#include "spacerisk/threat.hpp"

#include <cmath>

#include "spacerisk/errors.hpp"

namespace spacerisk {

std::string to_string(Catalog c) { return c == Catalog::attack ? "ATTACK" : "SPARTA"; }

Catalog parse_catalog(const std::string& s) {
  if (s == "ATTACK" || s == "ATT&CK" || s == "attack") return Catalog::attack;
  if (s == "SPARTA" || s == "sparta") return Catalog::sparta;
  throw ValidationError("unknown technique catalog '" + s + "'");
}

const AttackTechnique& CapabilitySet::technique(const std::string& id) const {
  auto it = techniques_.find(id);
  if (it == techniques_.end()) throw UnknownTechnique("technique '" + id + "' not in capability set");
  return it->second;
}

double CapabilitySet::possession(const std::string& id) const {
  auto it = possession_.find(id);
  if (it == possession_.end()) throw UnknownTechnique("technique '" + id + "' not in capability set");
  return it->second;
}

std::vector<std::string> CapabilitySet::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : techniques_) out.push_back(id);
  return out;
}

CapabilitySet CapabilitySet::without(const std::set<std::string>& removed) const {
  CapabilitySet c = *this;
  for (const auto& id : removed) {
    c.techniques_.erase(id);
    c.possession_.erase(id);
  }
  return c;
}

CapabilitySet load_capability_set(const std::vector<std::pair<AttackTechnique, double>>& entries) {
  CapabilitySet c;
  for (const auto& [t, l] : entries) {
    if (t.id.empty()) throw ValidationError("technique with empty id");
    if (!(l > 0.0 && l <= 1.0))
      throw PossessionOutOfRange("technique '" + t.id + "': possession " + std::to_string(l) +
                                 " outside (0,1]");
    if (!c.techniques_.emplace(t.id, t).second)
      throw DuplicateTechnique("duplicate technique '" + t.id + "'");
    c.possession_[t.id] = l;
  }
  return c;
}

double SusceptibilityMap::node(const std::string& v, const std::string& at) const {
  auto it = node_beta.find({v, at});
  return it == node_beta.end() ? 0.0 : it->second;
}

double SusceptibilityMap::arc(const ArcId& e, const std::string& at) const {
  auto it = arc_beta.find({e, at});
  return it == arc_beta.end() ? 0.0 : it->second;
}

void SusceptibilityMap::validate() const {
  auto ok = [](double b) { return std::isfinite(b) && b >= 0.0 && b <= 1.0; };
  for (const auto& [k, b] : node_beta)
    if (!ok(b))
      throw BetaOutOfRange("beta(" + k.first + ", " + k.second + ") = " + std::to_string(b));
  for (const auto& [k, b] : arc_beta)
    if (!ok(b))
      throw BetaOutOfRange("beta(" + to_string(k.first) + ", " + k.second + ") = " +
                           std::to_string(b));
}

double direct_likelihood(const std::string& node, const std::string& at, const CapabilitySet& caps,
                         const SusceptibilityMap& sus) {
  return sus.node(node, at) * caps.possession(at);
}

double direct_likelihood(const ArcId& arc, const std::string& at, const CapabilitySet& caps,
                         const SusceptibilityMap& sus) {
  return sus.arc(arc, at) * caps.possession(at);
}

std::vector<std::string> techniques_targeting(const std::string& node, const CapabilitySet& caps,
                                              const SusceptibilityMap& sus) {
  std::vector<std::string> out;
  for (const auto& id : caps.ids())
    if (sus.node(node, id) > 0.0) out.push_back(id);
  return out;
}

std::vector<std::string> techniques_targeting(const ArcId& arc, const CapabilitySet& caps,
                                              const SusceptibilityMap& sus) {
  std::vector<std::string> out;
  for (const auto& id : caps.ids())
    if (sus.arc(arc, id) > 0.0) out.push_back(id);
  return out;
}

}  // namespace spacerisk
