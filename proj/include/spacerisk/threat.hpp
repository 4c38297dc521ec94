#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spacerisk/graph.hpp"

namespace spacerisk {

enum class Catalog { attack, sparta };

std::string to_string(Catalog c);
Catalog parse_catalog(const std::string& s);

struct AttackTechnique {
  std::string id;  // opaque catalog token, never parsed
  std::string name;
  std::string tactic;
  Catalog catalog = Catalog::attack;

  bool operator==(const AttackTechnique&) const = default;
};

// Attacker techniques with their possession likelihood L_at in (0,1].
class CapabilitySet {
 public:
  CapabilitySet() = default;

  bool contains(const std::string& id) const { return techniques_.count(id) != 0; }
  const AttackTechnique& technique(const std::string& id) const;
  double possession(const std::string& id) const;  // throws UnknownTechnique

  const std::map<std::string, AttackTechnique>& techniques() const { return techniques_; }
  const std::map<std::string, double>& possessions() const { return possession_; }
  std::vector<std::string> ids() const;
  std::size_t size() const { return techniques_.size(); }
  bool empty() const { return techniques_.empty(); }

  CapabilitySet without(const std::set<std::string>& removed) const;

  bool operator==(const CapabilitySet&) const = default;

 private:
  friend CapabilitySet load_capability_set(
      const std::vector<std::pair<AttackTechnique, double>>&);
  std::map<std::string, AttackTechnique> techniques_;
  std::map<std::string, double> possession_;
};

// Throws PossessionOutOfRange (outside (0,1]) or DuplicateTechnique.
CapabilitySet load_capability_set(const std::vector<std::pair<AttackTechnique, double>>& entries);

// beta(target, technique). Missing entries read as 0.
struct SusceptibilityMap {
  std::map<std::pair<std::string, std::string>, double> node_beta;  // (node, technique)
  std::map<std::pair<ArcId, std::string>, double> arc_beta;         // (arc, technique)

  double node(const std::string& v, const std::string& at) const;
  double arc(const ArcId& e, const std::string& at) const;

  // Throws BetaOutOfRange for any value outside [0,1].
  void validate() const;

  bool operator==(const SusceptibilityMap&) const = default;
};

// beta(target, at) * L_at. Throws UnknownTechnique when at is not in caps.
double direct_likelihood(const std::string& node, const std::string& at, const CapabilitySet& caps,
                         const SusceptibilityMap& sus);
double direct_likelihood(const ArcId& arc, const std::string& at, const CapabilitySet& caps,
                         const SusceptibilityMap& sus);

// Techniques with beta > 0 on the node or on the arc. Sorted by id.
std::vector<std::string> techniques_targeting(const std::string& node, const CapabilitySet& caps,
                                              const SusceptibilityMap& sus);
std::vector<std::string> techniques_targeting(const ArcId& arc, const CapabilitySet& caps,
                                              const SusceptibilityMap& sus);

}  // namespace spacerisk
