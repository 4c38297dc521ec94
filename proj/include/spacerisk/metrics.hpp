#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "spacerisk/killchain.hpp"

namespace spacerisk {

// Values in [0,1]; absent entries are unknown, never zero.
struct ScoreTable {
  std::map<std::string, double> tactic_scores;
  std::map<std::string, double> technique_scores;
  std::map<std::string, double> technique_likelihoods;

  double tactic(const std::string& id) const;      // throws MissingScore
  double technique(const std::string& id) const;   // throws MissingScore
  double likelihood(const std::string& id) const;  // throws MissingScore
  void validate() const;                           // throws ScoreOutOfRange
};

// Weighted mean. Weights must be non-negative and sum to 1.
double aggregate_availability(const std::vector<double>& values, const std::vector<double>& weights);
double aggregate_availability(const std::vector<double>& values);  // uniform weights

struct Sophistication {
  double ta_plus = 0.0;
  double te_plus = 0.0;
  double ta_minus = 0.0;
  double te_minus = 0.0;
};

// max / min over chains of each chain's highest tactic and technique score.
Sophistication sophistication(const std::vector<USCKC>& chains, const ScoreTable& table);

// Weakest technique in the chain. Throws EmptyChain or MissingScore.
double usckc_likelihood(const USCKC& chain, const ScoreTable& table);
// Most likely chain of the set. Throws EmptyChain on an empty set.
double set_likelihood(const std::vector<USCKC>& chains, const ScoreTable& table);

enum class ConsequenceBand { superficial, temporary, non_recoverable };

std::string to_string(ConsequenceBand b);
ConsequenceBand consequence_band(double score);

enum class LinkClass {
  intra_space,   // bus to payload inside one spacecraft
  ground_wan,    // between ground components
  space_space,
  ground_ground,
  space_ground,
  space_user,
  ground_user,
  user_user,
};

std::string to_string(LinkClass c);
LinkClass parse_link_class(const std::string& s);

struct CiaTriple {
  std::string label;  // e.g. "GS-MC" for one of the ground links
  double confidentiality = 0.0;
  double integrity = 0.0;
  double availability = 0.0;
};

struct ConsequenceProfile {
  std::array<double, 6> s_bs{};   // power, attitude, comms, C&DH, propulsion, thermal
  std::array<double, 5> s_pl{};   // comms, navigation, science, sensing, national security
  std::array<double, 4> g_gs{};   // tracking, ranging, transmission, reception
  std::array<double, 3> g_mc{};   // telemetry, commanding, analysis & support
  std::array<double, 2> g_dpc{};  // mission analysis, payload processing
  std::array<double, 2> g_rt{};   // network access, software access
  std::array<double, 3> u{};      // transmission, reception, processing
  std::map<LinkClass, std::vector<CiaTriple>> links;

  void validate() const;  // throws ScoreOutOfRange
};

// Per-component availability means plus the worst value seen, with its band.
struct ConsequenceSummary {
  std::map<std::string, double> availability;  // "s_bs", "g_mc", ...
  double worst = 0.0;
  ConsequenceBand band = ConsequenceBand::superficial;
};

// Link triples are left out of the availability means. Pass a fold to include
// them; nothing folds C, I and A into one number unless asked to.
using CiaFold = std::function<double(const CiaTriple&)>;
ConsequenceSummary summarize(const ConsequenceProfile& p, const CiaFold& fold = nullptr);

// 1 - (1-C)(1-I)(1-A). Opt-in only.
double cvss_style_fold(const CiaTriple& t);

}  // namespace spacerisk
