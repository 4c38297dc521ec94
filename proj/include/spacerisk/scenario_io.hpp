#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spacerisk/graph.hpp"
#include "spacerisk/hardening.hpp"
#include "spacerisk/killchain.hpp"
#include "spacerisk/metrics.hpp"
#include "spacerisk/nrs.hpp"
#include "spacerisk/threat.hpp"

namespace spacerisk {

struct Scenario {
  std::string name;
  std::string version;
  std::vector<std::string> notes;
  InfrastructureGraph graph;
  std::vector<Mission> missions;
  CapabilitySet caps;
  SusceptibilityMap sus;
};

// Every loader throws ParseError for malformed text and CrossRefError (or a more
// specific ValidationError) for content that does not hang together.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);
// Canonical form: ids sorted, flows in file order, two-space indent.
std::string dump_scenario(const Scenario& s);

ControlCatalog parse_control_catalog(const std::string& text);
ControlCatalog load_control_catalog(const std::filesystem::path& path);

ScoreTable parse_score_table(const std::string& text);
ScoreTable load_score_table(const std::filesystem::path& path);

IncidentAnnotation parse_annotation(const std::string& text);
IncidentAnnotation load_annotation(const std::filesystem::path& path);

std::vector<SenseRule> parse_sense_rules(const std::string& text);
std::vector<SenseRule> load_sense_rules(const std::filesystem::path& path);

struct NrsScenario {
  std::string name;
  std::vector<ApplicableTechnique> applicable;
  BaseScoreTable base;
  CountermeasureCatalog catalog;
  std::optional<RiskMatrix> matrix;
};

NrsScenario parse_nrs_scenario(const std::string& text);
NrsScenario load_nrs_scenario(const std::filesystem::path& path);

// Five rows of five, likelihood 5 first; bare or under a "matrix" key.
RiskMatrix parse_risk_matrix(const std::string& text);
RiskMatrix load_risk_matrix(const std::filesystem::path& path);

struct ChainSet {
  std::string incident_id;
  std::vector<USCKC> chains;
};

// Accepts one chain set or a list of them (the killchain command writes the former).
std::vector<ChainSet> parse_chain_sets(const std::string& text);
std::vector<ChainSet> load_chain_sets(const std::filesystem::path& path);
std::string dump_chain_set(const ChainSet& set, std::uint64_t total_before_filter);

ConsequenceProfile parse_consequence(const std::string& text);
ConsequenceProfile load_consequence(const std::filesystem::path& path);

std::vector<IncidentRecord> parse_incidents(const std::string& text);

std::string read_text(const std::filesystem::path& path);  // throws ParseError

}  // namespace spacerisk
