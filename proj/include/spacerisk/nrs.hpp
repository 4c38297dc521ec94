#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace spacerisk {

enum class Criticality { low, medium, high };
enum class RiskBand { low, medium, high };

std::string to_string(Criticality c);
std::string to_string(RiskBand b);
Criticality parse_criticality(const std::string& s);
RiskBand parse_band(const std::string& s);

// Scores are looked up, never computed from impact and likelihood.
struct RiskMatrix {
  // cells[likelihood - 1][impact - 1]
  std::array<std::array<int, 5>, 5> cells{};

  static RiskMatrix standard();
  int lookup(int impact, int likelihood) const;  // throws OutOfRange
  void validate() const;  // range 1..25 and non-decreasing along both axes
};

int matrix_lookup(int impact, int likelihood);  // standard grid
RiskBand categorize(int score);                 // throws OutOfRange outside 1..25

struct ImpactLikelihood {
  int impact = 1;
  int likelihood = 1;
  bool operator==(const ImpactLikelihood&) const = default;
};

struct ApplicableTechnique {
  std::string technique;
  Criticality criticality = Criticality::medium;
  std::optional<ImpactLikelihood> tailored;  // falls back to the base score when absent
};

// Opaque base scores keyed by (technique, criticality).
using BaseScoreTable = std::map<std::pair<std::string, Criticality>, ImpactLikelihood>;

struct Countermeasure {
  std::string id;
  std::string name;
  std::vector<std::string> controls;
};

// An analyst's explicit pick; overrides the first-listed default.
struct Selection {
  std::vector<std::string> countermeasures;
  std::vector<std::string> controls;  // empty: first control of each picked countermeasure
};

struct CountermeasureCatalog {
  std::map<std::string, std::vector<Countermeasure>> by_technique;
  std::map<std::string, Selection> selections;
};

struct NrsAssessment {
  std::string technique;
  Criticality criticality = Criticality::medium;
  std::optional<ImpactLikelihood> base;
  ImpactLikelihood tailored;
  int score = 1;
  RiskBand band = RiskBand::low;
  bool tolerable = true;
  std::vector<std::string> candidate_countermeasures;
  std::vector<std::string> selected_countermeasures;
  std::vector<std::string> selected_controls;
};

struct NrsResult {
  RiskBand tau = RiskBand::medium;
  std::vector<NrsAssessment> assessments;  // sorted by technique id
  std::set<std::string> controls;          // union over intolerable techniques
  std::set<std::string> intolerable() const;
};

// A technique is tolerable when its band is at or below tau.
NrsResult assess(const std::vector<ApplicableTechnique>& applicable, const BaseScoreTable& base,
                 RiskBand tau, const CountermeasureCatalog& catalog,
                 const RiskMatrix& matrix = RiskMatrix::standard());

}  // namespace spacerisk
