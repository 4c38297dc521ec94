#include "spacerisk/nrs.hpp"

#include <algorithm>

#include "spacerisk/errors.hpp"

namespace spacerisk {

std::string to_string(Criticality c) {
  switch (c) {
    case Criticality::low: return "low";
    case Criticality::medium: return "medium";
    case Criticality::high: return "high";
  }
  return "?";
}

std::string to_string(RiskBand b) {
  switch (b) {
    case RiskBand::low: return "low";
    case RiskBand::medium: return "medium";
    case RiskBand::high: return "high";
  }
  return "?";
}

Criticality parse_criticality(const std::string& s) {
  if (s == "low") return Criticality::low;
  if (s == "medium") return Criticality::medium;
  if (s == "high") return Criticality::high;
  throw ValidationError("unknown criticality '" + s + "'");
}

RiskBand parse_band(const std::string& s) {
  if (s == "low") return RiskBand::low;
  if (s == "medium") return RiskBand::medium;
  if (s == "high") return RiskBand::high;
  throw ValidationError("unknown risk band '" + s + "'");
}

RiskMatrix RiskMatrix::standard() {
  RiskMatrix m;
  m.cells = {{
      {1, 3, 5, 9, 12},     // likelihood 1
      {2, 8, 11, 14, 17},   // likelihood 2
      {4, 10, 15, 19, 21},  // likelihood 3
      {6, 13, 18, 22, 24},  // likelihood 4
      {7, 16, 20, 23, 25},  // likelihood 5
  }};
  return m;
}

int RiskMatrix::lookup(int impact, int likelihood) const {
  if (impact < 1 || impact > 5 || likelihood < 1 || likelihood > 5)
    throw OutOfRange("impact " + std::to_string(impact) + ", likelihood " +
                     std::to_string(likelihood) + " outside 1..5");
  return cells[likelihood - 1][impact - 1];
}

void RiskMatrix::validate() const {
  for (int l = 0; l < 5; ++l)
    for (int i = 0; i < 5; ++i) {
      const int v = cells[l][i];
      if (v < 1 || v > 25) throw OutOfRange("matrix cell " + std::to_string(v) + " outside 1..25");
      if (i > 0 && v < cells[l][i - 1]) throw OutOfRange("matrix decreases along impact");
      if (l > 0 && v < cells[l - 1][i]) throw OutOfRange("matrix decreases along likelihood");
    }
}

int matrix_lookup(int impact, int likelihood) {
  static const RiskMatrix m = RiskMatrix::standard();
  return m.lookup(impact, likelihood);
}

RiskBand categorize(int score) {
  if (score < 1 || score > 25) throw OutOfRange("score " + std::to_string(score) + " outside 1..25");
  if (score <= 10) return RiskBand::low;
  if (score <= 19) return RiskBand::medium;
  return RiskBand::high;
}

std::set<std::string> NrsResult::intolerable() const {
  std::set<std::string> out;
  for (const auto& a : assessments)
    if (!a.tolerable) out.insert(a.technique);
  return out;
}

namespace {

void choose(NrsAssessment& a, const CountermeasureCatalog& catalog) {
  auto it = catalog.by_technique.find(a.technique);
  if (it == catalog.by_technique.end() || it->second.empty())
    throw MissingCatalogEntry("no countermeasures listed for '" + a.technique + "'");
  const auto& cms = it->second;
  for (const auto& c : cms) a.candidate_countermeasures.push_back(c.id);

  auto find_cm = [&](const std::string& id) -> const Countermeasure& {
    auto c = std::find_if(cms.begin(), cms.end(), [&](const auto& x) { return x.id == id; });
    if (c == cms.end())
      throw MissingCatalogEntry("countermeasure '" + id + "' is not listed for '" + a.technique + "'");
    return *c;
  };
  // Countermeasures may arrive without a control list; they then add none.
  auto add_first_control = [&](const Countermeasure& c) {
    if (!c.controls.empty()) a.selected_controls.push_back(c.controls.front());
  };

  auto sel = catalog.selections.find(a.technique);
  if (sel == catalog.selections.end()) {
    a.selected_countermeasures = {cms.front().id};
    add_first_control(cms.front());
    return;
  }
  for (const auto& id : sel->second.countermeasures) {
    find_cm(id);
    a.selected_countermeasures.push_back(id);
  }
  if (!sel->second.controls.empty()) {
    for (const auto& ctl : sel->second.controls) {
      bool listed = false;
      for (const auto& id : a.selected_countermeasures) {
        const auto& cl = find_cm(id).controls;
        listed = listed || std::find(cl.begin(), cl.end(), ctl) != cl.end();
      }
      if (!listed)
        throw MissingCatalogEntry("control '" + ctl + "' is not offered by the countermeasures picked for '" +
                                  a.technique + "'");
      a.selected_controls.push_back(ctl);
    }
  } else {
    for (const auto& id : a.selected_countermeasures) add_first_control(find_cm(id));
  }
}

}  // namespace

NrsResult assess(const std::vector<ApplicableTechnique>& applicable, const BaseScoreTable& base,
                 RiskBand tau, const CountermeasureCatalog& catalog, const RiskMatrix& matrix) {
  matrix.validate();
  NrsResult r;
  r.tau = tau;
  std::set<std::string> seen;
  for (const auto& t : applicable) {
    if (!seen.insert(t.technique).second)
      throw ValidationError("technique '" + t.technique + "' listed twice");
    NrsAssessment a;
    a.technique = t.technique;
    a.criticality = t.criticality;
    if (auto it = base.find({t.technique, t.criticality}); it != base.end()) a.base = it->second;
    if (t.tailored) {
      a.tailored = *t.tailored;
    } else if (a.base) {
      a.tailored = *a.base;
    } else {
      throw MissingCatalogEntry("no base score for '" + t.technique + "' at " +
                                to_string(t.criticality) + " criticality and no tailored score");
    }
    a.score = matrix.lookup(a.tailored.impact, a.tailored.likelihood);
    a.band = categorize(a.score);
    a.tolerable = a.band <= tau;
    if (!a.tolerable) {
      choose(a, catalog);
      r.controls.insert(a.selected_controls.begin(), a.selected_controls.end());
    }
    r.assessments.push_back(std::move(a));
  }
  std::sort(r.assessments.begin(), r.assessments.end(),
            [](const auto& x, const auto& y) { return x.technique < y.technique; });
  return r;
}

}  // namespace spacerisk
