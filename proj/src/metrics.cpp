#include "spacerisk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spacerisk/errors.hpp"

namespace spacerisk {

namespace {

double lookup(const std::map<std::string, double>& m, const std::string& id, const char* what) {
  auto it = m.find(id);
  if (it == m.end()) throw MissingScore(std::string("no ") + what + " for '" + id + "'");
  return it->second;
}

bool unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

void check_unit(double x, const std::string& what) {
  if (!unit(x)) throw ScoreOutOfRange(what + " = " + std::to_string(x) + " outside [0,1]");
}

template <std::size_t N>
void check_all(const std::array<double, N>& a, const std::string& what) {
  for (std::size_t i = 0; i < N; ++i) check_unit(a[i], what + "[" + std::to_string(i + 1) + "]");
}

template <std::size_t N>
std::vector<double> vec(const std::array<double, N>& a) {
  return {a.begin(), a.end()};
}

}  // namespace

double ScoreTable::tactic(const std::string& id) const {
  return lookup(tactic_scores, id, "tactic score");
}
double ScoreTable::technique(const std::string& id) const {
  return lookup(technique_scores, id, "technique score");
}
double ScoreTable::likelihood(const std::string& id) const {
  return lookup(technique_likelihoods, id, "technique likelihood");
}

void ScoreTable::validate() const {
  for (const auto& [k, v] : tactic_scores) check_unit(v, "tactic score " + k);
  for (const auto& [k, v] : technique_scores) check_unit(v, "technique score " + k);
  for (const auto& [k, v] : technique_likelihoods) check_unit(v, "technique likelihood " + k);
}

double aggregate_availability(const std::vector<double>& values, const std::vector<double>& weights) {
  if (values.size() != weights.size())
    throw ValidationError("aggregate_availability: " + std::to_string(values.size()) +
                          " values but " + std::to_string(weights.size()) + " weights");
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("weights sum to " + std::to_string(sum));
  for (double v : values) check_unit(v, "availability");
  return std::inner_product(values.begin(), values.end(), weights.begin(), 0.0);
}

double aggregate_availability(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return aggregate_availability(values,
                                std::vector<double>(values.size(), 1.0 / values.size()));
}

Sophistication sophistication(const std::vector<USCKC>& chains, const ScoreTable& table) {
  if (chains.empty()) throw EmptyChain("sophistication of an empty chain set");
  Sophistication s;
  bool first = true;
  for (const auto& c : chains) {
    if (c.empty()) throw EmptyChain("sophistication of an empty chain");
    double ta = 0.0, te = 0.0;
    for (const auto& t : c.tactics) ta = std::max(ta, table.tactic(t));
    for (const auto& t : c.techniques) te = std::max(te, table.technique(t));
    if (first) {
      s = {ta, te, ta, te};
      first = false;
    } else {
      s.ta_plus = std::max(s.ta_plus, ta);
      s.te_plus = std::max(s.te_plus, te);
      s.ta_minus = std::min(s.ta_minus, ta);
      s.te_minus = std::min(s.te_minus, te);
    }
  }
  return s;
}

double usckc_likelihood(const USCKC& chain, const ScoreTable& table) {
  if (chain.empty()) throw EmptyChain("likelihood of an empty chain");
  double l = 1.0;
  for (const auto& t : chain.techniques) l = std::min(l, table.likelihood(t));
  return l;
}

double set_likelihood(const std::vector<USCKC>& chains, const ScoreTable& table) {
  if (chains.empty()) throw EmptyChain("likelihood of an empty chain set");
  double l = 0.0;
  for (const auto& c : chains) l = std::max(l, usckc_likelihood(c, table));
  return l;
}

std::string to_string(ConsequenceBand b) {
  switch (b) {
    case ConsequenceBand::superficial: return "superficial";
    case ConsequenceBand::temporary: return "temporary";
    case ConsequenceBand::non_recoverable: return "non-recoverable";
  }
  return "?";
}

ConsequenceBand consequence_band(double score) {
  check_unit(score, "consequence");
  if (score <= 0.3) return ConsequenceBand::superficial;
  if (score < 0.8) return ConsequenceBand::temporary;
  return ConsequenceBand::non_recoverable;
}

namespace {
constexpr std::array<std::pair<LinkClass, const char*>, 8> kLinkClasses{{
    {LinkClass::intra_space, "S"},
    {LinkClass::ground_wan, "G"},
    {LinkClass::space_space, "SS"},
    {LinkClass::ground_ground, "GG"},
    {LinkClass::space_ground, "SG"},
    {LinkClass::space_user, "SU"},
    {LinkClass::ground_user, "GU"},
    {LinkClass::user_user, "UU"},
}};
}  // namespace

std::string to_string(LinkClass c) {
  for (const auto& [k, n] : kLinkClasses)
    if (k == c) return n;
  return "?";
}

LinkClass parse_link_class(const std::string& s) {
  for (const auto& [k, n] : kLinkClasses)
    if (s == n) return k;
  throw ValidationError("unknown link class '" + s + "'");
}

void ConsequenceProfile::validate() const {
  check_all(s_bs, "s_bs");
  check_all(s_pl, "s_pl");
  check_all(g_gs, "g_gs");
  check_all(g_mc, "g_mc");
  check_all(g_dpc, "g_dpc");
  check_all(g_rt, "g_rt");
  check_all(u, "u");
  for (const auto& [cls, triples] : links)
    for (const auto& t : triples) {
      const std::string w = "link " + to_string(cls) + " " + t.label;
      check_unit(t.confidentiality, w + " C");
      check_unit(t.integrity, w + " I");
      check_unit(t.availability, w + " A");
    }
}

ConsequenceSummary summarize(const ConsequenceProfile& p, const CiaFold& fold) {
  p.validate();
  ConsequenceSummary s;
  auto put = [&](const char* k, std::vector<double> v) {
    s.availability[k] = aggregate_availability(v);
    for (double x : v) s.worst = std::max(s.worst, x);
  };
  put("s_bs", vec(p.s_bs));
  put("s_pl", vec(p.s_pl));
  put("g_gs", vec(p.g_gs));
  put("g_mc", vec(p.g_mc));
  put("g_dpc", vec(p.g_dpc));
  put("g_rt", vec(p.g_rt));
  put("u", vec(p.u));
  if (fold) {
    for (const auto& [cls, triples] : p.links) {
      std::vector<double> v;
      for (const auto& t : triples) v.push_back(fold(t));
      if (!v.empty()) put(("l_" + to_string(cls)).c_str(), v);
    }
  } else {
    // Availability alone is comparable with the other segments.
    for (const auto& [_, triples] : p.links)
      for (const auto& t : triples) s.worst = std::max(s.worst, t.availability);
  }
  s.band = consequence_band(s.worst);
  return s;
}

double cvss_style_fold(const CiaTriple& t) {
  return 1.0 - (1.0 - t.confidentiality) * (1.0 - t.integrity) * (1.0 - t.availability);
}

}  // namespace spacerisk
