#include "spacerisk/killchain.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <map>

#include "spacerisk/errors.hpp"

namespace spacerisk {

namespace {

// Lowercase alphanumerics only; "Defense Evasion" and "defense-evasion" compare equal.
std::string squash(const std::string& s) {
  std::string out;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

constexpr std::array<std::pair<AttackType, const char*>, 13> kAttackTypes{{
    {AttackType::high_powered_laser, "High-powered Laser"},
    {AttackType::high_powered_microwaves, "High-powered Microwaves"},
    {AttackType::rf_interference, "RF Interferences"},
    {AttackType::eavesdropping, "Eavesdropping"},
    {AttackType::spoofing, "Spoofing"},
    {AttackType::ultrawideband_weapon, "Ultrawideband Weapon"},
    {AttackType::emp_weapon, "EMP Weapon"},
    {AttackType::jamming, "Jamming"},
    {AttackType::signal_hijacking, "Signal Hijacking"},
    {AttackType::seizure_of_control, "Seizure of Control"},
    {AttackType::data_corruption_interception, "Data Corruption/Interception"},
    {AttackType::denial_of_service, "DoS"},
    {AttackType::ssa_deception, "SSA Deception"},
}};

const std::map<std::string, Activity>& tactic_table() {
  static const std::map<std::string, Activity> t = {
      {"exfiltration", Activity::objective},
      {"impact", Activity::objective},
      {"initialaccess", Activity::milestone},
      {"lateralmovement", Activity::milestone},
      {"credentialaccess", Activity::milestone},
      {"resourcedevelopment", Activity::enabling},
      {"execution", Activity::enabling},
      {"privilegeescalation", Activity::enabling},
      {"persistence", Activity::enabling},
      {"commandcontrol", Activity::enabling},
      {"commandandcontrol", Activity::enabling},
      {"defenseevasion", Activity::enabling},
      {"reconnaissance", Activity::information_discovery},
      {"discovery", Activity::information_discovery},
      {"collection", Activity::information_discovery},
  };
  return t;
}

}  // namespace

std::string to_string(Phase p) {
  switch (p) {
    case Phase::in: return "in";
    case Phase::through: return "through";
    case Phase::out: return "out";
  }
  return "?";
}

std::string to_string(Activity a) {
  switch (a) {
    case Activity::objective: return "objective";
    case Activity::milestone: return "milestone";
    case Activity::enabling: return "enabling";
    case Activity::information_discovery: return "information-discovery";
  }
  return "?";
}

std::string to_string(AttackType t) {
  for (const auto& [k, name] : kAttackTypes)
    if (k == t) return name;
  return "?";
}

Phase parse_phase(const std::string& s) {
  const auto k = squash(s);
  if (k == "in") return Phase::in;
  if (k == "through") return Phase::through;
  if (k == "out") return Phase::out;
  throw ValidationError("unknown phase '" + s + "'");
}

Activity parse_activity(const std::string& s) {
  const auto k = squash(s);
  if (k == "objective") return Activity::objective;
  if (k == "milestone") return Activity::milestone;
  if (k == "enabling") return Activity::enabling;
  if (k == "informationdiscovery") return Activity::information_discovery;
  throw ValidationError("unknown activity '" + s + "'");
}

AttackType parse_attack_type(const std::string& s) {
  const auto k = squash(s);
  for (const auto& [t, name] : kAttackTypes)
    if (squash(name) == k) return t;
  if (k == "denialofservice") return AttackType::denial_of_service;
  if (k == "rfinterference") return AttackType::rf_interference;
  throw ValidationError("unknown attack type '" + s + "'");
}

std::optional<Activity> activity_of_tactic(const std::string& tactic) {
  auto it = tactic_table().find(squash(tactic));
  if (it == tactic_table().end()) return std::nullopt;
  return it->second;
}

void validate_incidents(const std::vector<IncidentRecord>& incidents) {
  std::set<std::string> seen;
  for (const auto& r : incidents) {
    if (r.incident_id.empty()) throw ValidationError("incident with empty id");
    if (!seen.insert(r.incident_id).second)
      throw ValidationError("duplicate incident id '" + r.incident_id + "'");
  }
}

USCKC compile_usckc(const std::vector<ChainStep>& steps) {
  USCKC c;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    auto missing = [&](const char* what) {
      return IncompleteAnnotation("step " + std::to_string(i + 1) + " has no " + what);
    };
    if (!s.phase) throw missing("phase");
    if (!s.activity) throw missing("activity");
    if (s.tactic.empty()) throw missing("tactic");
    if (s.technique.empty()) throw missing("technique");
    c.phases.push_back(*s.phase);
    c.activities.push_back(*s.activity);
    c.tactics.push_back(s.tactic);
    c.techniques.push_back(s.technique);
  }
  return c;
}

SenseFilter& SenseFilter::add(SenseRule r) {
  rules_.push_back(std::move(r));
  return *this;
}

SenseFilter& SenseFilter::add(std::function<bool(const USCKC&)> pred) {
  preds_.push_back(std::move(pred));
  return *this;
}

SenseFilter& SenseFilter::add(const SenseFilter& other) {
  rules_.insert(rules_.end(), other.rules_.begin(), other.rules_.end());
  preds_.insert(preds_.end(), other.preds_.begin(), other.preds_.end());
  return *this;
}

bool SenseFilter::operator()(const USCKC& chain) const {
  for (const auto& r : rules_) {
    for (std::size_t p = 0; p < chain.techniques.size(); ++p) {
      if (chain.techniques[p] != r.technique) continue;
      if (p == 0) return false;
      if (!r.requires_any_of.empty() && !r.requires_any_of.count(chain.techniques[p - 1]))
        return false;
      if (!r.requires_tactic.empty() && squash(r.requires_tactic) != squash(chain.tactics[p - 1]))
        return false;
    }
  }
  for (const auto& pred : preds_)
    if (!pred(chain)) return false;
  return true;
}

SenseFilter register_sense_rules(const std::vector<SenseRule>& rules) {
  SenseFilter f;
  for (const auto& r : rules) {
    if (r.technique.empty()) throw ValidationError("sense rule without a technique");
    f.add(r);
  }
  return f;
}

ExtrapolationShape shape_of(const std::vector<AttackStepAnnotation>& steps) {
  ExtrapolationShape s;
  s.observed = steps.size();
  s.total = 1;
  for (const auto& st : steps) {
    if (st.observed_technique.empty())
      throw IncompleteAnnotation("observed step " + std::to_string(st.step_index) +
                                 " has no technique");
    for (const auto& c : st.extrapolated) {
      if (c.candidates.empty())
        throw EmptyCandidateSet("empty candidate set before step " + std::to_string(st.step_index));
      const std::uint64_t k = c.candidates.size();
      s.counts.push_back(k);
      if (!s.saturated && s.total > std::numeric_limits<std::uint64_t>::max() / k)
        s.saturated = true;
      if (!s.saturated) s.total *= k;
    }
  }
  s.length = s.observed + s.counts.size();
  if (s.saturated) s.total = std::numeric_limits<std::uint64_t>::max();
  return s;
}

ChainEnumerator::ChainEnumerator(const std::vector<AttackStepAnnotation>& steps, SenseFilter filter)
    : filter_(std::move(filter)) {
  shape_of(steps);  // validation only
  for (const auto& st : steps) {
    for (const auto& c : st.extrapolated)
      slots_.push_back({c.phase, c.activity, c.tactic, c.candidates});
    slots_.push_back({st.phase, st.activity, st.tactic, {st.observed_technique}});
  }
  odometer_.assign(slots_.size(), 0);
}

bool ChainEnumerator::advance() {
  for (std::size_t i = odometer_.size(); i-- > 0;) {
    if (++odometer_[i] < slots_[i].options.size()) return true;
    odometer_[i] = 0;
  }
  return false;
}

std::optional<USCKC> ChainEnumerator::next() {
  while (!done_) {
    USCKC c;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      c.phases.push_back(slots_[i].phase);
      c.activities.push_back(slots_[i].activity);
      c.tactics.push_back(slots_[i].tactic);
      c.techniques.push_back(slots_[i].options[odometer_[i]]);
    }
    ++visited_;
    if (!advance()) done_ = true;
    if (filter_(c)) return c;
    ++rejected_;
  }
  return std::nullopt;
}

ExtrapolationResult extrapolate(const std::vector<AttackStepAnnotation>& steps,
                                const SenseFilter& filter, const ExtrapolateOptions& opts) {
  const auto shape = shape_of(steps);
  if (shape.saturated || shape.total > opts.cap)
    throw CombinatorialCap("extrapolation would produce " +
                           (shape.saturated ? std::string("more than 2^64")
                                            : std::to_string(shape.total)) +
                           " chains, above the cap of " + std::to_string(opts.cap));
  ExtrapolationResult r;
  r.total = shape.total;
  ChainEnumerator en(steps, filter);
  while (auto c = en.next()) r.chains.push_back(std::move(*c));
  r.rejected = en.rejected();
  if (r.chains.empty() && r.total > 0)
    r.diagnostic = "sense filter rejected all " + std::to_string(r.total) + " candidate chains";
  return r;
}

std::uint64_t count_extrapolations(const std::vector<AttackStepAnnotation>& steps,
                                   const SenseFilter& filter, const ExtrapolateOptions& opts) {
  const auto shape = shape_of(steps);
  if (filter.permissive()) {
    if (shape.saturated) throw CombinatorialCap("chain count exceeds 2^64");
    return shape.total;
  }
  if (shape.saturated || shape.total > opts.cap)
    throw CombinatorialCap("counting under a sense filter needs a walk over " +
                           (shape.saturated ? std::string("more than 2^64")
                                            : std::to_string(shape.total)) +
                           " chains, above the cap of " + std::to_string(opts.cap));
  ChainEnumerator en(steps, filter);
  std::uint64_t n = 0;
  while (en.next()) ++n;
  return n;
}

}  // namespace spacerisk
