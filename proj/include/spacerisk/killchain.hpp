#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace spacerisk {

enum class Phase { in, through, out };
enum class Activity { objective, milestone, enabling, information_discovery };

enum class AttackType {
  high_powered_laser,
  high_powered_microwaves,
  rf_interference,
  eavesdropping,
  spoofing,
  ultrawideband_weapon,
  emp_weapon,
  jamming,
  signal_hijacking,
  seizure_of_control,
  data_corruption_interception,
  denial_of_service,
  ssa_deception,
};

std::string to_string(Phase p);
std::string to_string(Activity a);
std::string to_string(AttackType t);
Phase parse_phase(const std::string& s);
Activity parse_activity(const std::string& s);
AttackType parse_attack_type(const std::string& s);

// Activity class a tactic belongs to; nullopt for tactics outside the taxonomy.
std::optional<Activity> activity_of_tactic(const std::string& tactic);

struct IncidentRecord {
  std::string incident_id;
  AttackType attack_type = AttackType::denial_of_service;
  std::string date;
  std::string locations;
  std::string description;
  std::optional<std::string> attacker_identity;
  std::optional<std::string> victim_identity;
  std::vector<std::string> sources;
};

// Throws ValidationError on an empty id or a repeated id.
void validate_incidents(const std::vector<IncidentRecord>& incidents);

// One fully specified step. Missing parts make compile_usckc throw.
struct ChainStep {
  std::optional<Phase> phase;
  std::optional<Activity> activity;
  std::string tactic;
  std::string technique;
};

struct USCKC {
  std::vector<Phase> phases;
  std::vector<Activity> activities;
  std::vector<std::string> tactics;
  std::vector<std::string> techniques;

  std::size_t length() const { return techniques.size(); }
  bool empty() const { return techniques.empty(); }
  bool operator==(const USCKC&) const = default;
};

// Throws IncompleteAnnotation naming the step.
USCKC compile_usckc(const std::vector<ChainStep>& steps);

struct CandidateSet {
  Phase phase = Phase::in;
  Activity activity = Activity::enabling;
  std::string tactic;
  std::vector<std::string> candidates;
};

// Observed step i, preceded by the extrapolated steps listed in chain order.
struct AttackStepAnnotation {
  std::size_t step_index = 0;
  Phase phase = Phase::in;
  Activity activity = Activity::enabling;
  std::string tactic;
  std::string observed_technique;
  std::vector<CandidateSet> extrapolated;
};

struct IncidentAnnotation {
  std::string incident_id;
  std::vector<AttackStepAnnotation> steps;
};

// "technique at position p needs a predecessor at p-1 that matches".
// Empty requirement sets are ignored; both present means both must hold.
struct SenseRule {
  std::string technique;
  std::set<std::string> requires_any_of;
  std::string requires_tactic;
};

class SenseFilter {
 public:
  SenseFilter() = default;

  SenseFilter& add(SenseRule r);
  SenseFilter& add(std::function<bool(const USCKC&)> pred);
  SenseFilter& add(const SenseFilter& other);

  bool permissive() const { return rules_.empty() && preds_.empty(); }
  bool operator()(const USCKC& chain) const;
  const std::vector<SenseRule>& rules() const { return rules_; }

 private:
  std::vector<SenseRule> rules_;
  std::vector<std::function<bool(const USCKC&)>> preds_;
};

SenseFilter register_sense_rules(const std::vector<SenseRule>& rules);

struct ExtrapolationShape {
  std::size_t observed = 0;            // n'
  std::size_t length = 0;              // s
  std::vector<std::size_t> counts;     // k per extrapolated position, chain order
  std::uint64_t total = 0;             // product of counts, before filtering
  bool saturated = false;              // product overflowed 64 bits
};

// Throws EmptyCandidateSet.
ExtrapolationShape shape_of(const std::vector<AttackStepAnnotation>& steps);

// Lazy walk over the Cartesian product, odometer order with the last position
// varying fastest. Chains rejected by the filter are skipped.
class ChainEnumerator {
 public:
  ChainEnumerator(const std::vector<AttackStepAnnotation>& steps, SenseFilter filter = {});

  std::optional<USCKC> next();
  std::uint64_t visited() const { return visited_; }
  std::uint64_t rejected() const { return rejected_; }

 private:
  bool advance();

  struct Slot {
    Phase phase;
    Activity activity;
    std::string tactic;
    std::vector<std::string> options;
  };
  std::vector<Slot> slots_;
  std::vector<std::size_t> odometer_;
  SenseFilter filter_;
  bool done_ = false;
  std::uint64_t visited_ = 0;
  std::uint64_t rejected_ = 0;
};

struct ExtrapolateOptions {
  std::uint64_t cap = 1'000'000;
};

struct ExtrapolationResult {
  std::vector<USCKC> chains;
  std::uint64_t total = 0;     // before filtering
  std::uint64_t rejected = 0;  // dropped by the filter
  std::string diagnostic;      // set when every chain was rejected
};

// Materialises every surviving chain. Throws CombinatorialCap when the product
// exceeds the cap, EmptyCandidateSet on an empty candidate list.
ExtrapolationResult extrapolate(const std::vector<AttackStepAnnotation>& steps,
                                const SenseFilter& filter = {}, const ExtrapolateOptions& opts = {});

// Number of surviving chains. A permissive filter answers from the shape alone,
// so the cap only applies when the filter forces a walk.
std::uint64_t count_extrapolations(const std::vector<AttackStepAnnotation>& steps,
                                   const SenseFilter& filter = {},
                                   const ExtrapolateOptions& opts = {});

}  // namespace spacerisk
