#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spacerisk/hardening.hpp"
#include "spacerisk/metrics.hpp"
#include "spacerisk/nrs.hpp"
#include "spacerisk/risk.hpp"

namespace spacerisk {

enum class Format { text, csv };

Format parse_format(const std::string& s);

// Echoed at the top of every text report.
struct RunInfo {
  std::string command;
  std::map<std::string, std::string> settings;
};

// "0.03371125" style full precision and "0.03" style summary.
std::string full_precision(double x);
std::string two_decimals(double x);

// Text is JSON; CSV has columns kind,id,likelihood,summary. Ids ascend.
// Throws Error if a likelihood falls outside [0,1].
std::string emit_report(const RiskState& state, Format format, const RunInfo& info = {});

// Text is JSON; CSV lists techniques with their status and chosen control.
std::string emit_report(const HardeningPlan& plan, Format format, const RunInfo& info = {});

// Text is JSON; CSV has columns technique,criticality,impact,likelihood,score,band,tolerable,controls.
std::string emit_report(const NrsResult& result, Format format, const RunInfo& info = {});

struct MetricsRow {
  std::string incident_id;
  std::size_t chains = 0;
  std::optional<double> likelihood;  // L({USCKC})
  std::optional<Sophistication> sophistication;
  std::string note;  // why a column is empty
};

// CSV: incident_id,chains,likelihood,likelihood_2dp,ta_plus,te_plus,ta_minus,te_minus,note
std::string emit_metrics_csv(const std::vector<MetricsRow>& rows);

}  // namespace spacerisk
