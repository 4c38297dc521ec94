#pragma once

#include "spacerisk/errors.hpp"
#include "spacerisk/graph.hpp"
#include "spacerisk/hardening.hpp"
#include "spacerisk/killchain.hpp"
#include "spacerisk/metrics.hpp"
#include "spacerisk/nrs.hpp"
#include "spacerisk/report.hpp"
#include "spacerisk/risk.hpp"
#include "spacerisk/scenario_io.hpp"
#include "spacerisk/threat.hpp"
