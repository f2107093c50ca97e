#pragma once
// JSON and CSV rendering of verification reports and trial summaries.

#include <string>
#include <vector>

#include "json.hpp"

#include "kforest/appendix_verifier.hpp"
#include "kforest/experiments.hpp"

namespace kforest::cli {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

/// Non-finite doubles become null.
Json number(double x);

Json to_json(const verify::GridReport& r, bool timing = true);
Json to_json(const experiments::TrialSummary& s, bool timing = true);

/// One header line plus one row per report.
std::string reports_csv(const std::vector<verify::GridReport>& reports, bool timing = true);
/// region, coordinate columns and value for every dumped grid point.
std::string dump_csv(const std::vector<verify::GridReport>& reports);
/// One row per trial.
std::string trials_csv(const experiments::TrialSummary& s);
/// Two-column key,value table of a flat JSON object (nested values are
/// written in their JSON form).
std::string key_value_csv(const Json& flat);

}  // namespace kforest::cli
