#pragma once

#include "solitonlab/config.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/report.hpp"

namespace solitonlab {

/// A module error raised while running a scenario; the original is nested.
class ScenarioError : public Error {
  using Error::Error;
};

/// Run the configured pipeline, write its data files and the JSON/text report
/// into cfg.output.dir (created if missing) and return the report. Module errors
/// surface as ScenarioError naming the scenario, with the original nested.
RunReport run_scenario(const ScenarioConfig& cfg);

}  // namespace solitonlab
