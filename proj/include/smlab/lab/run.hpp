#pragma once

#include <string>

#include "smlab/lab/config.hpp"
#include "smlab/lab/report.hpp"

namespace smlab::lab {

/// Runs one experiment (or "all", which merges every experiment under its own
/// prefix). Throws UnknownExperiment for other names; module errors are
/// rethrown with the experiment name prepended.
Report run(const std::string& experiment, const ExperimentConfig& cfg);

}  // namespace smlab::lab
