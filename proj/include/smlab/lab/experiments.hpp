#pragma once

#include <string>
#include <vector>

#include "smlab/lab/config.hpp"
#include "smlab/lab/report.hpp"

namespace smlab::lab {

// Each experiment is a pure function of its configuration: randomness comes
// only from Rng(cfg.seed) and derived streams.
Report run_zmetric(const ExperimentConfig& cfg);
Report run_transport(const ExperimentConfig& cfg);
Report run_crossed(const ExperimentConfig& cfg);
Report run_bundle(const ExperimentConfig& cfg);
Report run_catmap(const ExperimentConfig& cfg);
Report run_cantor(const ExperimentConfig& cfg);
Report run_nctorus(const ExperimentConfig& cfg);
Report run_codes(const ExperimentConfig& cfg);

/// Every experiment name accepted by run(), "all" last.
const std::vector<std::string>& experiment_names();

}  // namespace smlab::lab
