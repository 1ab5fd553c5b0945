#include "smlab/lab/run.hpp"

#include <functional>
#include <map>

#include "smlab/error.hpp"
#include "smlab/lab/experiments.hpp"

namespace smlab::lab {

namespace {

using Runner = std::function<Report(const ExperimentConfig&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      {"zmetric", run_zmetric}, {"transport", run_transport}, {"crossed", run_crossed},
      {"bundle", run_bundle},   {"catmap", run_catmap},       {"cantor", run_cantor},
      {"nctorus", run_nctorus}, {"codes", run_codes},
  };
  return table;
}

Report run_one(const std::string& name, const Runner& fn, const ExperimentConfig& cfg) {
  try {
    Report r = fn(cfg);
    r.experiment = name;
    return r;
  } catch (const LabError& e) {
    throw LabError(e.code(), "experiment " + name + ": " + e.what());
  }
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"zmetric", "transport", "crossed", "bundle", "catmap",
                                                 "cantor",  "nctorus",   "codes",   "all"};
  return names;
}

Report run(const std::string& experiment, const ExperimentConfig& cfg) {
  Report out;
  if (experiment == "all") {
    for (const auto& name : experiment_names()) {
      if (name == "all") continue;
      out.merge(run_one(name, runners().at(name), cfg), name);
    }
  } else {
    const auto it = runners().find(experiment);
    if (it == runners().end()) fail(ErrorCode::UnknownExperiment, "unknown experiment '" + experiment + "'");
    out = run_one(experiment, it->second, cfg);
  }
  out.experiment = experiment;
  ExperimentConfig echo = cfg;
  echo.experiment = experiment;
  out.config = echo.echo();
  return out;
}

}  // namespace smlab::lab
