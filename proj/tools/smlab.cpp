// smlab <experiment> [--config FILE] [--seed U64] [--out DIR] [--key value ...]
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or config error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "smlab/error.hpp"
#include "smlab/lab/config.hpp"
#include "smlab/lab/experiments.hpp"
#include "smlab/lab/report.hpp"
#include "smlab/lab/run.hpp"

namespace {

std::string names_list() {
  std::string s;
  for (const auto& n : smlab::lab::experiment_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

std::string keys_list() {
  std::string s;
  for (const auto& k : smlab::lab::known_keys())
    if (k.name != "seed" && k.name != "out") s += "  --" + k.name + "  " + k.help + "\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for spectral triples, transport and crossed products"};
  app.footer("Experiments: " + names_list() + "\nParameters:\n" + keys_list());
  app.allow_extras();

  std::string experiment, config_path, seed, out;
  app.add_option("experiment", experiment, "experiment to run")->required();
  app.add_option("--config", config_path, "flat key = value configuration file");
  app.add_option("--seed", seed, "corpus seed (unsigned 64-bit)");
  app.add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  smlab::lab::ExperimentConfig cfg;
  smlab::lab::Report report;
  double seconds = 0.0;
  try {
    cfg.experiment = experiment;
    if (!config_path.empty()) smlab::lab::apply_config_file(cfg, config_path);
    if (!seed.empty()) cfg.set("seed", seed);
    if (!out.empty()) cfg.set("out", out);

    const auto extras = app.remaining();
    for (size_t i = 0; i < extras.size(); ++i) {
      std::string key = extras[i];
      if (key.rfind("--", 0) != 0) smlab::fail(smlab::ErrorCode::ConfigInvalid, "unexpected argument '" + key + "'");
      key.erase(0, 2);
      std::string value;
      if (const auto eq = key.find('='); eq != std::string::npos) {
        value = key.substr(eq + 1);
        key.resize(eq);
      } else {
        if (i + 1 >= extras.size()) smlab::fail(smlab::ErrorCode::ConfigInvalid, "--" + key + " needs a value");
        value = extras[++i];
      }
      cfg.set(key, value);
    }

    const auto t0 = std::chrono::steady_clock::now();
    report = smlab::lab::run(experiment, cfg);
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    smlab::lab::write_outputs(report, cfg.out_dir);
  } catch (const smlab::LabError& e) {
    std::cerr << "smlab: " << e.what() << "\n";
    return 2;
  }

  // Wall-clock time varies between runs, so it lives beside report.json.
  {
    std::ofstream t(std::filesystem::path(cfg.out_dir) / "timing.json");
    t << nlohmann::json{{"experiment", experiment}, {"seconds", seconds}}.dump(2) << "\n";
  }

  for (const auto& c : report.checks)
    if (!c.pass)
      std::cout << "FAIL " << c.name << ": value " << c.value << ", expected " << c.expected << " (" << c.relation
                << ", tol " << c.tolerance << ")\n";
  std::cout << experiment << ": " << report.checks.size() - report.failures() << "/" << report.checks.size()
            << " checks passed, report in " << cfg.out_dir << "/report.json\n";
  return report.pass() ? 0 : 1;
}
