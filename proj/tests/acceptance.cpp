// Runs `smlab all --seed 1` twice, grades the acceptance criteria from the
// first report, and compares the two output directories byte for byte.
//
// usage: acceptance <path-to-smlab> <scratch-dir>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> patterns;  // regexes over check names
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "path-metric recovery", {"zmetric/path_metric_recovery/.*"}},
      {2, "Kantorovich-Rubinstein duality", {"transport/kr_duality/.*"}},
      {3, "crossed-product spectrum",
       {"crossed/[a-z]+/dhat_spectrum_rel_error", "crossed/[a-z]+/shift_identity_defect",
        "crossed/[a-z]+/dual_unitary_invariance"}},
      {4, "approximation and Fejer bounds",
       {"crossed/approx_bounds/.*", "crossed/fejer/mean_error", "crossed/fejer/tail_excess"}},
      {5, "Lipschitz-ball dichotomies", {"zmetric/ball/.*"}},
      {6, "metric bundle identity", {"bundle/(qubit|triangle|square)/.*"}},
      {7, "hyperbolic growth", {"catmap/.*", "nctorus/D[0-9]+/growth_ratio_rel", "nctorus/D[0-9]+/ratio_at_k[0-9]+"}},
      {8, "Cantor recovery", {"cantor/depth[0-9]+/connes_sup_mismatches"}},
      {9, "SPD geometry", {"bundle/spd/.*"}},
      {10, "codes", {"codes/.*"}},
  };
  return list;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& exe, const fs::path& out) {
  fs::remove_all(out);
  const std::string cmd = "\"" + exe + "\" all --seed 1 --out \"" + out.string() + "\" > \"" + out.string() + ".log\" 2>&1";
  return std::system(cmd.c_str());
}

// Every file except timing.json, which records wall-clock time.
std::vector<std::string> output_files(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().filename() != "timing.json") names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <smlab> <scratch-dir>\n", argv[0]);
    return 2;
  }
  const std::string exe = argv[1];
  const fs::path scratch = argv[2];
  fs::create_directories(scratch);
  const fs::path out1 = scratch / "run1", out2 = scratch / "run2";

  const int rc1 = run_cli(exe, out1);
  if (!fs::exists(out1 / "report.json")) {
    std::printf("FAIL  smlab did not produce a report (exit %d)\n", rc1);
    return 1;
  }
  const auto report = nlohmann::json::parse(slurp(out1 / "report.json"));

  int failed = 0;
  for (const auto& c : criteria()) {
    std::vector<std::regex> res;
    for (const auto& p : c.patterns) res.emplace_back(p);
    int matched = 0;
    std::vector<std::string> bad;
    for (const auto& chk : report.at("checks")) {
      const std::string name = chk.at("name");
      bool hit = false;
      for (const auto& re : res) hit = hit || std::regex_match(name, re);
      if (!hit) continue;
      ++matched;
      if (!chk.at("pass").get<bool>()) bad.push_back(name);
    }
    const bool ok = matched > 0 && bad.empty();
    failed += ok ? 0 : 1;
    std::printf("%s  %2d %s (%d checks", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), matched);
    if (!bad.empty()) std::printf(", failing: %s%s", bad.front().c_str(), bad.size() > 1 ? " ..." : "");
    std::printf(")\n");
  }

  // 11: a second run must reproduce every output byte for byte.
  run_cli(exe, out2);
  bool same = fs::exists(out2 / "report.json") && output_files(out1) == output_files(out2);
  std::string differing;
  if (same)
    for (const auto& f : output_files(out1))
      if (slurp(out1 / f) != slurp(out2 / f)) {
        same = false;
        differing = f;
        break;
      }
  failed += same ? 0 : 1;
  std::printf("%s  11 determinism (%zu files compared%s%s)\n", same ? "PASS" : "FAIL", output_files(out1).size(),
              differing.empty() ? "" : ", differs: ", differing.c_str());

  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
