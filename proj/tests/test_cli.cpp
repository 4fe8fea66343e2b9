#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = PLANESET_SCENARIO_DIR;

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("planeset_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + PLANESET_CLI_PATH + "\" " + args + " 2>/dev/null >/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_scenario(const std::string& sub, const fs::path& config, const fs::path& out, const std::string& extra = "") {
  return run_cli(sub + " --config \"" + config.string() + "\" --out \"" + out.string() + "\" " + extra);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& body) {
  const fs::path p = dir / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Cli, EveryScenarioRunsAndWritesItsFiles) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"generate_reuleaux", {"curve.txt", "curve.svg"}},
      {"scan_circle", {"witnesses.csv", "scan_summary.json", "scan.svg"}},
      {"scan_arc", {"witnesses.csv", "scan_summary.json", "scan.svg"}},
      {"scan_triangle", {"witnesses.csv", "scan_summary.json", "scan.svg"}},
      {"classify_ellipse", {"labels.csv", "classify.svg"}},
      {"pack_seed42", {"packing.json", "packing.svg"}},
      {"probe_seed42", {"probes.csv", "probe.svg"}},
      {"search_ellipse", {"search.json", "search.svg"}},
      {"search_circle", {"search.json", "search.svg"}},
      {"render_squares", {"render.svg"}},
  };
  for (const auto& [name, files] : cases) {
    const fs::path config = kScenarios / (name + ".json");
    const std::string kind = nlohmann::json::parse(slurp(config)).at("kind");
    const fs::path out = fresh_dir(name);
    ASSERT_EQ(run_scenario(kind, config, out), 0) << name;
    for (const auto& f : files) {
      EXPECT_TRUE(fs::exists(out / f)) << name << ": " << f;
      EXPECT_GT(fs::file_size(out / f), 0u) << name << ": " << f;
    }
  }
}

TEST(Cli, VacuousScansReportNoViolations) {
  for (const char* name : {"scan_arc", "scan_triangle", "scan_circle"}) {
    const fs::path out = fresh_dir(std::string("vacuous_") + name);
    ASSERT_EQ(run_scenario("scan", kScenarios / (std::string(name) + ".json"), out), 0);
    const auto summary = nlohmann::json::parse(slurp(out / "scan_summary.json"));
    EXPECT_EQ(summary.at("violation_count"), 0) << name;
    EXPECT_EQ(slurp(out / "witnesses.csv"), "ax,ay,bx,by,cx,cy,sx,sy,fourth_distance,diagonal,short,long,aspect\n");
  }
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (const auto& [kind, name, file] :
       std::vector<std::tuple<std::string, std::string, std::string>>{{"scan", "scan_reuleaux", "witnesses.csv"},
                                                                      {"classify", "classify_ellipse", "labels.csv"},
                                                                      {"probe", "probe_seed42", "probes.csv"},
                                                                      {"pack", "pack_seed42", "packing.json"}}) {
    const fs::path a = fresh_dir(name + "_a"), b = fresh_dir(name + "_b");
    ASSERT_EQ(run_scenario(kind, kScenarios / (name + ".json"), a), 0);
    ASSERT_EQ(run_scenario(kind, kScenarios / (name + ".json"), b), 0);
    EXPECT_EQ(slurp(a / file), slurp(b / file)) << name;
  }
}

TEST(Cli, SeedFlagOverridesConfig) {
  const fs::path config = kScenarios / "pack_seed42.json";
  const fs::path same = fresh_dir("seed_same"), base = fresh_dir("seed_base"), other = fresh_dir("seed_other");
  ASSERT_EQ(run_scenario("pack", config, base), 0);
  ASSERT_EQ(run_scenario("pack", config, same, "--seed 42"), 0);
  ASSERT_EQ(run_scenario("pack", config, other, "--seed 7"), 0);
  EXPECT_EQ(slurp(base / "packing.json"), slurp(same / "packing.json"));
  EXPECT_NE(slurp(base / "packing.json"), slurp(other / "packing.json"));
  const auto j = nlohmann::json::parse(slurp(base / "packing.json"));
  EXPECT_EQ(j.at("seed"), 42);
  EXPECT_EQ(j.at("cells").size(), 64u);
}

TEST(Cli, PackingFileFeedsProbe) {
  const fs::path out = fresh_dir("pack_then_probe");
  ASSERT_EQ(run_scenario("pack", kScenarios / "pack_seed42.json", out), 0);
  const auto cfg = write_config(out, "probe.json", R"({"kind": "probe", "packing": {"file": "packing.json"},
      "probes": [{"center": [0, 0], "radius": 1.0}]})");
  ASSERT_EQ(run_scenario("probe", cfg, out), 0);
  EXPECT_EQ(slurp(out / "probes.csv"), "cx,cy,r,components,full_arc\n0,0,1,1,true\n");
}

TEST(Cli, ConfigErrorsExitWithTwo) {
  const fs::path dir = fresh_dir("config_errors");
  EXPECT_EQ(run_cli("scan"), 2);                        // missing --config
  EXPECT_EQ(run_cli("frobnicate --config x.json"), 2);  // unknown subcommand
  EXPECT_EQ(run_scenario("scan", dir / "missing.json", dir), 2);
  EXPECT_EQ(run_scenario("scan", write_config(dir, "bad.json", "{ not json"), dir), 2);
  EXPECT_EQ(run_scenario("classify", kScenarios / "scan_circle.json", dir), 2);  // kind mismatch
  EXPECT_EQ(run_scenario("scan", write_config(dir, "nokey.json", R"({"kind": "scan"})"), dir), 2);
  EXPECT_EQ(run_scenario("generate", write_config(dir, "shape.json", R"({"kind": "generate",
      "curve": {"type": "hexagon"}})"), dir), 2);
  EXPECT_EQ(run_scenario("generate", write_config(dir, "few.json", R"({"kind": "generate",
      "curve": {"type": "circle", "r": 1.0, "n": 10}})"), dir), 2);
  EXPECT_EQ(run_scenario("scan", write_config(dir, "both.json", R"({"kind": "scan",
      "curve": {"type": "circle", "r": 1.0, "n": 64},
      "constraints": {"max_aspect": 0.2, "max_short_side": 0.1}})"), dir), 2);
  EXPECT_EQ(run_scenario("classify", write_config(dir, "window.json", R"({"kind": "classify",
      "curve": {"type": "circle", "r": 1.0, "n": 256}, "d": 1.0, "eps_nbhd": 0.001})"), dir), 2);
  EXPECT_EQ(run_scenario("generate", write_config(dir, "type.json", R"({"kind": "generate",
      "curve": {"type": "circle", "r": "big"}})"), dir), 2);
}

TEST(Cli, RuntimeErrorsExitWithThree) {
  const fs::path dir = fresh_dir("runtime_errors");
  EXPECT_EQ(run_scenario("generate", write_config(dir, "nofile.json", R"({"kind": "generate",
      "curve": {"type": "file", "path": "does_not_exist.txt"}})"), dir), 3);
  EXPECT_EQ(run_scenario("probe", write_config(dir, "lowres.json", R"({"kind": "probe",
      "packing": {"max_count": 4}, "angular_resolution": 100,
      "probes": [{"center": [0, 0], "radius": 0.5}]})"), dir), 3);
  // output directory blocked by a regular file
  const fs::path blocker = dir / "blocker";
  std::ofstream(blocker) << "x";
  EXPECT_EQ(run_scenario("generate", kScenarios / "generate_reuleaux.json", blocker / "sub"), 3);
}

TEST(Cli, SearchReportsAbsenceHonestly) {
  const fs::path out = fresh_dir("search_circle");
  ASSERT_EQ(run_scenario("search", kScenarios / "search_circle.json", out), 0);
  const auto j = nlohmann::json::parse(slurp(out / "search.json"));
  EXPECT_FALSE(j.at("found").get<bool>());
  EXPECT_EQ(j.at("probes_used"), 10000);
  EXPECT_TRUE(j.contains("note"));
  const fs::path found = fresh_dir("search_ellipse");
  ASSERT_EQ(run_scenario("search", kScenarios / "search_ellipse.json", found), 0);
  EXPECT_TRUE(nlohmann::json::parse(slurp(found / "search.json")).at("found").get<bool>());
}
