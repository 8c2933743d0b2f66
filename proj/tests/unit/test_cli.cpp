#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "rgm/config.hpp"
#include "rgm/suites.hpp"

using namespace rgm;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("rgm_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RGM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

fs::path write_config(const fs::path& dir, const json& j) {
  std::ofstream(dir / "cfg.json") << j.dump();
  return dir / "cfg.json";
}

json read(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

json c2_config() { return {{"group", "C2"}, {"ell", 3}, {"k", 1}, {"n", 1}, {"samples", 500}, {"seed", 5}, {"targets", {"0", "S1:1"}}}; }

}  // namespace

TEST(Config, ParsesDefaults) {
  const ExperimentConfig c = config_from_json({{"group", "C2"}, {"ell", 3}, {"n", 2}});
  EXPECT_EQ(c.k, 1);
  EXPECT_EQ(c.n_values, std::vector<int>{2});
  EXPECT_EQ(c.gammas.u(), 0);
  EXPECT_EQ(c.gammas[0].members.size(), 1u);
}

TEST(Config, MissingEllNamesField) {
  try {
    config_from_json({{"group", "C2"}, {"n", 1}});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("'ell'"), std::string::npos);
  }
}

TEST(Config, Errors) {
  EXPECT_THROW(config_from_json({{"group", "C3"}, {"ell", 3}, {"n", 1}}), CoprimalityError);
  EXPECT_THROW(config_from_json({{"group", "C2"}, {"ell", 4}, {"n", 1}}), ConfigError);
  EXPECT_THROW(config_from_json({{"group", "C2"}, {"ell", 3}, {"n", 1}, {"samples", 0}}), ConfigError);
  EXPECT_THROW(config_from_json({{"group", "C2"}, {"ell", 3}, {"n", 1}, {"targets", {"S7:1"}}}), ConfigError);
  EXPECT_THROW(config_from_json({{"group", "C2"}, {"ell", 3}, {"n", 1}, {"subgroups", {"half"}}}), ConfigError);
}

TEST(Config, HashIgnoresWorkers) {
  json a = c2_config(), b = c2_config();
  a["workers"] = 1;
  b["workers"] = 8;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b["seed"] = 6;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Catalog, SignPowersUpToRankThree) {
  auto rd = make_representation_data(make_group(FiniteGroupTable::builtin("C2")), 3);
  const Catalog c = enumerate_catalog(*rd, 1, 3);
  ASSERT_EQ(c.entries.size(), 4u);
  EXPECT_EQ(c.entries[0].id, "0");
  EXPECT_EQ(c.entries[3].id, "S1:1.1.1");
  EXPECT_EQ(enumerate_catalog(*rd, 1, 0).entries.size(), 1u);
}

TEST(Catalog, MixedLayersAtLevelTwo) {
  auto rd = make_representation_data(make_group(FiniteGroupTable::builtin("C2")), 3);
  // admissible classes of rank <= 2 at k = 2: partitions of the sign part with parts <= 2, at most 2 parts
  const Catalog c = enumerate_catalog(*rd, 2, 2);
  EXPECT_EQ(c.entries.size(), 6u);
  EXPECT_NE(c.find("S1:2.1"), nullptr);
}

TEST(Catalog, JsonRoundTrip) {
  auto rd = make_representation_data(make_group(FiniteGroupTable::builtin("S3")), 5);
  const Catalog c = enumerate_catalog(*rd, 1, 2);
  const json j = catalog_to_json(c);
  EXPECT_EQ(catalog_to_json(catalog_from_json(j)), j);
}

TEST(Cli, TheoryReportContainsSignProbability) {
  const fs::path d = scratch("theory");
  ASSERT_EQ(run_cli("theory --config " + write_config(d, c2_config()).string() + " --out-dir " + (d / "o").string()), 0);
  const json r = read(d / "o" / "theory.json");
  bool found = false;
  for (const auto& p : r["finite_n"][0]["probabilities"])
    if (p["class_id"] == "S1:1") found = p["value"] == "1/9";
  EXPECT_TRUE(found);
  EXPECT_TRUE(fs::exists(d / "o" / "manifest.json"));
}

TEST(Cli, ExitCodes) {
  const fs::path d = scratch("codes");
  json bad = c2_config();
  bad.erase("ell");
  EXPECT_EQ(run_cli("theory --config " + write_config(d, bad).string() + " --out-dir " + d.string()), 2);
  json cop = c2_config();
  cop["group"] = "C3";
  EXPECT_EQ(run_cli("theory --config " + write_config(d, cop).string() + " --out-dir " + d.string()), 3);
  EXPECT_EQ(run_cli("verify --suite no-such-suite --out-dir " + d.string()), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
}

TEST(Cli, VerifySuitePasses) {
  const fs::path d = scratch("verify");
  EXPECT_EQ(run_cli("verify --suite y-identity --out-dir " + d.string()), 0);
  EXPECT_TRUE(read(d / "verify.json")["passed"].get<bool>());
}

TEST(Cli, SimulateIsReproducibleAndExact) {
  const fs::path d = scratch("simulate");
  const auto cfg = write_config(d, c2_config()).string();
  ASSERT_EQ(run_cli("simulate --config " + cfg + " --out-dir " + (d / "a").string() + " --workers 1"), 0);
  ASSERT_EQ(run_cli("simulate --config " + cfg + " --out-dir " + (d / "b").string() + " --workers 3"), 0);
  EXPECT_EQ(read(d / "a" / "report.json"), read(d / "b" / "report.json"));
  ASSERT_EQ(run_cli("simulate --config " + cfg + " --out-dir " + (d / "e").string() + " --exhaustive"), 0);
  const json e = read(d / "e" / "report.json");
  EXPECT_EQ(e["runs"][0]["match"], "EXACT");
}

TEST(Cli, InfeasibleExhaustiveFallsBack) {
  const fs::path d = scratch("fallback");
  json j = c2_config();
  j["n"] = 12;
  j["samples"] = 50;
  ASSERT_EQ(run_cli("simulate --config " + write_config(d, j).string() + " --out-dir " + d.string() + " --exhaustive"), 0);
  const json r = read(d / "report.json");
  EXPECT_EQ(r["runs"][0]["mode"], "sampled");
  EXPECT_TRUE(r["runs"][0].contains("warning"));
}

TEST(Cli, CatalogCounts) {
  const fs::path d = scratch("catalog");
  json j{{"group", "C2"}, {"ell", 3}, {"catalog", {{"max_rank", 3}}}};
  ASSERT_EQ(run_cli("catalog --config " + write_config(d, j).string() + " --out-dir " + d.string()), 0);
  EXPECT_EQ(read(d / "catalog.json")["entries"].size(), 4u);
}

TEST(Suites, UnknownNameIsConfigError) { EXPECT_THROW(run_suite("nope"), ConfigError); }
