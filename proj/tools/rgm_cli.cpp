// rgm: theory, simulate, verify, catalog.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "rgm/config.hpp"
#include "rgm/suites.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rgm;

namespace {

enum Exit { kOk = 0, kFailed = 1, kConfig = 2, kPrecondition = 3 };

struct Output {
  fs::path dir;
  std::vector<std::string> written;

  void write(const std::string& name, const std::string& body) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + (dir / name).string() + "'");
    out << body;
    written.push_back((dir / name).string());
  }
  void write(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }
};

json factors_json(const ProbabilityResult& r) {
  json out = json::array();
  for (const auto& f : r.factors) {
    json e{{"label", f.label}};
    if (r.n) e["value"] = to_string(f.value);
    else e["approx"] = f.approx;
    out.push_back(e);
  }
  return out;
}

json probability_json(const ProbabilityResult& r) {
  json j{{"class_id", r.id}, {"factors", factors_json(r)}};
  if (r.n) {
    j["value"] = to_string(r.value);
    j["value_float"] = r.value_float;
  } else {
    j["value_float"] = r.value_float;
    j["truncation_bound"] = r.truncation_bound;
  }
  if (!r.zero_reason.empty()) j["zero_reason"] = r.zero_reason;
  return j;
}

std::vector<Fingerprint> theory_targets(const ExperimentConfig& cfg, const RepresentationData& rd, int rank) {
  std::vector<Fingerprint> out;
  if (!cfg.targets.empty()) {
    for (const auto& t : cfg.targets) out.push_back(Fingerprint::parse(t, rd.size(), cfg.k));
    return out;
  }
  for (const auto& e : enumerate_catalog(rd, cfg.k, rank).entries) out.push_back(e.fp);
  return out;
}

json theory_report(const ExperimentConfig& cfg) {
  RepPtr rd = make_representation_data(cfg.gamma, cfg.ell);
  TheoryContext ctx(rd, cfg.k, cfg.gammas);
  json j;
  j["provenance"] = {{"config_hash", config_hash(cfg.echo)}, {"version", kVersion}};
  json echo = cfg.echo;
  echo.erase("workers");
  j["config"] = echo;
  j["finite_n"] = json::array();
  int max_rank = cfg.catalog_max_rank;
  for (int n : cfg.n_values) {
    const int rank = cfg.catalog_max_rank >= 0 ? cfg.catalog_max_rank : n;
    max_rank = std::max(max_rank, rank);
    const Catalog cat = enumerate_catalog(*rd, cfg.k, rank);
    const MassCheck mc = mass_check(ctx, cat, n);
    json run{{"n", n}, {"catalog_rank", rank}, {"mass", to_string(mc.total_exact)}, {"catalog_complete", mc.complete}};
    run["probabilities"] = json::array();
    run["moments"] = json::array();
    for (const auto& h : theory_targets(cfg, *rd, rank)) {
      if (cfg.probabilities) run["probabilities"].push_back(probability_json(finite_n_probability(ctx, n, h)));
      if (cfg.moments)
        run["moments"].push_back({{"class_id", h.class_id()}, {"finite_n", to_string(finite_n_moment(ctx, n, h))}});
    }
    j["finite_n"].push_back(run);
  }
  const Catalog cat = enumerate_catalog(*rd, cfg.k, max_rank);
  const MassCheck lim = mass_check(ctx, cat, -1);
  json limit{{"catalog_rank", max_rank}, {"mass", lim.total}, {"deficit", lim.deficit}, {"truncation_bound", lim.truncation_bound}};
  limit["probabilities"] = json::array();
  limit["moments"] = json::array();
  for (const auto& h : theory_targets(cfg, *rd, max_rank)) {
    if (cfg.probabilities) limit["probabilities"].push_back(probability_json(limit_probability(ctx, h, cfg.truncation)));
    if (cfg.moments) limit["moments"].push_back({{"class_id", h.class_id()}, {"value", to_string(theoretical_moment(ctx, h))}});
  }
  j["limit"] = limit;
  return j;
}

json catalog_report(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("group")) throw ConfigError("missing required field 'group'");
  GroupPtr G = group_from_json(j.at("group"));
  const u64 ell = required<u64>(j, "ell");
  if (!is_prime(ell)) throw ConfigError("field 'ell' must be prime");
  const int k = j.contains("k") ? required<int>(j, "k") : 1;
  if (k < 1) throw ConfigError("field 'k' must be positive");
  if (G->order() % static_cast<int>(ell) == 0)
    throw CoprimalityError("ell = " + std::to_string(ell) + " divides |Gamma| = " + std::to_string(G->order()));
  if (!j.contains("catalog") || !j.at("catalog").contains("max_rank"))
    throw ConfigError("missing required field 'catalog.max_rank'");
  const int rank = required<int>(j.at("catalog"), "max_rank");
  if (rank < 0) throw ConfigError("field 'catalog.max_rank' must be nonnegative");
  const bool all = j.at("catalog").value("include_nonadmissible", false);
  const u64 limit = j.at("catalog").value("max_entries", u64{200000});
  RepPtr rd = make_representation_data(G, ell);
  return catalog_to_json(enumerate_catalog(*rd, k, rank, all, limit));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Gamma-module model: exact theory, simulation and verification"};
  app.require_subcommand(1);
  std::string config_path, out_dir = "out", suite;
  std::optional<u64> seed;
  std::optional<unsigned> workers;
  bool exhaustive = false;

  auto* theory = app.add_subcommand("theory", "exact finite-n and limit probabilities and moments");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo or exhaustive experiment");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  auto* catalog = app.add_subcommand("catalog", "enumerate isomorphism classes");
  for (auto* sc : {theory, simulate, catalog}) sc->add_option("--config", config_path, "JSON config")->required();
  for (auto* sc : {theory, simulate, verify, catalog}) sc->add_option("--out-dir", out_dir, "output directory");
  simulate->add_option("--seed", seed, "override the config seed");
  simulate->add_option("--workers", workers, "worker threads (default: available parallelism)");
  simulate->add_flag("--exhaustive", exhaustive, "enumerate the relator space when feasible");
  verify->add_option("--suite", suite, "suite name or 'all'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Output out{out_dir, {}};
  json manifest{{"version", kVersion}};
  int status = kOk;
  try {
    if (*theory) {
      manifest["subcommand"] = "theory";
      const json raw = read_json_file(config_path);
      const ExperimentConfig cfg = config_from_json(raw);
      manifest["config_path"] = config_path;
      manifest["config"] = raw;
      out.write("theory.json", theory_report(cfg));
    } else if (*simulate) {
      manifest["subcommand"] = "simulate";
      json raw = read_json_file(config_path);
      if (seed) raw["seed"] = *seed;
      if (exhaustive) raw["exhaustive"] = true;
      ExperimentConfig cfg = config_from_json(raw);
      if (workers) cfg.workers = std::max(1u, *workers);
      manifest["config_path"] = config_path;
      manifest["config"] = raw;
      manifest["workers"] = cfg.workers;
      const SweepReport rep = sweep(cfg);
      for (const auto& r : rep.runs) {
        if (!r.fallback_warning.empty()) std::cerr << "warning: " << r.fallback_warning << "\n";
        out.write("report_n" + std::to_string(r.n) + ".csv", to_csv(r));
      }
      out.write("report.json", to_json(rep, cfg));
    } else if (*verify) {
      manifest["subcommand"] = "verify";
      std::vector<std::string> names;
      if (suite == "all") names = suite_names();
      else names = {suite};
      json results = json::array();
      for (const auto& name : names) {
        const SuiteReport r = run_suite(name);
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)\n";
        for (const auto& f : r.failures) std::cout << "  " << f << "\n";
        if (!r.passed()) status = kFailed;
        results.push_back(to_json(r));
      }
      out.write("verify.json", json{{"suites", results}, {"passed", status == kOk}});
    } else if (*catalog) {
      manifest["subcommand"] = "catalog";
      const json raw = read_json_file(config_path);
      manifest["config_path"] = config_path;
      manifest["config"] = raw;
      const json cat = catalog_report(raw);
      std::cout << "classes: " << cat.at("entries").size() << "\n";
      out.write("catalog.json", cat);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kPrecondition;
  }
  manifest["outputs"] = out.written;
  manifest["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  manifest["exit_code"] = status;
  out.write("manifest.json", manifest);
  return status;
}
