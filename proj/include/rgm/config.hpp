#pragma once

// JSON experiment configs.

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <thread>

#include "rgm/montecarlo.hpp"

namespace rgm {

inline GroupPtr group_from_json(const nlohmann::json& j) {
  if (j.is_string()) return make_group(FiniteGroupTable::builtin(j.get<std::string>()));
  if (j.is_object()) {
    const int bound = j.value("bound", FiniteGroupTable::kDefaultBound);
    const std::string name = j.value("name", "");
    if (j.contains("permutations"))
      return make_group(FiniteGroupTable::from_permutations(j.at("permutations").get<std::vector<Perm>>(), bound, name));
    if (j.contains("table"))
      return make_group(FiniteGroupTable::from_table(j.at("table").get<std::vector<std::vector<int>>>(), bound, name));
  }
  throw ConfigError("field 'group': expected a builtin name or {\"permutations\": ...} / {\"table\": ...}");
}

inline Subgroup subgroup_from_json(const GroupPtr& G, const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "trivial") return trivial_subgroup(G);
    if (s == "full") return full_subgroup(G);
    throw ConfigError("field 'subgroups': unknown name '" + s + "'");
  }
  if (j.is_object() && j.contains("generators")) {
    std::vector<int> gens;
    for (const auto& g : j.at("generators")) {
      if (g.is_number_integer()) {
        const int x = g.get<int>();
        if (x < 0 || x >= G->order()) throw ConfigError("field 'subgroups': element index out of range");
        gens.push_back(x);
      } else {
        const int x = G->find_permutation(g.get<Perm>());
        if (x < 0) throw ConfigError("field 'subgroups': permutation is not an element of the group");
        gens.push_back(x);
      }
    }
    return generated_subgroup(G, gens);
  }
  if (j.is_object() && j.contains("index")) {
    auto subs = enumerate_subgroups(G);
    const auto i = j.at("index").get<std::size_t>();
    if (i >= subs.size()) throw ConfigError("field 'subgroups': index out of range");
    return subs[i];
  }
  throw ConfigError("field 'subgroups': entries must be \"trivial\", \"full\", {\"generators\": [...]} or {\"index\": i}");
}

template <class T>
T required(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) throw ConfigError(std::string("missing required field '") + field + "'");
  try {
    return j.at(field).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("field '") + field + "' has the wrong type");
  }
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  if (!j.contains("group")) throw ConfigError("missing required field 'group'");
  c.gamma = group_from_json(j.at("group"));
  c.ell = required<u64>(j, "ell");
  if (!is_prime(c.ell)) throw ConfigError("field 'ell' must be prime");
  c.k = j.contains("k") ? required<int>(j, "k") : 1;
  if (c.k < 1) throw ConfigError("field 'k' must be positive");
  checked_pow(c.ell, static_cast<unsigned>(c.k), u64{1} << 32);
  if (c.gamma->order() % static_cast<int>(c.ell) == 0)
    throw CoprimalityError("ell = " + std::to_string(c.ell) + " divides |Gamma| = " + std::to_string(c.gamma->order()));
  if (j.contains("n_range")) {
    auto r = required<std::vector<int>>(j, "n_range");
    if (r.size() != 2 || r[0] < 0 || r[1] < r[0]) throw ConfigError("field 'n_range' must be [lo, hi] with 0 <= lo <= hi");
    c.n_values.clear();
    for (int n = r[0]; n <= r[1]; ++n) c.n_values.push_back(n);
  } else if (j.contains("n")) {
    const int n = required<int>(j, "n");
    if (n < 0) throw ConfigError("field 'n' must be nonnegative");
    c.n_values = {n};
  } else {
    throw ConfigError("missing required field 'n' (or 'n_range')");
  }
  std::vector<Subgroup> subs;
  if (j.contains("subgroups")) {
    if (!j.at("subgroups").is_array() || j.at("subgroups").empty())
      throw ConfigError("field 'subgroups' must be a nonempty array");
    for (const auto& s : j.at("subgroups")) subs.push_back(subgroup_from_json(c.gamma, s));
  } else {
    subs.push_back(trivial_subgroup(c.gamma));
  }
  c.gammas = SubgroupTuple(subs);
  if (j.contains("samples")) {
    const auto s = j.at("samples");
    if (!s.is_number_integer() || s.get<long long>() < 1) throw ConfigError("field 'samples' must be an integer >= 1");
    c.samples = s.get<u64>();
  }
  if (j.contains("seed")) c.seed = required<u64>(j, "seed");
  if (j.contains("catalog")) c.catalog_max_rank = j.at("catalog").value("max_rank", -1);
  if (j.contains("targets")) c.targets = required<std::vector<std::string>>(j, "targets");
  if (j.contains("statistics")) {
    c.probabilities = c.moments = false;
    for (const auto& s : required<std::vector<std::string>>(j, "statistics")) {
      if (s == "probabilities") c.probabilities = true;
      else if (s == "moments") c.moments = true;
      else throw ConfigError("field 'statistics': unknown statistic '" + s + "'");
    }
  }
  c.workers = j.contains("workers") ? required<unsigned>(j, "workers") : std::max(1u, std::thread::hardware_concurrency());
  if (j.contains("exhaustive")) c.exhaustive = required<bool>(j, "exhaustive");
  if (j.contains("truncation")) c.truncation = required<double>(j, "truncation");
  RepPtr rd = make_representation_data(c.gamma, c.ell);
  for (const auto& t : c.targets) Fingerprint::parse(t, rd->size(), c.k);
  c.echo = j;
  return c;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace rgm
