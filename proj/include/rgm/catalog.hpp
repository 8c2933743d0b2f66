#pragma once

// Complete lists of isomorphism classes of finite B_k-modules up to a rank bound.

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "rgm/invariants.hpp"

namespace rgm {

inline std::string subgroup_key(const Subgroup& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.members.size(); ++i) out += (i ? "," : "") + std::to_string(s.members[i]);
  return out + "}";
}

struct CatalogEntry {
  Fingerprint fp;
  std::string id;
  int log_order = 0;                       // |H| = ell^log_order
  int rank = 0;                            // minimal number of B-generators
  bool admissible = true;
  Int h_gamma_fixed = 1;                   // |H^Gamma|
  std::map<std::string, Int> fixed_sizes;  // subgroup key -> |H^{Gamma_0}|
  Int aut = 1;
  Int y_size = 1;                          // |Y(H)| = |H| / |H^Gamma|
  std::map<int, Int> sur_from_free;        // n -> |Sur(B_k^n, H)|

  Int order(u64 ell) const { return ipow(ell, log_order); }
};

inline CatalogEntry make_catalog_entry(const Fingerprint& f, const RepresentationData& rd, int max_n) {
  CatalogEntry e;
  e.fp = f;
  e.id = f.class_id();
  e.log_order = fp_log_order(f, rd);
  e.rank = fp_rank(f, rd);
  e.admissible = fp_admissible(f);
  const Subgroup full = full_subgroup(rd.gamma());
  e.h_gamma_fixed = ipow(rd.ell(), fp_fixed_log(f, full, rd));
  for (const Subgroup& s : enumerate_subgroups(rd.gamma()))
    e.fixed_sizes[subgroup_key(s)] = ipow(rd.ell(), fp_fixed_log(f, s, rd));
  e.aut = aut_count_closed(f, rd);
  e.y_size = e.order(rd.ell()) / e.h_gamma_fixed;
  for (int n = 0; n <= max_n; ++n) e.sur_from_free[n] = sur_from_free_closed(static_cast<std::size_t>(n), f, rd);
  return e;
}

struct Catalog {
  u64 ell = 2;
  int k = 1;
  int max_rank = 0;
  bool include_nonadmissible = false;
  std::vector<CatalogEntry> entries;

  const CatalogEntry* find(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return &e;
    return nullptr;
  }
};

// Every fingerprint of generator rank <= max_rank. Non-admissible classes (with a
// trivial-isotypic part) are included only on request.
inline Catalog enumerate_catalog(const RepresentationData& rd, int k, int max_rank, bool include_nonadmissible = false,
                                 std::size_t max_entries = 200000) {
  if (max_rank < 0) throw ConfigError("catalog max_rank must be nonnegative");
  if (k < 1) throw ConfigError("k must be positive");
  Catalog cat;
  cat.ell = rd.ell();
  cat.k = k;
  cat.max_rank = max_rank;
  cat.include_nonadmissible = include_nonadmissible;
  std::vector<std::vector<std::vector<int>>> choices(rd.size());
  std::size_t total = 1;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    std::vector<std::vector<int>> parts_list{{}};
    const bool allowed = rd[i].in_B || include_nonadmissible;
    const int max_parts = allowed ? max_rank * rd[i].regular_multiplicity : 0;
    for (int tot = 1; tot <= max_parts * k; ++tot)
      for (auto& p : partitions_with_total(tot, k))
        if (static_cast<int>(p.size()) <= max_parts) parts_list.push_back(p);
    choices[i] = std::move(parts_list);
    total *= choices[i].size();
    if (total > max_entries) throw BoundError("catalog exceeds " + std::to_string(max_entries) + " classes");
  }
  std::vector<std::size_t> pick(rd.size(), 0);
  while (true) {
    std::vector<std::vector<int>> parts(rd.size());
    for (std::size_t i = 0; i < rd.size(); ++i) parts[i] = choices[i][pick[i]];
    cat.entries.push_back(make_catalog_entry(Fingerprint::from_parts(parts, k), rd, max_rank));
    std::size_t i = 0;
    while (i < rd.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == rd.size()) break;
  }
  std::sort(cat.entries.begin(), cat.entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    return std::tie(a.log_order, a.id) < std::tie(b.log_order, b.id);
  });
  return cat;
}

inline nlohmann::json catalog_entry_to_json(const CatalogEntry& e) {
  nlohmann::json j;
  j["id"] = e.id;
  j["layers"] = e.fp.d;
  j["log_order"] = e.log_order;
  j["rank"] = e.rank;
  j["admissible"] = e.admissible;
  j["h_gamma_fixed"] = to_string(e.h_gamma_fixed);
  nlohmann::json fs = nlohmann::json::object();
  for (const auto& [key, v] : e.fixed_sizes) fs[key] = to_string(v);
  j["fixed_sizes"] = fs;
  j["aut"] = to_string(e.aut);
  j["y_size"] = to_string(e.y_size);
  nlohmann::json sf = nlohmann::json::object();
  for (const auto& [n, v] : e.sur_from_free) sf[std::to_string(n)] = to_string(v);
  j["sur_from_free"] = sf;
  return j;
}

inline nlohmann::json catalog_to_json(const Catalog& c) {
  nlohmann::json j;
  j["ell"] = c.ell;
  j["k"] = c.k;
  j["max_rank"] = c.max_rank;
  j["include_nonadmissible"] = c.include_nonadmissible;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : c.entries) j["entries"].push_back(catalog_entry_to_json(e));
  return j;
}

inline Catalog catalog_from_json(const nlohmann::json& j) {
  try {
    Catalog c;
    c.ell = j.at("ell").get<u64>();
    c.k = j.at("k").get<int>();
    c.max_rank = j.at("max_rank").get<int>();
    c.include_nonadmissible = j.value("include_nonadmissible", false);
    for (const auto& je : j.at("entries")) {
      CatalogEntry e;
      e.fp.k = c.k;
      e.fp.d = je.at("layers").get<std::vector<std::vector<int>>>();
      e.id = je.at("id").get<std::string>();
      if (e.fp.class_id() != e.id) throw ConfigError("catalog entry id does not match its layers: " + e.id);
      e.log_order = je.at("log_order").get<int>();
      e.rank = je.at("rank").get<int>();
      e.admissible = je.at("admissible").get<bool>();
      e.h_gamma_fixed = Int(je.at("h_gamma_fixed").get<std::string>());
      for (const auto& [key, v] : je.at("fixed_sizes").items()) e.fixed_sizes[key] = Int(v.get<std::string>());
      e.aut = Int(je.at("aut").get<std::string>());
      e.y_size = Int(je.at("y_size").get<std::string>());
      for (const auto& [key, v] : je.at("sur_from_free").items()) e.sur_from_free[std::stoi(key)] = Int(v.get<std::string>());
      c.entries.push_back(std::move(e));
    }
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("malformed catalog JSON: ") + ex.what());
  }
}

}  // namespace rgm
