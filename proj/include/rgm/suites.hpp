#pragma once

// Named verification suites shared by the CLI and the acceptance gate.

#include <chrono>
#include <functional>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "rgm/lab.hpp"
#include "rgm/montecarlo.hpp"

namespace rgm {

struct SuiteReport {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  nlohmann::json details = nlohmann::json::object();
  double seconds = 0;

  SuiteReport() = default;
  explicit SuiteReport(std::string n) : name(std::move(n)) {}
  bool passed() const { return failures.empty() && checks > 0; }
  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 50) failures.push_back(what);
  }
};

inline nlohmann::json to_json(const SuiteReport& r) {
  return {{"suite", r.name}, {"passed", r.passed()}, {"checks", r.checks}, {"failures", r.failures}, {"details", r.details}};
}

struct SmallConfig {
  const char* group;
  u64 ell;
  int k;
};

inline GroupPtr builtin_group(const std::string& name) { return make_group(FiniteGroupTable::builtin(name)); }

// |Y(H^{Gamma_0})| |H^Gamma| = |H^{Gamma_0}| on lab groups and on explicit catalog modules.
inline SuiteReport suite_y_identity() {
  SuiteReport r{"y-identity"};
  for (const auto& g : builtin_scan_suite()) r.check(verify_y_identity(g), "lab group " + g.name());
  for (SmallConfig c : {SmallConfig{"C2", 3, 2}, SmallConfig{"S3", 5, 1}, SmallConfig{"C4", 3, 1}, SmallConfig{"C3", 7, 1},
                        SmallConfig{"C3", 2, 2}}) {
    auto rd = make_representation_data(builtin_group(c.group), c.ell);
    ModuleFactory mf(rd, c.k);
    const auto subs = enumerate_subgroups(rd->gamma());
    const Subgroup full = full_subgroup(rd->gamma());
    for (const auto& e : enumerate_catalog(*rd, c.k, 2, true).entries) {
      if (e.log_order * std::log2(static_cast<double>(c.ell)) > 14) continue;
      const FiniteModule H = mf.build(e.fp);
      const Int hg = fixed_points_count(H, full);
      for (const auto& s : subs)
        r.check(y_image_size(H, s) * hg == fixed_points_count(H, s),
                std::string(c.group) + " ell=" + std::to_string(c.ell) + " H=" + e.id);
    }
  }
  return r;
}

inline SuiteReport suite_fixed_point_powers() {
  SuiteReport r{"fixed-point-powers"};
  for (const auto& g : builtin_irreducible_suite())
    if (g.abelian()) {
      auto f = verify_fixed_point_powers(g);
      r.check(f.ok, "lab group " + g.name());
    }
  for (SmallConfig c : {SmallConfig{"C2", 3, 1}, SmallConfig{"C3", 2, 1}, SmallConfig{"C3", 7, 1}, SmallConfig{"S3", 5, 1},
                        SmallConfig{"S3", 7, 1}, SmallConfig{"C4", 3, 1}, SmallConfig{"C5", 2, 1}, SmallConfig{"C2xC2", 3, 1},
                        SmallConfig{"C7", 2, 1}}) {
    auto rd = make_representation_data(builtin_group(c.group), c.ell);
    ModuleFactory mf(rd, 1);
    for (std::size_t i = 0; i < rd->size(); ++i) {
      std::vector<std::vector<int>> parts(rd->size());
      parts[i] = {1};
      const FiniteModule S = mf.build(Fingerprint::from_parts(parts, 1));
      const Int h = (*rd)[i].endo_order;
      const Int sg = fixed_points_count(S, full_subgroup(rd->gamma()));
      for (const auto& sub : enumerate_subgroups(rd->gamma())) {
        const Int f = fixed_points_count(S, sub);
        const Int y = y_image_size(S, sub);
        r.check(is_power_of(f, h) && is_power_of(y, h) && y * sg == f,
                std::string(c.group) + " ell=" + std::to_string(c.ell) + " S" + std::to_string(i));
      }
    }
  }
  return r;
}

inline SuiteReport suite_relation_probability() {
  SuiteReport r{"relation-probability"};
  const auto res = run_relation_suite();
  nlohmann::json sample = nlohmann::json::array();
  for (const auto& x : res) {
    r.check(x.result.equal, x.label + ": " + to_string(x.result.empirical) + " vs " + to_string(x.result.formula));
    if (sample.size() < 12) sample.push_back({{"instance", x.label}, {"value", to_string(x.result.empirical)}});
  }
  r.details["instances"] = res.size();
  r.details["examples"] = sample;
  return r;
}

inline SuiteReport suite_admissibility() {
  SuiteReport r{"admissibility"};
  for (const auto& g : builtin_scan_suite()) {
    auto q = admissible_quotient_scan(g);
    r.check(q.closure_holds, "quotient closure " + g.name());
    r.check(q.criteria_agree, "criteria agree " + g.name());
    r.check(q.admissible == (coinvariants(g) == 1), "coinvariants " + g.name());
  }
  for (SmallConfig c : {SmallConfig{"C2", 3, 2}, SmallConfig{"S3", 5, 1}, SmallConfig{"C4", 3, 1}, SmallConfig{"C3", 2, 2}}) {
    auto rd = make_representation_data(builtin_group(c.group), c.ell);
    ModuleFactory mf(rd, c.k);
    const Subgroup full = full_subgroup(rd->gamma());
    for (const auto& e : enumerate_catalog(*rd, c.k, 2, true).entries) {
      const FiniteModule H = mf.build(e.fp);
      const bool adm = is_admissible(H);
      r.check(adm == (fixed_points_count(H, full) == 1) && adm == e.admissible,
              std::string(c.group) + " ell=" + std::to_string(c.ell) + " H=" + e.id);
    }
  }
  return r;
}

// Values over all subgroup tuples with u <= 2 are unchanged by permuting the
// tuple and by conjugating any entry.
inline SuiteReport suite_symmetry(const std::vector<u64>& ells = {5, 7}) {
  SuiteReport r{"symmetry"};
  auto G = builtin_group("S3");
  const auto subs = enumerate_subgroups(G);
  for (u64 ell : ells) {
    auto rd = make_representation_data(G, ell);
    const Catalog cat = enumerate_catalog(*rd, 1, 2);
    auto values = [&](const std::vector<Subgroup>& t) {
      TheoryContext ctx(rd, 1, SubgroupTuple(t));
      std::vector<Rational> v;
      for (int n = 1; n <= 2; ++n)
        for (const auto& e : cat.entries) {
          v.push_back(finite_n_probability(ctx, n, e.fp).value);
          v.push_back(finite_n_moment(ctx, n, e.fp));
        }
      return v;
    };
    for (std::size_t len = 1; len <= 3; ++len) {
      std::vector<std::size_t> pick(len, 0);
      while (true) {
        std::vector<Subgroup> t;
        for (std::size_t i : pick) t.push_back(subs[i]);
        const auto base = values(t);
        std::string label = "ell=" + std::to_string(ell) + " tuple";
        for (std::size_t i : pick) label += " " + std::to_string(i);
        auto perm = t;
        std::sort(perm.begin(), perm.end());
        do {
          r.check(values(perm) == base, "permutation " + label);
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (std::size_t i = 0; i < len; ++i)
          for (int g = 1; g < G->order(); ++g) {
            auto c = t;
            c[i] = conjugate_subgroup(t[i], g);
            if (c[i] == t[i]) continue;
            r.check(values(c) == base, "conjugation " + label);
          }
        std::size_t i = 0;
        while (i < len && ++pick[i] == subs.size()) pick[i++] = 0;
        if (i == len) break;
      }
    }
  }
  return r;
}

// Fingerprints against hom counts computed without fingerprints.
inline SuiteReport suite_classifier(std::size_t samples = 1000, u64 seed = 2024) {
  SuiteReport r{"classifier"};
  struct Cfg {
    const char* group;
    int k;
    int max_n;
  };
  std::size_t per = samples / 2, disagreements = 0, iso_checked = 0;
  for (Cfg c : {Cfg{"C2", 2, 3}, Cfg{"C4", 1, 2}}) {
    auto G = builtin_group(c.group);
    auto rd = make_representation_data(G, 3);
    auto ring = build_ring(G, 3, c.k);
    const auto subs = enumerate_subgroups(G);
    std::vector<Fingerprint> targets;
    std::vector<FiniteModule> target_mods;
    ModuleFactory mf(rd, c.k);
    for (const auto& e : enumerate_catalog(*rd, c.k, 4, true).entries)
      if (e.log_order <= 4) {
        targets.push_back(e.fp);
        target_mods.push_back(mf.build(e.fp));
      }
    std::map<std::string, std::vector<Int>> by_fp;
    std::map<std::vector<Int>, std::string> by_hom;
    std::map<std::string, FiniteModule> rep;
    for (std::size_t s = 0; s < per; ++s) {
      const int n = 1 + static_cast<int>(s % static_cast<std::size_t>(c.max_n));
      PhiloxStream rng(seed, 7, s);
      FiniteModule X;
      if (s % 2 == 0) {
        // model relators
        std::vector<Subgroup> t;
        for (std::size_t i = 0; i <= s % 3; ++i) t.push_back(subs[(s / 3 + i * 7) % subs.size()]);
        RelatorSpace space(ring, static_cast<std::size_t>(n), SubgroupTuple(t));
        X = cokernel(ring, space.sample(rng)).module;
      } else {
        // quotient of B^n by a few uniform vectors
        const std::size_t D = static_cast<std::size_t>(n) * ring->dim();
        std::vector<Vec> rels(rng.uniform(static_cast<u64>(n) + 1));
        for (Vec& v : rels) {
          v.resize(D);
          for (u64& x : v) x = rng.uniform(ring->zmod().q());
        }
        X = cokernel_presentation(G, ring->zmod(), D, ring->module_actions(static_cast<std::size_t>(n)), rels).module;
      }
      if (X.log_order() > 6) {
        r.check(false, "sampled module larger than 3^6");
        continue;
      }
      const Fingerprint f = fingerprint(X, *rd);
      std::vector<Int> homs;
      for (std::size_t h = 0; h < targets.size(); ++h) {
        const Int brute = hom_count_gamma(X, target_mods[h], CountPath::Auto, 2000);
        homs.push_back(brute);
        if (brute != hom_count_closed(f, targets[h], *rd)) ++disagreements;
      }
      const std::string id = f.class_id();
      auto [it, fresh] = by_fp.emplace(id, homs);
      r.check(it->second == homs, std::string(c.group) + ": equal fingerprints, different hom counts (" + id + ")");
      auto [jt, fresh2] = by_hom.emplace(homs, id);
      r.check(jt->second == id, std::string(c.group) + ": equal hom counts, different fingerprints (" + id + ")");
      // isomorphism oracle on small instances: a surjection between equal-order modules
      if (fresh) {
        rep.emplace(id, X);
      } else if (X.log_order() <= 3) {
        const FiniteModule& Y = rep.at(id);
        HomEnumerator he(X, Y);
        if (he.candidates(20000) <= 20000) {
          bool iso = false;
          he.for_each([&](const Mat& F) { iso = iso || hom_is_surjective(F, Y); }, 20000);
          r.check(iso, std::string(c.group) + ": no isomorphism between equal fingerprints " + id);
          ++iso_checked;
        }
      }
      (void)fresh2;
    }
    r.details[std::string(c.group) + "_classes"] = by_fp.size();
    r.details[std::string(c.group) + "_targets"] = targets.size();
  }
  r.check(disagreements == 0, std::to_string(disagreements) + " hom counts disagree with the closed form");
  r.details["samples"] = per * 2;
  r.details["disagreements"] = disagreements;
  r.details["isomorphisms_checked"] = iso_checked;
  return r;
}

// Closed forms against enumeration on small modules.
inline SuiteReport suite_closed_forms() {
  SuiteReport r{"closed-forms"};
  for (SmallConfig c : {SmallConfig{"C2", 3, 2}, SmallConfig{"C3", 2, 2}, SmallConfig{"C4", 3, 1}, SmallConfig{"S3", 5, 1},
                        SmallConfig{"C3", 7, 1}}) {
    auto rd = make_representation_data(builtin_group(c.group), c.ell);
    ModuleFactory mf(rd, c.k);
    const std::string tag = std::string(c.group) + " ell=" + std::to_string(c.ell) + " k=" + std::to_string(c.k);
    std::vector<CatalogEntry> es;
    for (const auto& e : enumerate_catalog(*rd, c.k, 2, true).entries)
      if (e.log_order * std::log2(static_cast<double>(c.ell)) <= 7) es.push_back(e);
    for (const auto& x : es)
      for (const auto& h : es) {
        const FiniteModule X = mf.build(x.fp), H = mf.build(h.fp);
        HomEnumerator he(X, H);
        if (he.candidates(20000) > 20000) continue;
        Int homs = 0, surs = 0;
        he.for_each([&](const Mat& F) {
          ++homs;
          if (hom_is_surjective(F, H)) ++surs;
        });
        r.check(homs == hom_count_closed(x.fp, h.fp, *rd), tag + " hom " + x.id + " -> " + h.id);
        r.check(surs == sur_count_closed(x.fp, h.fp, *rd), tag + " sur " + x.id + " -> " + h.id);
      }
    // Sur(B^n, H), relation multiplicities and lambda
    GroupRingB ring(rd->gamma(), c.ell, c.k);
    std::mt19937_64 rng(99);
    for (const auto& h : es) {
      if (!h.admissible) continue;
      const FiniteModule H = mf.build(h.fp);
      for (std::size_t n = 1; n <= 2; ++n) {
        if (static_cast<int>(n) < h.rank) continue;
        FiniteModule B{rd->gamma(), ring.zmod(), std::vector<int>(n * ring.dim(), c.k), ring.module_actions(n)};
        if (HomEnumerator(B, H).candidates(20000) <= 20000)
          r.check(sur_count_brute(B, H) == sur_from_free_closed(n, h.fp, *rd), tag + " sur free " + h.id);
        for (std::size_t i = 0; i < rd->size(); ++i)
          for (int rep = 0; rep < 5; ++rep)
            r.check(relation_multiplicity(ring, n, H, i, *rd, rng) == relation_multiplicity_closed(n, h.fp, i, *rd),
                    tag + " multiplicity " + h.id);
      }
      if (h.log_order <= 2)
        for (std::size_t i = 0; i < rd->size(); ++i)
          try {
            r.check(lambda_brute(h.fp, i, mf, 200000).lambda == lambda_closed(h.fp, i, *rd), tag + " lambda " + h.id);
          } catch (const BoundError&) {
          }
      if (HomEnumerator(H, H).candidates(20000) <= 20000) r.check(aut_count_brute(H) == h.aut, tag + " aut " + h.id);
    }
  }
  return r;
}

// Exhaustive enumeration against exact finite-n values.
inline SuiteReport suite_exactness() {
  SuiteReport r{"exactness"};
  struct Case {
    const char* group;
    u64 ell;
    int k;
    int n;
    std::vector<std::string> subs;
  };
  for (const Case& c : std::vector<Case>{{"C2", 3, 1, 1, {"trivial"}},
                                         {"C2", 3, 1, 2, {"trivial", "full"}},
                                         {"C2", 3, 2, 1, {"trivial"}},
                                         {"C3", 2, 1, 2, {"trivial"}},
                                         {"C3", 2, 2, 1, {"full", "trivial"}},
                                         {"C4", 3, 1, 1, {"trivial"}},
                                         {"C2xC2", 3, 1, 1, {"full", "trivial"}},
                                         {"C3", 7, 1, 1, {"full"}},
                                         {"C2", 5, 1, 2, {"trivial"}}}) {
    ExperimentConfig cfg;
    cfg.gamma = builtin_group(c.group);
    cfg.ell = c.ell;
    cfg.k = c.k;
    std::vector<Subgroup> t;
    for (const auto& s : c.subs) t.push_back(s == "full" ? full_subgroup(cfg.gamma) : trivial_subgroup(cfg.gamma));
    cfg.gammas = SubgroupTuple(t);
    auto rd = make_representation_data(cfg.gamma, c.ell);
    for (const auto& e : enumerate_catalog(*rd, c.k, c.n).entries) cfg.targets.push_back(e.id);
    cfg.exhaustive = true;
    const RunReport rep = run_experiment(cfg, c.n);
    const std::string tag = std::string(c.group) + " ell=" + std::to_string(c.ell) + " k=" + std::to_string(c.k) +
                            " n=" + std::to_string(c.n);
    r.check(rep.exhaustive, tag + " not enumerated");
    r.check(rep.all_exact, tag + " mismatch");
    for (const auto& m : rep.moments) r.check(m.reconstruction_exact, tag + " moment reconstruction " + m.target);
  }
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"y-identity",   "fixed-point-powers", "relation-probability",
                                              "admissibility", "symmetry",           "classifier",
                                              "closed-forms", "exactness"};
  return names;
}

inline SuiteReport run_suite(const std::string& name) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport r;
  if (name == "y-identity") r = suite_y_identity();
  else if (name == "fixed-point-powers") r = suite_fixed_point_powers();
  else if (name == "relation-probability") r = suite_relation_probability();
  else if (name == "admissibility") r = suite_admissibility();
  else if (name == "symmetry") r = suite_symmetry();
  else if (name == "classifier") r = suite_classifier();
  else if (name == "closed-forms") r = suite_closed_forms();
  else if (name == "exactness") r = suite_exactness();
  else throw ConfigError("unknown suite '" + name + "'");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace rgm
