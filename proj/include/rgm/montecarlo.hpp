#pragma once

// Empirical distribution and moments of the sampled cokernels.

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "rgm/sampler.hpp"
#include "rgm/theory.hpp"

#ifndef RGM_VERSION
#define RGM_VERSION "0.0.0"
#endif

namespace rgm {

inline constexpr const char* kVersion = RGM_VERSION;

struct ExperimentConfig {
  GroupPtr gamma;
  u64 ell = 3;
  int k = 1;
  std::vector<int> n_values{1};
  SubgroupTuple gammas;
  u64 samples = 1000;
  u64 seed = 1;
  int catalog_max_rank = -1;  // -1: use n (complete catalog)
  std::vector<std::string> targets;
  bool probabilities = true;
  bool moments = true;
  unsigned workers = 1;
  bool exhaustive = false;
  u64 exhaustive_limit = 1000000;
  double truncation = 1e-12;
  nlohmann::json echo;  // resolved config as read; provenance hash input
};

// FNV-1a over the canonical dump of the config echo (worker count excluded).
inline std::string config_hash(const nlohmann::json& echo) {
  nlohmann::json e = echo;
  if (e.is_object()) e.erase("workers");
  const std::string s = e.dump();
  u64 h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct WilsonInterval {
  double lo = 0, hi = 1;
};

inline WilsonInterval wilson(u64 count, u64 total, double z = 1.96) {
  if (total == 0) return {};
  const double N = static_cast<double>(total), p = static_cast<double>(count) / N;
  const double den = 1 + z * z / N;
  const double centre = (p + z * z / (2 * N)) / den;
  const double half = z * std::sqrt(p * (1 - p) / N + z * z / (4 * N * N)) / den;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

// Per-class counts and per-target Sur sums over a range of samples.
struct Tally {
  u64 total = 0;
  std::map<std::string, u64> counts;
  std::map<std::string, Fingerprint> fps;
  std::vector<Int> sur_sum, sur_sq;

  void merge(const Tally& o) {
    total += o.total;
    for (const auto& [id, c] : o.counts) counts[id] += c;
    for (const auto& [id, f] : o.fps) fps.emplace(id, f);
    if (sur_sum.empty()) {
      sur_sum = o.sur_sum;
      sur_sq = o.sur_sq;
    } else {
      for (std::size_t t = 0; t < o.sur_sum.size(); ++t) {
        sur_sum[t] += o.sur_sum[t];
        sur_sq[t] += o.sur_sq[t];
      }
    }
  }
};

class Experiment {
 public:
  Experiment(const ExperimentConfig& cfg, int n)
      : cfg_(cfg),
        n_(n),
        rd_(make_representation_data(cfg.gamma, cfg.ell)),
        ring_(build_ring(cfg.gamma, cfg.ell, cfg.k)),
        space_(ring_, static_cast<std::size_t>(n), cfg.gammas),
        actions_(ring_->module_actions(static_cast<std::size_t>(n))),
        ctx_(rd_, cfg.k, cfg.gammas) {
    if (n < 0) throw ConfigError("n must be nonnegative");
    for (const auto& t : cfg.targets) targets_.push_back(Fingerprint::parse(t, rd_->size(), cfg.k));
  }

  const RelatorSpace& space() const { return space_; }
  const TheoryContext& theory() const { return ctx_; }
  const std::vector<Fingerprint>& targets() const { return targets_; }
  const RepresentationData& rep() const { return *rd_; }

  bool exhaustive_feasible(u64 limit) const {
    return saturating_pow(cfg_.ell, static_cast<unsigned>(space_.log_size()), limit) <= limit;
  }
  u64 exhaustive_size() const { return checked_pow(cfg_.ell, static_cast<unsigned>(space_.log_size()), UINT64_MAX / 2); }

  Fingerprint classify(const RelatorSample& s) const {
    return fingerprint(cokernel(ring_, s, actions_, false).module, *rd_);
  }

  void accumulate(Tally& t, const RelatorSample& s) const {
    const Fingerprint f = classify(s);
    const std::string id = f.class_id();
    ++t.total;
    ++t.counts[id];
    if (!t.fps.count(id)) t.fps.emplace(id, f);
    if (t.sur_sum.empty()) {
      t.sur_sum.assign(targets_.size(), 0);
      t.sur_sq.assign(targets_.size(), 0);
    }
    if (cfg_.moments)
      for (std::size_t j = 0; j < targets_.size(); ++j) {
        const Int c = sur_count_closed(f, targets_[j], *rd_);
        t.sur_sum[j] += c;
        t.sur_sq[j] += c * c;
      }
  }

  // Samples [begin, end) of stream 0, or tuple indices when exhaustive.
  Tally run_range(u64 begin, u64 end, bool exhaustive) const {
    Tally t;
    t.sur_sum.assign(targets_.size(), 0);
    t.sur_sq.assign(targets_.size(), 0);
    for (u64 i = begin; i < end; ++i) {
      if (exhaustive) {
        accumulate(t, space_.at(i));
      } else {
        PhiloxStream rng(cfg_.seed, 0, i);
        accumulate(t, space_.sample(rng));
      }
    }
    return t;
  }

  Tally run(u64 total, bool exhaustive, unsigned workers) const {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<u64>(1, total / 64))));
    std::vector<Tally> parts(workers);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const u64 b = total * w / workers, e = total * (w + 1) / workers;
      pool.emplace_back([&, w, b, e] {
        try {
          parts[w] = run_range(b, e, exhaustive);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& ep : errors)
      if (ep) std::rethrow_exception(ep);
    Tally out;
    out.sur_sum.assign(targets_.size(), 0);
    out.sur_sq.assign(targets_.size(), 0);
    for (const auto& p : parts) out.merge(p);
    return out;
  }

 private:
  const ExperimentConfig& cfg_;
  int n_;
  RepPtr rd_;
  RingPtr ring_;
  RelatorSpace space_;
  std::vector<Mat> actions_;
  TheoryContext ctx_;
  std::vector<Fingerprint> targets_;
};

struct ClassRow {
  std::string id;
  u64 count = 0;
  Rational freq_exact = 0;
  double freq = 0;
  WilsonInterval ci;
  Rational theory = 0;
  std::optional<double> zscore;
  bool in_catalog = true;
};

struct MomentRow {
  std::string target;
  Rational mean_exact = 0;
  double mean = 0, se = 0;
  Rational finite_n = 0, limit = 0;
  std::optional<double> zscore;
  bool reconstruction_exact = true;  // sum_A |Sur(A,H)| freq(A) == mean
};

struct RunReport {
  int n = 0;
  bool exhaustive = false;
  std::string fallback_warning;
  u64 total = 0;
  std::vector<ClassRow> classes;
  u64 other_count = 0;  // classes outside the catalog bound
  std::vector<MomentRow> moments;
  Rational trivial_exact = 0;
  double trivial_limit = 0;
  bool all_exact = true;  // exhaustive: every frequency equals theory
};

inline std::optional<double> z_of(double diff, double se) {
  if (se > 0) return std::fabs(diff) / se;
  if (diff == 0) return 0.0;
  return std::nullopt;
}

inline RunReport run_experiment(const ExperimentConfig& cfg, int n) {
  Experiment ex(cfg, n);
  RunReport rep;
  rep.n = n;
  bool exhaustive = cfg.exhaustive;
  if (exhaustive && !ex.exhaustive_feasible(cfg.exhaustive_limit)) {
    exhaustive = false;
    rep.fallback_warning = "tuple space exceeds " + std::to_string(cfg.exhaustive_limit) + "; sampled instead";
  }
  rep.exhaustive = exhaustive;
  const u64 total = exhaustive ? ex.exhaustive_size() : cfg.samples;
  if (total == 0) throw ConfigError("samples must be at least 1");
  const Tally t = ex.run(total, exhaustive, cfg.workers);
  rep.total = t.total;
  const int max_rank = cfg.catalog_max_rank < 0 ? n : cfg.catalog_max_rank;
  const double N = static_cast<double>(t.total);

  std::map<std::string, Fingerprint> rows = t.fps;
  for (const auto& f : ex.targets()) rows.emplace(f.class_id(), f);
  if (cfg.probabilities)
    for (const auto& [id, f] : rows) {
      ClassRow r;
      r.id = id;
      auto it = t.counts.find(id);
      r.count = it == t.counts.end() ? 0 : it->second;
      r.in_catalog = fp_admissible(f) && fp_rank(f, ex.rep()) <= max_rank;
      if (!r.in_catalog && r.count) rep.other_count += r.count;
      r.freq_exact = Rational(Int(r.count), Int(t.total));
      r.freq = static_cast<double>(r.count) / N;
      r.ci = wilson(r.count, t.total);
      r.theory = finite_n_probability(ex.theory(), n, f).value;
      const double p = to_double(r.theory);
      r.zscore = z_of(r.freq - p, std::sqrt(p * (1 - p) / N));
      if (exhaustive && r.freq_exact != r.theory) rep.all_exact = false;
      rep.classes.push_back(std::move(r));
    }
  if (cfg.moments)
    for (std::size_t j = 0; j < ex.targets().size(); ++j) {
      const Fingerprint& H = ex.targets()[j];
      MomentRow m;
      m.target = H.class_id();
      m.mean_exact = Rational(t.sur_sum[j], Int(t.total));
      m.mean = to_double(m.mean_exact);
      const Rational var_num = Rational(t.sur_sq[j], Int(t.total)) - m.mean_exact * m.mean_exact;
      const double var = t.total > 1 ? to_double(var_num) * N / (N - 1) : 0.0;
      m.se = std::sqrt(std::max(0.0, var) / N);
      m.finite_n = finite_n_moment(ex.theory(), n, H);
      m.limit = theoretical_moment(ex.theory(), H);
      m.zscore = z_of(m.mean - to_double(m.finite_n), m.se);
      Rational recon = 0;
      for (const auto& [id, c] : t.counts)
        recon += Rational(sur_count_closed(t.fps.at(id), H, ex.rep()) * Int(c), Int(t.total));
      m.reconstruction_exact = recon == m.mean_exact;
      if (exhaustive && m.mean_exact != m.finite_n) rep.all_exact = false;
      rep.moments.push_back(std::move(m));
    }
  const Fingerprint zero(ex.rep().size(), cfg.k);
  rep.trivial_exact = finite_n_probability(ex.theory(), n, zero).value;
  rep.trivial_limit = limit_probability(ex.theory(), zero, cfg.truncation).value_float;
  return rep;
}

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["mode"] = r.exhaustive ? "exhaustive" : "sampled";
  if (!r.fallback_warning.empty()) j["warning"] = r.fallback_warning;
  j["total"] = r.total;
  j["classes"] = nlohmann::json::array();
  for (const auto& c : r.classes) {
    nlohmann::json e;
    e["class_id"] = c.id;
    e["count"] = c.count;
    e["freq"] = c.freq;
    e["freq_exact"] = to_string(c.freq_exact);
    e["wilson_lo"] = c.ci.lo;
    e["wilson_hi"] = c.ci.hi;
    e["theory"] = to_string(c.theory);
    e["theory_float"] = to_double(c.theory);
    e["zscore"] = c.zscore ? nlohmann::json(*c.zscore) : nlohmann::json(nullptr);
    e["in_catalog"] = c.in_catalog;
    if (r.exhaustive) e["match"] = c.freq_exact == c.theory ? "EXACT" : "MISMATCH";
    j["classes"].push_back(e);
  }
  j["other_count"] = r.other_count;
  j["moments"] = nlohmann::json::array();
  for (const auto& m : r.moments) {
    nlohmann::json e;
    e["target"] = m.target;
    e["mean"] = m.mean;
    e["mean_exact"] = to_string(m.mean_exact);
    e["se"] = m.se;
    e["finite_n"] = to_string(m.finite_n);
    e["limit"] = to_string(m.limit);
    e["zscore"] = m.zscore ? nlohmann::json(*m.zscore) : nlohmann::json(nullptr);
    e["reconstruction_exact"] = m.reconstruction_exact;
    if (r.exhaustive) e["match"] = m.mean_exact == m.finite_n ? "EXACT" : "MISMATCH";
    j["moments"].push_back(e);
  }
  j["trivial_finite_n"] = to_string(r.trivial_exact);
  j["trivial_limit"] = r.trivial_limit;
  if (r.exhaustive) j["match"] = r.all_exact ? "EXACT" : "MISMATCH";
  return j;
}

inline std::string to_csv(const RunReport& r) {
  std::string out = "class_id,count,freq,wilson_lo,wilson_hi,theory_num,theory_den,zscore\n";
  char buf[256];
  for (const auto& c : r.classes) {
    std::snprintf(buf, sizeof buf, ",%llu,%.10g,%.10g,%.10g,", static_cast<unsigned long long>(c.count), c.freq, c.ci.lo,
                  c.ci.hi);
    out += '"' + c.id + '"' + buf + numerator(c.theory).str() + "," + denominator(c.theory).str() + ",";
    if (c.zscore) {
      std::snprintf(buf, sizeof buf, "%.6g", *c.zscore);
      out += buf;
    } else {
      out += "inf";
    }
    out += "\n";
  }
  return out;
}

struct SweepReport {
  std::vector<RunReport> runs;
  bool trivial_monotone = true;  // |P_n(trivial) - limit| nonincreasing in n
};

inline SweepReport sweep(const ExperimentConfig& cfg) {
  SweepReport s;
  for (int n : cfg.n_values) s.runs.push_back(run_experiment(cfg, n));
  for (std::size_t i = 1; i < s.runs.size(); ++i) {
    const double a = std::fabs(to_double(s.runs[i - 1].trivial_exact) - s.runs[i - 1].trivial_limit);
    const double b = std::fabs(to_double(s.runs[i].trivial_exact) - s.runs[i].trivial_limit);
    if (s.runs[i].n > s.runs[i - 1].n && b > a + 1e-15) s.trivial_monotone = false;
  }
  return s;
}

inline nlohmann::json to_json(const SweepReport& s, const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["provenance"] = {{"config_hash", config_hash(cfg.echo)}, {"seed", cfg.seed}, {"version", kVersion}};
  nlohmann::json echo = cfg.echo;
  if (echo.is_object()) echo.erase("workers");  // reports must not depend on the worker count
  j["config"] = echo;
  j["runs"] = nlohmann::json::array();
  nlohmann::json table = nlohmann::json::array();
  for (const auto& r : s.runs) {
    j["runs"].push_back(to_json(r));
    nlohmann::json row;
    row["n"] = r.n;
    row["trivial_finite_n"] = to_string(r.trivial_exact);
    row["trivial_limit"] = r.trivial_limit;
    for (const auto& c : r.classes)
      if (c.id == "0") row["trivial_freq"] = c.freq;
    nlohmann::json ms = nlohmann::json::object();
    for (const auto& m : r.moments) ms[m.target] = {{"mean", m.mean}, {"finite_n", to_string(m.finite_n)}};
    row["moments"] = ms;
    table.push_back(row);
  }
  j["convergence"] = table;
  j["trivial_monotone"] = s.trivial_monotone;
  return j;
}

}  // namespace rgm
