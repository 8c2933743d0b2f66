#include <gtest/gtest.h>

#include "rgm/montecarlo.hpp"

using namespace rgm;

namespace {

GroupPtr grp(const char* name) { return make_group(FiniteGroupTable::builtin(name)); }

struct Model {
  RepPtr rd;
  TheoryContext ctx;
  Model(const char* name, u64 ell, int k, const std::vector<int>& sub_idx)
      : rd(make_representation_data(grp(name), ell)), ctx(rd, k, tuple(rd->gamma(), sub_idx)) {}
  static SubgroupTuple tuple(const GroupPtr& G, const std::vector<int>& idx) {
    auto subs = enumerate_subgroups(G);
    std::vector<Subgroup> out;
    for (int i : idx) out.push_back(i < 0 ? full_subgroup(G) : subs[static_cast<std::size_t>(i)]);
    return SubgroupTuple(out);
  }
  Fingerprint fp(const std::string& id) const { return Fingerprint::parse(id, rd->size(), ctx.k()); }
};

// exact distribution of the cokernel class by full enumeration
std::map<std::string, Rational> enumerate(const Model& s, int n) {
  auto ring = build_ring(s.rd->gamma(), s.rd->ell(), s.ctx.k());
  RelatorSpace space(ring, static_cast<std::size_t>(n), s.ctx.gammas());
  const u64 total = checked_pow(s.rd->ell(), static_cast<unsigned>(space.log_size()), 2000000);
  const auto acts = ring->module_actions(static_cast<std::size_t>(n));
  std::map<std::string, u64> counts;
  for (u64 i = 0; i < total; ++i) ++counts[fingerprint(cokernel(ring, space.at(i), acts, false).module, *s.rd).class_id()];
  std::map<std::string, Rational> out;
  for (const auto& [id, c] : counts) out[id] = Rational(Int(c), Int(total));
  return out;
}

}  // namespace

TEST(Theory, SignOracles) {
  Model s("C2", 3, 1, {0});
  EXPECT_EQ(finite_n_probability(s.ctx, 1, s.fp("S1:1")).value, Rational(1, 9));
  EXPECT_EQ(finite_n_probability(s.ctx, 1, s.fp("0")).value, Rational(8, 9));
  EXPECT_EQ(finite_n_moment(s.ctx, 1, s.fp("S1:1")), Rational(2, 9));
  EXPECT_EQ(finite_n_moment(s.ctx, 1, s.fp("0")), Rational(1));
  EXPECT_EQ(theoretical_moment(s.ctx, s.fp("S1:1")), Rational(1, 3));
  auto bad = finite_n_probability(s.ctx, 1, s.fp("S0:1"));
  EXPECT_EQ(bad.value, 0);
  EXPECT_EQ(bad.zero_reason, "not admissible");
  EXPECT_EQ(theoretical_moment(s.ctx, s.fp("S0:1")), 0);
  // (3^n - 1) / 3^{n+1}
  for (int n = 1; n <= 8; ++n)
    EXPECT_EQ(finite_n_moment(s.ctx, n, s.fp("S1:1")), Rational(ipow(3, n) - 1, ipow(3, n + 1)));
}

TEST(Theory, CohenLenstraMoments) {
  Model full("C2", 3, 2, {-1}), triv("C2", 3, 2, {0});
  EXPECT_EQ(theoretical_moment(full.ctx, full.fp("S1:2")), Rational(1));
  EXPECT_EQ(theoretical_moment(triv.ctx, triv.fp("S1:2")), Rational(1, 9));
  EXPECT_EQ(theoretical_moment(triv.ctx, triv.fp("0")), Rational(1));
}

TEST(Theory, LimitTrivialSign) {
  Model s("C2", 3, 1, {0});
  auto r = limit_probability(s.ctx, s.fp("0"));
  double expect = 1;
  for (int j = 1; j < 60; ++j) expect *= 1 - std::pow(3.0, -j) / 3;
  EXPECT_NEAR(r.value_float, expect, 1e-12);
  EXPECT_LT(r.truncation_bound, 1e-11);
  // finite-n values approach the limit monotonically
  double prev = 1;
  for (int n = 2; n <= 8; ++n) {
    const double d = std::fabs(to_double(finite_n_probability(s.ctx, n, s.fp("0")).value) - r.value_float);
    EXPECT_LT(d, prev);
    prev = d;
  }
}

TEST(Theory, MassConservation) {
  for (auto [name, ell, k, idx] : std::vector<std::tuple<const char*, u64, int, std::vector<int>>>{
           {"C2", 3, 1, {0}}, {"C2", 3, 2, {-1}}, {"C3", 2, 2, {0, -1}}, {"S3", 5, 1, {0}}, {"S3", 7, 2, {1, 4}},
           {"C4", 3, 2, {0, 1, 2}}}) {
    Model s(name, ell, k, idx);
    for (int n = 0; n <= 3; ++n) {
      Catalog cat = enumerate_catalog(*s.rd, k, n);
      auto mc = mass_check(s.ctx, cat, n);
      EXPECT_TRUE(mc.complete);
      EXPECT_EQ(mc.total_exact, Rational(1)) << name << " n=" << n;
    }
  }
  Model s("C2", 3, 1, {0});
  auto mc = mass_check(s.ctx, enumerate_catalog(*s.rd, 1, 6), -1);
  EXPECT_LT(std::fabs(mc.deficit), 1e-4);
  EXPECT_GE(mc.deficit, -1e-9);
  Catalog empty;
  EXPECT_EQ(mass_check(s.ctx, empty, 2).deficit, 1.0);
}

TEST(Theory, ExhaustiveAgreement) {
  for (auto [name, ell, k, n, idx] : std::vector<std::tuple<const char*, u64, int, int, std::vector<int>>>{
           {"C2", 3, 1, 1, {0}}, {"C2", 3, 1, 2, {0, -1}}, {"C2", 3, 2, 1, {0}}, {"C2", 3, 1, 2, {-1, -1, 0}},
           {"C3", 2, 1, 1, {0}}, {"C3", 2, 1, 2, {0}}, {"C3", 2, 2, 1, {-1, 0}}, {"C4", 3, 1, 1, {1}},
           {"C2xC2", 3, 1, 1, {1, 2}}, {"C3", 7, 1, 1, {-1}}, {"C2", 5, 1, 2, {0}}}) {
    Model s(name, ell, k, idx);
    auto dist = enumerate(s, n);
    Rational total = 0;
    for (const auto& [id, p] : dist) {
      EXPECT_EQ(finite_n_probability(s.ctx, n, s.fp(id)).value, p) << name << " " << id;
      total += p;
    }
    EXPECT_EQ(total, 1);
    for (const auto& e : enumerate_catalog(*s.rd, k, n).entries) {
      if (!dist.count(e.id)) {
        EXPECT_EQ(finite_n_probability(s.ctx, n, e.fp).value, 0) << name << " " << e.id;
      }
      Rational avg = 0;
      for (const auto& [id, p] : dist) avg += p * Rational(sur_count_closed(s.fp(id), e.fp, *s.rd));
      EXPECT_EQ(avg, finite_n_moment(s.ctx, n, e.fp)) << name << " moment " << e.id;
    }
  }
}

TEST(Theory, LowerBoundAcrossN) {
  Model s("C2", 3, 1, {0, -1});
  for (const char* id : {"0", "S1:1", "S1:1.1"}) {
    double lo = 1;
    for (int n = 1; n <= 8; ++n) {
      auto p = to_double(finite_n_probability(s.ctx, n, s.fp(id)).value);
      if (p > 0) lo = std::min(lo, p);
    }
    EXPECT_GT(lo, 1e-3) << id;
  }
}

TEST(Theory, SymmetryS3) {
  auto rd = make_representation_data(grp("S3"), 5);
  auto G = rd->gamma();
  auto subs = enumerate_subgroups(G);
  Catalog cat = enumerate_catalog(*rd, 1, 2);
  // permutations of a 3-tuple and conjugates of entry 0
  for (std::size_t a = 0; a < subs.size(); ++a)
    for (std::size_t b = 0; b < subs.size(); ++b) {
      TheoryContext base(rd, 1, SubgroupTuple({subs[a], subs[b], subs[0]}));
      TheoryContext perm(rd, 1, SubgroupTuple({subs[b], subs[0], subs[a]}));
      TheoryContext conj(rd, 1, SubgroupTuple({conjugate_subgroup(subs[a], 1), subs[b], subs[0]}));
      for (const auto& e : cat.entries)
        for (int n = 1; n <= 2; ++n) {
          const auto p = finite_n_probability(base, n, e.fp).value;
          EXPECT_EQ(p, finite_n_probability(perm, n, e.fp).value);
          EXPECT_EQ(p, finite_n_probability(conj, n, e.fp).value);
          EXPECT_EQ(finite_n_moment(base, n, e.fp), finite_n_moment(perm, n, e.fp));
        }
    }
}

TEST(MonteCarlo, ExhaustiveMatchesExactly) {
  ExperimentConfig cfg;
  cfg.gamma = grp("C2");
  cfg.ell = 3;
  cfg.k = 1;
  cfg.n_values = {1};
  cfg.gammas = SubgroupTuple({trivial_subgroup(cfg.gamma)});
  cfg.targets = {"S1:1", "0"};
  cfg.exhaustive = true;
  auto r = run_experiment(cfg, 1);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.total, 9u);
  EXPECT_TRUE(r.all_exact);
  ASSERT_EQ(r.moments.size(), 2u);
  EXPECT_EQ(r.moments[0].mean_exact, Rational(2, 9));
  EXPECT_TRUE(r.moments[0].reconstruction_exact);
  auto j = to_json(r);
  EXPECT_EQ(j["classes"][0]["match"], "EXACT");
}

TEST(MonteCarlo, SampledAndDeterministic) {
  ExperimentConfig cfg;
  cfg.gamma = grp("C2");
  cfg.ell = 3;
  cfg.n_values = {1, 2, 3};
  cfg.gammas = SubgroupTuple({trivial_subgroup(cfg.gamma)});
  cfg.targets = {"S1:1"};
  cfg.samples = 20000;
  cfg.seed = 12;
  cfg.workers = 1;
  auto a = to_json(sweep(cfg), cfg).dump();
  cfg.workers = 4;
  auto b = to_json(sweep(cfg), cfg).dump();
  EXPECT_EQ(a, b);
  auto r = run_experiment(cfg, 1);
  for (const auto& c : r.classes) {
    ASSERT_TRUE(c.zscore.has_value());
    EXPECT_LT(*c.zscore, 4.5) << c.id;
  }
  u64 sum = 0;
  for (const auto& c : r.classes) sum += c.count;
  EXPECT_EQ(sum, r.total);
  EXPECT_LT(*r.moments[0].zscore, 4.5);
  EXPECT_TRUE(sweep(cfg).trivial_monotone);

  cfg.samples = 1;
  auto one = run_experiment(cfg, 2);
  int ones = 0;
  for (const auto& c : one.classes) ones += c.count == 1;
  EXPECT_EQ(ones, 1);
}

TEST(MonteCarlo, InfeasibleExhaustiveFallsBack) {
  ExperimentConfig cfg;
  cfg.gamma = grp("S3");
  cfg.ell = 5;
  cfg.n_values = {2};
  cfg.gammas = SubgroupTuple({trivial_subgroup(cfg.gamma)});
  cfg.samples = 10;
  cfg.exhaustive = true;
  auto r = run_experiment(cfg, 2);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_FALSE(r.fallback_warning.empty());
}

TEST(MonteCarlo, Wilson) {
  auto w = wilson(0, 100);
  EXPECT_EQ(w.lo, 0.0);
  EXPECT_GT(w.hi, 0.0);
  auto v = wilson(50, 100);
  EXPECT_NEAR(v.lo + v.hi, 1.0, 1e-12);
}
