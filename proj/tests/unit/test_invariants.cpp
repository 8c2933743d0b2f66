#include <gtest/gtest.h>

#include <random>

#include "rgm/invariants.hpp"

using namespace rgm;

namespace {

GroupPtr grp(const char* name) { return make_group(FiniteGroupTable::builtin(name)); }

Fingerprint fp(const RepresentationData& rd, const std::string& id, int k) { return Fingerprint::parse(id, rd.size(), k); }

}  // namespace

TEST(Fingerprint, ClassIdRoundTrip) {
  auto f = Fingerprint::from_parts({{}, {2, 1}, {1}}, 2);
  EXPECT_EQ(f.class_id(), "S1:2.1|S2:1");
  EXPECT_EQ(Fingerprint::parse(f.class_id(), 3, 2), f);
  EXPECT_EQ(Fingerprint(3, 2).class_id(), "0");
  EXPECT_TRUE(Fingerprint::parse("0", 3, 2).is_zero());
  EXPECT_THROW(Fingerprint::parse("S3:1", 3, 2), ConfigError);
  EXPECT_THROW(Fingerprint::parse("S1:3", 3, 2), ConfigError);
  EXPECT_THROW(Fingerprint::parse("X1:1", 3, 2), ConfigError);
  EXPECT_EQ(f.parts(1), (std::vector<int>{2, 1}));
  EXPECT_EQ(f.at(1, 1), 2);
  EXPECT_EQ(f.at(1, 2), 1);
}

TEST(Fingerprint, SignModuleMod9) {
  auto rd = make_representation_data(grp("C2"), 3);
  ModuleFactory mf(rd, 2);
  FiniteModule X = mf.build(fp(*rd, "S1:2", 2));
  EXPECT_EQ(X.log_order(), 2);
  auto f = fingerprint(X, *rd);
  EXPECT_EQ(f.d[1], (std::vector<int>{1, 1}));
  EXPECT_EQ(f.d[0], (std::vector<int>{0, 0}));
}

TEST(Fingerprint, FreeModule) {
  for (auto [name, ell] : std::vector<std::pair<const char*, u64>>{{"C2", 3}, {"C3", 2}, {"S3", 5}, {"C4", 3}}) {
    auto rd = make_representation_data(grp(name), ell);
    GroupRingB ring(rd->gamma(), ell, 2);
    FiniteModule B{rd->gamma(), ring.zmod(), std::vector<int>(2 * ring.dim(), 2), ring.module_actions(2)};
    EXPECT_EQ(fingerprint(B, *rd), free_fingerprint(2, 2, *rd)) << name;
  }
}

TEST(Fingerprint, FactoryRoundTrip) {
  auto rd = make_representation_data(grp("S3"), 5);
  ModuleFactory mf(rd, 3);
  for (const char* id : {"0", "S1:1", "S2:3.1", "S0:2|S1:1.1|S2:2"}) {
    auto f = fp(*rd, id, 3);
    EXPECT_EQ(fingerprint(mf.build(f), *rd), f) << id;
  }
}

TEST(ClosedForm, SmallOracles) {
  auto rd = make_representation_data(grp("C2"), 3);
  auto sign = fp(*rd, "S1:1", 1), sign2 = fp(*rd, "S1:1.1", 1);
  EXPECT_EQ(hom_count_closed(sign, sign, *rd), 3);
  EXPECT_EQ(sur_count_closed(sign, sign, *rd), 2);
  EXPECT_EQ(sur_count_closed(sign2, sign, *rd), 8);
  EXPECT_EQ(aut_count_closed(sign2, *rd), 48);
  EXPECT_EQ(sur_count_closed(sign, sign2, *rd), 0);
  auto z93 = fp(*rd, "S1:2.1", 2);
  EXPECT_EQ(aut_count_closed(z93, *rd), 108);

  auto rd3 = make_representation_data(grp("C3"), 2);
  auto two = fp(*rd3, "S1:1", 1);
  EXPECT_EQ(hom_count_closed(two, two, *rd3), 4);
  EXPECT_EQ(aut_count_closed(two, *rd3), 3);
}

TEST(ClosedForm, MultiplicityAndLambda) {
  auto rd = make_representation_data(grp("C2"), 3);
  EXPECT_EQ(relation_multiplicity_closed(1, fp(*rd, "S1:1", 1), 1, *rd), 0);
  EXPECT_EQ(relation_multiplicity_closed(2, fp(*rd, "S1:1", 1), 1, *rd), 1);
  EXPECT_EQ(relation_multiplicity_closed(1, fp(*rd, "S1:1", 2), 1, *rd), 1);
  EXPECT_EQ(relation_multiplicity_closed(1, fp(*rd, "S1:1", 2), 0, *rd), 0);
  EXPECT_EQ(lambda_closed(fp(*rd, "0", 1), 1, *rd), Rational(1));
  EXPECT_EQ(lambda_closed(fp(*rd, "S1:1", 1), 1, *rd), Rational(1, 3));
  EXPECT_EQ(lambda_closed(fp(*rd, "S1:1", 2), 1, *rd), Rational(1));
  EXPECT_EQ(lambda_closed(fp(*rd, "S1:1", 2), 0, *rd), Rational(0));
}

TEST(Explicit, YImageAndAdmissibility) {
  auto rd = make_representation_data(grp("C2"), 3);
  ModuleFactory mf(rd, 1);
  FiniteModule sign = mf.build(fp(*rd, "S1:1", 1));
  FiniteModule triv = mf.build(fp(*rd, "S0:1", 1));
  auto G = rd->gamma();
  EXPECT_EQ(y_image_size(sign, trivial_subgroup(G)), 3);
  EXPECT_EQ(y_image_size(sign, full_subgroup(G)), 1);
  EXPECT_EQ(y_image_size(triv, trivial_subgroup(G)), 1);
  EXPECT_TRUE(is_admissible(sign));
  EXPECT_FALSE(is_admissible(triv));
  EXPECT_FALSE(is_admissible(direct_sum(sign, triv)));
  EXPECT_EQ(fixed_points_count(sign, full_subgroup(G)), 1);
  EXPECT_EQ(fixed_points_count(triv, full_subgroup(G)), 3);
}

TEST(Explicit, RelationMultiplicity) {
  auto rd = make_representation_data(grp("C2"), 3);
  std::mt19937_64 rng(7);
  for (int k : {1, 2}) {
    ModuleFactory mf(rd, k);
    GroupRingB ring(rd->gamma(), 3, k);
    for (std::size_t n : {1u, 2u}) {
      auto H = fp(*rd, "S1:1", k);
      EXPECT_EQ(relation_multiplicity(ring, n, mf.build(H), 1, *rd, rng), relation_multiplicity_closed(n, H, 1, *rd));
    }
  }
}

TEST(Explicit, LambdaBruteMatchesClosed) {
  auto rd = make_representation_data(grp("C2"), 3);
  for (int k : {1, 2}) {
    ModuleFactory mf(rd, k);
    for (const char* id : {"0", "S1:1"}) {
      auto H = fp(*rd, id, k);
      EXPECT_EQ(lambda_brute(H, 1, mf).lambda, lambda_closed(H, 1, *rd)) << id << " k=" << k;
    }
  }
  auto rd3 = make_representation_data(grp("C3"), 2);
  ModuleFactory mf3(rd3, 1);
  for (const char* id : {"0", "S1:1"}) {
    auto H = fp(*rd3, id, 1);
    EXPECT_EQ(lambda_brute(H, 1, mf3).lambda, lambda_closed(H, 1, *rd3)) << id;
  }
}

TEST(Explicit, BruteHomOracles) {
  auto rd = make_representation_data(grp("C2"), 3);
  ModuleFactory mf(rd, 1);
  FiniteModule s2 = mf.build(fp(*rd, "S1:1.1", 1));
  FiniteModule s1 = mf.build(fp(*rd, "S1:1", 1));
  EXPECT_EQ(aut_count_brute(s2), 48);
  EXPECT_EQ(sur_count_brute(s2, s1), 8);
  EXPECT_EQ(hom_count_brute(s1, s2), 9);
}

// closed forms against enumeration and the linear-system count
class ClosedVsExplicit : public ::testing::TestWithParam<std::tuple<const char*, u64, int>> {};

TEST_P(ClosedVsExplicit, AllSmallPairs) {
  auto [name, ell, k] = GetParam();
  auto rd = make_representation_data(grp(name), ell);
  ModuleFactory mf(rd, k);
  // all fingerprints with one or two composition factors
  std::vector<Fingerprint> fs;
  fs.push_back(Fingerprint(rd->size(), k));
  for (std::size_t i = 0; i < rd->size(); ++i)
    for (int a = 1; a <= k; ++a) {
      std::vector<std::vector<int>> p(rd->size());
      p[i] = {a};
      fs.push_back(Fingerprint::from_parts(p, k));
      for (std::size_t j = i; j < rd->size(); ++j)
        for (int b = 1; b <= (j == i ? a : k); ++b) {
          auto q = p;
          q[j].push_back(b);
          fs.push_back(Fingerprint::from_parts(q, k));
        }
    }
  std::vector<int> gens = rd->gamma_generators();
  int compared = 0;
  for (const auto& fx : fs)
    for (const auto& fh : fs) {
      FiniteModule X = mf.build(fx), H = mf.build(fh);
      if (fp_log_order(fx, *rd) + fp_log_order(fh, *rd) > 8) continue;
      EXPECT_EQ(hom_count_linear(X, H, gens), hom_count_closed(fx, fh, *rd)) << fx.class_id() << " -> " << fh.class_id();
      HomEnumerator he(X, H);
      if (he.candidates(20000) > 20000) continue;
      Int homs = 0, surs = 0;
      he.for_each([&](const Mat& F) {
        ++homs;
        if (hom_is_surjective(F, H)) ++surs;
      });
      EXPECT_EQ(homs, hom_count_closed(fx, fh, *rd)) << fx.class_id() << " -> " << fh.class_id();
      EXPECT_EQ(surs, sur_count_closed(fx, fh, *rd)) << fx.class_id() << " -> " << fh.class_id();
      ++compared;
    }
  EXPECT_GT(compared, 10);
}

INSTANTIATE_TEST_SUITE_P(Groups, ClosedVsExplicit,
                         ::testing::Values(std::make_tuple("C2", 3ull, 2), std::make_tuple("C3", 2ull, 2),
                                           std::make_tuple("C4", 3ull, 1), std::make_tuple("S3", 5ull, 1),
                                           std::make_tuple("C3", 7ull, 1)));
