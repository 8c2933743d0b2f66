#include <gtest/gtest.h>

#include "rgm/lab.hpp"

using namespace rgm;

namespace {

SubgroupTuple tuple_of(const GroupPtr& G, const std::vector<int>& idx) {
  auto subs = enumerate_subgroups(G);
  std::vector<Subgroup> out;
  for (int i : idx) out.push_back(subs[static_cast<std::size_t>(i)]);
  return SubgroupTuple(out);
}

}  // namespace

TEST(Lab, ActionValidation) {
  auto G = cyclic_additive(3);
  auto gamma = make_group(FiniteGroupTable::builtin("C2"));
  EXPECT_THROW(SmallGammaGroup::from_generator_images(G, gamma, {{0, 1, 1}}), ConfigError);
  // x -> x + 1 is not an automorphism
  EXPECT_THROW(SmallGammaGroup::from_generator_images(G, gamma, {{1, 2, 0}}), ConfigError);
  // order-4 automorphism cannot come from C2
  auto Z5 = cyclic_additive(5);
  EXPECT_THROW(SmallGammaGroup::from_generator_images(Z5, gamma, {{0, 2, 4, 1, 3}}), ConfigError);
}

TEST(Lab, YMapAndCoinvariants) {
  auto s = cyclic_lab_group(3, 2, 2, "Z3 sign");
  EXPECT_EQ(y_map(1, s), (std::vector<int>{0, 1}));
  EXPECT_EQ(y_map(0, s), (std::vector<int>{0, 0}));
  EXPECT_EQ(coinvariants(s), 1);
  EXPECT_EQ(coinvariants(cyclic_lab_group(5, 2, 1, "Z5 trivial")), 5);
  EXPECT_EQ(coinvariants(cyclic_lab_group(7, 3, 2, "Z7 C3")), 1);
  EXPECT_EQ(coinvariants(heisenberg27_c2()), 1);
  EXPECT_EQ(coinvariants(a5_trivial_c7()), 60);
  EXPECT_EQ(y_image_size(s, trivial_subgroup(s.gamma())), 3);
  EXPECT_EQ(y_image_size(s, full_subgroup(s.gamma())), 1);
}

TEST(Lab, SuiteIsIrreducible) {
  for (const auto& g : builtin_irreducible_suite()) EXPECT_TRUE(is_gamma_irreducible(g)) << g.name();
  EXPECT_FALSE(is_gamma_irreducible(z9_sign()));
  EXPECT_FALSE(is_gamma_irreducible(heisenberg27_c2()));
}

TEST(Lab, EndomorphismCounts) {
  EXPECT_EQ(endomorphism_count(cyclic_lab_group(7, 3, 2, "")), 7);
  EXPECT_EQ(endomorphism_count(cyclic_lab_group(3, 2, 2, "")), 3);
  EXPECT_EQ(endomorphism_count(z3_squared_c4()), 9);
}

TEST(Lab, FixedPointPowers) {
  auto r = verify_fixed_point_powers(cyclic_lab_group(3, 2, 2, "Z3 sign"));
  EXPECT_TRUE(r.ok);
  // subgroups {1}, C2 -> |G^{Gamma_0}| = 3, 1
  ASSERT_EQ(r.sizes.size(), 2u);
  EXPECT_EQ(r.sizes[0], std::make_pair(3, 3));
  EXPECT_EQ(r.sizes[1], std::make_pair(1, 1));
  auto c3 = verify_fixed_point_powers(cyclic_lab_group(7, 3, 2, "Z7 C3"));
  EXPECT_TRUE(c3.ok);
  EXPECT_EQ(c3.h, 7);
  for (const auto& g : builtin_irreducible_suite())
    if (g.abelian()) {
      EXPECT_TRUE(verify_fixed_point_powers(g).ok) << g.name();
    }
}

TEST(Lab, YIdentityEverywhere) {
  for (const auto& g : builtin_scan_suite()) EXPECT_TRUE(verify_y_identity(g)) << g.name();
}

TEST(Lab, QuotientScans) {
  auto z9 = admissible_quotient_scan(z9_sign());
  EXPECT_TRUE(z9.admissible);
  EXPECT_EQ(z9.quotients, 3);
  EXPECT_EQ(z9.admissible_quotients, 3);
  EXPECT_TRUE(z9.closure_holds);
  auto triv = admissible_quotient_scan(cyclic_lab_group(5, 2, 1, "Z5 trivial"));
  EXPECT_FALSE(triv.admissible);
  EXPECT_FALSE(triv.coinvariants_trivial);
  EXPECT_TRUE(admissible_quotient_scan(cyclic_lab_group(7, 3, 2, "")).admissible);
  for (const auto& g : builtin_scan_suite()) {
    auto r = admissible_quotient_scan(g);
    EXPECT_TRUE(r.closure_holds) << g.name();
    EXPECT_TRUE(r.criteria_agree) << g.name();
  }
  EXPECT_THROW(admissible_quotient_scan(cyclic_lab_group(3, 6, 2, "")), CoprimalityError);
}

TEST(Lab, RelationProbabilityOracles) {
  auto s = cyclic_lab_group(3, 2, 2, "Z3 sign");
  RelationLab one(s, 1), two(s, 2);
  auto t = tuple_of(s.gamma(), {0});
  auto a = one.evaluate(1, t);
  EXPECT_EQ(a.empirical, Rational(8, 9));
  EXPECT_TRUE(a.equal);
  auto b = two.evaluate(1, t);
  EXPECT_EQ(b.formula, Rational(8, 9) * Rational(6, 9));
  EXPECT_TRUE(b.equal);
  EXPECT_EQ(two.enumerate(1, t).empirical, b.empirical);
}

TEST(Lab, DynamicProgramMatchesEnumeration) {
  for (const auto& g : builtin_irreducible_suite()) {
    if (g.order() > 9) continue;
    for (int m = 1; m <= 2; ++m) {
      RelationLab lab(g, m);
      const auto subs = enumerate_subgroups(g.gamma());
      for (int n = 1; n <= 2; ++n)
        for (std::size_t a = 0; a < subs.size(); ++a)
          for (std::size_t b = 0; b < subs.size(); ++b) {
            SubgroupTuple t({subs[a], subs[b]});
            RelationProbability dp = lab.evaluate(n, t);
            if (dp.tuples > 30000) continue;
            EXPECT_EQ(dp.empirical, lab.enumerate(n, t).empirical) << g.name();
          }
    }
  }
}

TEST(Lab, NonabelianA5) {
  auto g = a5_trivial_c7();
  auto subs = enumerate_subgroups(g.gamma());
  RelationLab one(g, 1);
  auto r = one.evaluate(1, SubgroupTuple({subs[0], subs[1]}));
  EXPECT_EQ(r.empirical, Rational(59, 60));
  EXPECT_TRUE(r.equal);
  // u = 0: Y-images are trivial, so nothing generates
  EXPECT_EQ(one.evaluate(2, SubgroupTuple({subs[0]})).empirical, 0);
  EXPECT_TRUE(one.evaluate(2, SubgroupTuple({subs[0]})).equal);
}
