#include <gtest/gtest.h>

#include <map>

#include "rgm/invariants.hpp"
#include "rgm/sampler.hpp"

using namespace rgm;

namespace {

GroupPtr grp(const char* name) { return make_group(FiniteGroupTable::builtin(name)); }

}  // namespace

TEST(Philox, KnownAnswers) {
  auto a = philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(a, (std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  auto b = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(b, (std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  auto c = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(c, (std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, StreamsAreAddressable) {
  PhiloxStream a(42, 0, 17), b(42, 0, 17), c(42, 1, 17), d(42, 0, 18);
  const u64 x = a.next_u64();
  EXPECT_EQ(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
  EXPECT_NE(x, d.next_u64());
  PhiloxStream e(1, 0, 0);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(e.uniform(7), 7u);
}

TEST(Sampler, UniformOnNinePoints) {
  auto ring = build_ring(grp("C2"), 3, 1);
  SubgroupTuple gs({trivial_subgroup(ring->gamma())});
  RelatorSpace space(ring, 1, gs);
  EXPECT_EQ(space.log_size(), 2);
  std::map<std::pair<u64, u64>, int> freq;
  const int N = 90000;
  for (int i = 0; i < N; ++i) {
    PhiloxStream rng(5, 0, static_cast<u64>(i));
    auto s = space.sample(rng);
    ASSERT_EQ(s.s1.size(), 2u);
    ASSERT_TRUE(s.s2.empty());
    ++freq[{s.s1[0][0], s.s1[1][0]}];
  }
  ASSERT_EQ(freq.size(), 9u);
  // chi-square with 8 degrees of freedom; 26.1 is the 0.999 quantile
  double chi = 0;
  for (const auto& [key, c] : freq) chi += (c - N / 9.0) * (c - N / 9.0) / (N / 9.0);
  EXPECT_LT(chi, 26.1);
}

TEST(Sampler, FixedRelatorIsZeroForSignFull) {
  auto ring = build_ring(grp("C2"), 3, 1);
  SubgroupTuple gs({full_subgroup(ring->gamma())});
  RelatorSpace space(ring, 1, gs);
  for (u64 i = 0; i < 50; ++i) {
    PhiloxStream rng(9, 0, i);
    auto s = space.sample(rng);
    EXPECT_TRUE(is_zero(s.s1[1]));
  }
}

TEST(Sampler, Deterministic) {
  auto ring = build_ring(grp("S3"), 5, 2);
  auto subs = enumerate_subgroups(ring->gamma());
  SubgroupTuple gs({subs[1], subs[3]});
  RelatorSpace space(ring, 2, gs);
  PhiloxStream a(3, 0, 11), b(3, 0, 11);
  auto x = space.sample(a), y = space.sample(b);
  EXPECT_EQ(x.s1, y.s1);
  EXPECT_EQ(x.s2, y.s2);
  EXPECT_EQ(sample_to_json(x).dump(), sample_to_json(y).dump());
}

TEST(Sampler, SlotsRespectFixedSubgroups) {
  auto ring = build_ring(grp("S3"), 7, 1);
  auto subs = enumerate_subgroups(ring->gamma());
  for (const auto& sub : subs) {
    SubgroupTuple gs({sub, sub});
    RelatorSpace space(ring, 1, gs);
    PhiloxStream rng(1, 0, 0);
    auto s = space.sample(rng);
    for (const Vec* x : {&s.s1[1], &s.s2[0]})
      for (int g : sub.members) EXPECT_EQ(ring->act(g, *x), *x);
  }
}

TEST(Cokernel, Examples) {
  auto G = grp("C2");
  {
    auto ring = build_ring(G, 3, 1);
    RelatorSample s;
    s.n = 0;
    s.s1 = {Vec{}};
    EXPECT_EQ(cokernel(ring, s).log_order(), 0);
  }
  {
    auto ring = build_ring(G, 3, 2);
    RelatorSample s;
    s.n = 2;
    s.s1 = {Vec(2, 0), Vec(2, 0), Vec(2, 0)};
    EXPECT_EQ(cokernel(ring, s).log_order(), 4);
  }
  {
    auto ring = build_ring(G, 3, 1);
    RelatorSample s;
    s.n = 1;
    s.s1 = {Vec{1}, Vec{0}};
    EXPECT_EQ(cokernel(ring, s).log_order(), 0);
  }
  {
    auto ring = build_ring(G, 3, 2);
    auto rd = make_representation_data(G, 3);
    RelatorSample s;
    s.n = 1;
    s.s1 = {Vec{3}, Vec{0}};
    GammaModule X = cokernel(ring, s);
    EXPECT_EQ(X.log_order(), 1);
    EXPECT_EQ(fingerprint(X.module, *rd).class_id(), "S1:1");
  }
}

TEST(Cokernel, HowellIsCanonical) {
  auto ring = build_ring(grp("C3"), 2, 2);
  RelatorSample a, b;
  a.n = b.n = 1;
  Vec x{1, 2};
  a.s1 = {x, Vec(2, 0)};
  b.s1 = {Vec(2, 0), ring->act(1, x)};
  EXPECT_EQ(cokernel(ring, a).relations, cokernel(ring, b).relations);
}

// gamma r - r is in B r, and r is in the span of {gamma r - r}.
TEST(Cokernel, AbelianYCollapse) {
  for (auto [name, ell] : std::vector<std::pair<const char*, u64>>{{"C2", 3}, {"S3", 5}, {"C4", 3}}) {
    auto ring = build_ring(grp(name), ell, 2);
    const Zmod& R = ring->zmod();
    const std::size_t D = ring->dim();
    for (u64 i = 0; i < 20; ++i) {
      PhiloxStream rng(77, 0, i);
      Vec r(D);
      for (auto& c : r) c = rng.uniform(R.q());
      std::vector<Vec> span_r, span_y;
      for (int g = 0; g < ring->gamma()->order(); ++g) {
        span_r.push_back(ring->act(g, r));
        span_y.push_back(vec_sub(ring->act(g, r), r, R));
      }
      const int lr = span_log_order(span_r, D, R), ly = span_log_order(span_y, D, R);
      EXPECT_EQ(lr, ly) << name;
      auto both = span_r;
      both.insert(both.end(), span_y.begin(), span_y.end());
      EXPECT_EQ(span_log_order(both, D, R), lr) << name;
    }
  }
}
