#include <gtest/gtest.h>

#include "rgm/irreducible.hpp"

using namespace rgm;

namespace {

GroupPtr grp(const char* name) { return make_group(FiniteGroupTable::builtin(name)); }

}  // namespace

TEST(Irreducible, C2Mod3) {
  RepresentationData rd(grp("C2"), 3);
  ASSERT_EQ(rd.size(), 2u);
  EXPECT_TRUE(rd[0].trivial);
  EXPECT_FALSE(rd[0].in_B);
  EXPECT_EQ(rd[1].dim, 1u);
  EXPECT_EQ(rd[1].action[1](0, 0), 2u);
  EXPECT_TRUE(rd[1].in_B);
  EXPECT_EQ(rd[1].endo_order, 3u);
}

TEST(Irreducible, C3Mod2) {
  RepresentationData rd(grp("C3"), 2);
  ASSERT_EQ(rd.size(), 2u);
  EXPECT_EQ(rd[0].dim, 1u);
  EXPECT_EQ(rd[1].dim, 2u);
  EXPECT_EQ(rd[1].endo_order, 4u);
  EXPECT_EQ(rd[1].regular_multiplicity, 1);
  EXPECT_TRUE(is_irreducible_exhaustive(rd[1].rep(), rd.gamma_generators(), rd.field()));
  // brute force: equivariant 2x2 matrices over F_2
  int homs = 0;
  for (unsigned m = 0; m < 16; ++m) {
    Mat X(2, 2);
    for (std::size_t i = 0; i < 4; ++i) X.a[i] = (m >> i) & 1u;
    if (mat_mul(X, rd[1].action[1], rd.field()) == mat_mul(rd[1].action[1], X, rd.field())) ++homs;
  }
  EXPECT_EQ(homs, 4);
}

TEST(Irreducible, S3Mod7) {
  RepresentationData rd(grp("S3"), 7);
  ASSERT_EQ(rd.size(), 3u);
  EXPECT_EQ(rd[0].dim, 1u);
  EXPECT_EQ(rd[1].dim, 1u);
  EXPECT_EQ(rd[2].dim, 2u);
  EXPECT_EQ(rd[2].endo_order, 7u);
  EXPECT_EQ(rd[2].regular_multiplicity, 2);
}

TEST(Irreducible, DimensionCountAndIrreducibility) {
  for (const char* name : {"1", "C2", "C3", "C4", "C5", "C6", "C7", "C2xC2", "S3"})
    for (u64 ell : {2u, 3u, 5u, 7u, 11u, 13u}) {
      auto G = grp(name);
      if (G->order() % static_cast<int>(ell) == 0) continue;
      RepresentationData rd(G, ell);
      std::size_t total = 0;
      for (std::size_t i = 0; i < rd.size(); ++i) {
        const auto& S = rd[i];
        total += S.dim * static_cast<std::size_t>(S.regular_multiplicity);
        EXPECT_EQ(S.dim % static_cast<std::size_t>(S.endo_dim), 0u);
        // group relations
        for (int a = 0; a < G->order(); ++a)
          for (int b = 0; b < G->order(); ++b)
            ASSERT_EQ(mat_mul(S.action[a], S.action[b], rd.field()), S.action[G->mul(a, b)]);
        if (S.dim <= 4 && checked_pow(ell, static_cast<unsigned>(S.dim)) <= 50000) {
          EXPECT_TRUE(is_irreducible_exhaustive(S.rep(), rd.gamma_generators(), rd.field()))
              << name << " ell=" << ell << " i=" << i;
        }
        for (std::size_t j = 0; j < i; ++j)
          EXPECT_TRUE(hom_basis_field(rd[j].rep(), S.rep(), rd.gamma_generators(), rd.field()).empty());
      }
      EXPECT_EQ(total, static_cast<std::size_t>(G->order())) << name << " ell=" << ell;
    }
}

TEST(Irreducible, CentralIdempotentsActAsProjections) {
  auto G = grp("S3");
  RepresentationData rd(G, 5);
  const Zmod& F = rd.field();
  for (std::size_t i = 0; i < rd.size(); ++i)
    for (std::size_t j = 0; j < rd.size(); ++j) {
      const auto& S = rd[j];
      Mat M(S.dim, S.dim);
      for (int g = 0; g < 6; ++g) M = mat_add(M, mat_scale(S.action[g], rd.central_idempotent(i)[g], F), F);
      EXPECT_EQ(M, i == j ? Mat::identity(S.dim) : Mat(S.dim, S.dim));
    }
}

TEST(Irreducible, LiftedIdempotent) {
  auto G = grp("C4");
  RepresentationData rd(G, 3);
  Zmod R(3, 3);
  for (std::size_t i = 0; i < rd.size(); ++i) {
    Vec e = rd.lifted_primitive_idempotent(i, R);
    EXPECT_EQ(rd.group_ring_mul(e, e, R), e);
    for (std::size_t j = 0; j < e.size(); ++j) EXPECT_EQ(e[j] % 3, rd.primitive_idempotent(i)[j]);
  }
}

TEST(Irreducible, ProjectiveQuotients) {
  auto G = grp("C4");
  RepresentationData rd(G, 3);
  Zmod R(3, 2);
  for (std::size_t i = 0; i < rd.size(); ++i)
    for (int a = 1; a <= 2; ++a) {
      FiniteModule P = projective_quotient(rd, i, a, R);
      EXPECT_EQ(P.log_order(), a * static_cast<int>(rd[i].dim));
    }
}
