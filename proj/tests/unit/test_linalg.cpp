#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rgm/linalg.hpp"

using namespace rgm;

namespace {

Mat random_mat(std::size_t r, std::size_t c, const Zmod& R, std::mt19937_64& rng) {
  Mat m(r, c);
  for (auto& x : m.a) x = rng() % R.q();
  return m;
}

// All elements of the subgroup generated by the rows (brute force).
std::set<Vec> enumerate_span(const std::vector<Vec>& rows, std::size_t n, const Zmod& R) {
  std::set<Vec> span{Vec(n, 0)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Vec> cur(span.begin(), span.end());
    for (const Vec& s : cur)
      for (const Vec& r : rows) {
        Vec t = vec_add(s, r, R);
        if (span.insert(t).second) grew = true;
      }
  }
  return span;
}

}  // namespace

TEST(Smith, TransformsReproduceDiagonal) {
  std::mt19937_64 rng(7);
  for (auto [ell, k] : {std::pair<u64, int>{3, 2}, {2, 3}, {5, 2}, {7, 1}}) {
    Zmod R(ell, k);
    for (int rep = 0; rep < 30; ++rep) {
      const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
      Mat A = random_mat(m, n, R, rng);
      if (rep % 3 == 0)
        for (auto& x : A.a) x = R.mul(x, ell);
      SmithForm s = smith_form(A, R, {.U = true, .Uinv = true, .V = true});
      Mat D = mat_mul(mat_mul(s.U, A, R), s.V, R);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          u64 want = (i == j && i < s.vals.size() && s.vals[i] < k) ? R.pow(s.vals[i]) : 0;
          ASSERT_EQ(D(i, j), want);
        }
      EXPECT_EQ(mat_mul(s.U, s.Uinv, R), Mat::identity(m));
      for (std::size_t t = 1; t < s.vals.size(); ++t) EXPECT_LE(s.vals[t - 1], s.vals[t]);
    }
  }
}

TEST(Kernel, MatchesBruteForce) {
  std::mt19937_64 rng(11);
  Zmod R(3, 2);
  for (int rep = 0; rep < 20; ++rep) {
    Mat A = random_mat(1 + rng() % 3, 3, R, rng);
    if (rep % 2) A.a[0] = R.mul(A.a[0], 3);
    CyclicBasis kb = kernel(A, R);
    int brute = 0;
    for (u64 a = 0; a < 9; ++a)
      for (u64 b = 0; b < 9; ++b)
        for (u64 c = 0; c < 9; ++c)
          if (is_zero(mat_vec(A, {a, b, c}, R))) ++brute;
    EXPECT_EQ(static_cast<int>(checked_pow(3, static_cast<unsigned>(kb.log_order()))), brute);
    for (const Vec& g : kb.gens) EXPECT_TRUE(is_zero(mat_vec(A, g, R)));
  }
}

TEST(Kernel, TargetRowsReadModuloSmallerPowers) {
  Zmod R(3, 2);
  // x -> 3x into Z/3 is zero, into Z/9 it is not
  Mat A(1, 1);
  A(0, 0) = 3;
  std::vector<int> e1{1}, e2{2};
  EXPECT_EQ(kernel(A, R, &e1).log_order(), 2);
  EXPECT_EQ(kernel(A, R, &e2).log_order(), 1);
}

TEST(Howell, EmptyInput) {
  Zmod R(3, 2);
  HowellForm h = howell_form({}, 2, R);
  EXPECT_TRUE(h.rows.empty());
  EXPECT_EQ(h.log_order(), 0);
}

TEST(Howell, UnitVector) {
  Zmod R(3, 2);
  HowellForm h = howell_form({{1, 0}}, 2, R);
  EXPECT_EQ(h.log_order(), 2);
  EXPECT_EQ(span_invariants(h.rows, 2, R), (std::vector<int>{2}));
}

TEST(Howell, TwoMultiplesOfEll) {
  Zmod R(3, 2);
  std::vector<Vec> rows{{3, 0}, {0, 3}};
  HowellForm h = howell_form(rows, 2, R);
  EXPECT_EQ(h.log_order(), 2);
  EXPECT_EQ(enumerate_span(rows, 2, R).size(), 9u);
  EXPECT_EQ(span_invariants(rows, 2, R), (std::vector<int>{1, 1}));
}

TEST(Howell, NonPivotUnitColumn) {
  Zmod R(3, 2);
  std::vector<Vec> rows{{3, 1}};
  HowellForm h = howell_form(rows, 2, R);
  EXPECT_EQ(enumerate_span(rows, 2, R).size(), 9u);
  EXPECT_EQ(h.log_order(), 2);
  EXPECT_EQ(span_invariants(rows, 2, R), (std::vector<int>{2}));
  // the annihilator row (0, 3) must be present
  EXPECT_EQ(h.rows.size(), 2u);
}

TEST(Howell, CanonicalUnderPermutationAndRowOps) {
  std::mt19937_64 rng(3);
  for (auto [ell, k] : {std::pair<u64, int>{3, 2}, {2, 3}, {5, 1}}) {
    Zmod R(ell, k);
    for (int rep = 0; rep < 40; ++rep) {
      const std::size_t n = 1 + rng() % 3, m = 1 + rng() % 4;
      std::vector<Vec> rows;
      for (std::size_t i = 0; i < m; ++i) {
        Vec v(n);
        for (auto& x : v) x = rng() % R.q();
        if (rng() % 2) v = vec_scale(v, ell, R);
        rows.push_back(v);
      }
      HowellForm h = howell_form(rows, n, R);
      EXPECT_EQ(howell_form(h.rows, n, R), h) << "idempotence";
      std::vector<Vec> perm = rows;
      std::shuffle(perm.begin(), perm.end(), rng);
      EXPECT_EQ(howell_form(perm, n, R), h) << "row permutation";
      if (m >= 2) {
        std::vector<Vec> ops = rows;
        ops[0] = vec_add(ops[0], vec_scale(ops[1], rng() % R.q(), R), R);
        ops[1] = vec_scale(ops[1], 1 + ell * (rng() % 3), R);  // unit multiple
        EXPECT_EQ(howell_form(ops, n, R), h) << "unimodular row ops";
      }
      if (checked_pow(R.q(), static_cast<unsigned>(n)) <= 1000) {
        EXPECT_EQ(enumerate_span(rows, n, R).size(), checked_pow(ell, static_cast<unsigned>(h.log_order())));
      }
    }
  }
}

TEST(Field, NullspaceAndInverse) {
  Zmod F(5, 1);
  Mat A(2, 3);
  A.a = {1, 2, 3, 2, 4, 2};
  auto N = nullspace_field(A, F);
  ASSERT_EQ(N.size(), 1u);
  EXPECT_TRUE(is_zero(mat_vec(A, N[0], F)));
  Mat B(2, 2);
  B.a = {1, 2, 3, 4};
  auto Bi = inverse_field(B, F);
  ASSERT_TRUE(Bi.has_value());
  EXPECT_EQ(mat_mul(B, *Bi, F), Mat::identity(2));
  Mat S(2, 2);
  S.a = {1, 2, 2, 4};
  EXPECT_FALSE(inverse_field(S, F).has_value());
}
