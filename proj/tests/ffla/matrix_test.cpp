#include <gtest/gtest.h>

#include <random>

#include "hurwitz/ffla/matrix.hpp"

using namespace hurwitz::ffla;

namespace {

Matrix random_matrix(const FieldPtr& F, std::size_t n, std::mt19937_64& rng) {
  std::vector<Elem> e(n * n);
  for (auto& x : e) x = static_cast<Elem>(rng() % F->q());
  return Matrix(F, n, std::move(e));
}

TEST(Matrix, IdentityIsNeutral) {
  auto F = Field::make_order(9);
  std::mt19937_64 rng(1);
  Matrix a = random_matrix(F, 6, rng);
  EXPECT_EQ(mat_mul(Matrix::identity(F, 6), a), a);
  EXPECT_EQ(mat_mul(a, Matrix::identity(F, 6)), a);
}

TEST(Matrix, InverseOfRandomInvertible) {
  std::mt19937_64 rng(2);
  for (std::uint32_t q : {2u, 3u, 4u, 7u, 8u, 25u}) {
    auto F = Field::make_order(q);
    for (int t = 0; t < 10; ++t) {
      Matrix a = random_matrix(F, 9, rng);
      auto inv = inverse(a);
      EXPECT_EQ(inv.has_value(), determinant(a) != 0);
      if (inv) {
        EXPECT_TRUE(mat_mul(a, *inv).is_identity());
        EXPECT_TRUE(mat_mul(*inv, a).is_identity());
      }
    }
  }
}

TEST(Matrix, ProductAgreesWithNaive) {
  std::mt19937_64 rng(3);
  for (std::uint32_t q : {2u, 3u, 5u, 8u, 9u}) {
    auto F = Field::make_order(q);
    Matrix a = random_matrix(F, 11, rng), b = random_matrix(F, 11, rng);
    Matrix c = mat_mul(a, b);
    for (std::size_t i = 0; i < 11; ++i) {
      for (std::size_t j = 0; j < 11; ++j) {
        Elem s = 0;
        for (std::size_t k = 0; k < 11; ++k) s = F->add(s, F->mul(a.at(i, k), b.at(k, j)));
        ASSERT_EQ(c.at(i, j), s);
      }
    }
  }
}

TEST(Matrix, MismatchThrows) {
  auto F = Field::make_order(3);
  auto G = Field::make_order(5);
  EXPECT_THROW(mat_mul(Matrix::identity(F, 2), Matrix::identity(F, 3)), DimensionMismatch);
  EXPECT_THROW(mat_mul(Matrix::identity(F, 2), Matrix::identity(G, 2)), DimensionMismatch);
}

TEST(Matrix, CompanionOfCubicHasOrderSevenByPowering) {
  auto F = Field::make_order(2);
  // companion matrix of x^3 + x + 1 acting on columns
  Matrix c = Matrix::from_rows(F, {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});
  Matrix acc = c;
  int k = 1;
  while (!acc.is_identity()) {
    acc = mat_mul(acc, c);
    ++k;
  }
  EXPECT_EQ(k, 7);
  EXPECT_TRUE(mat_pow(c, 7).is_identity());
}

TEST(Kernel, SmallCases) {
  auto F = Field::make_order(5);
  EXPECT_EQ(kernel_dim(Matrix(F, 4)), 4u);
  EXPECT_EQ(kernel_dim(Matrix::identity(F, 4)), 0u);
  Matrix m = Matrix::from_rows(F, {{1, 2, 3, 4}, {1, 2, 3, 4}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  EXPECT_EQ(kernel_dim(m), 3u);
  for (const auto& v : kernel_basis(m)) {
    for (auto x : mat_vec(m, v)) EXPECT_EQ(x, 0);
  }
}

TEST(Kernel, RankNullity) {
  std::mt19937_64 rng(4);
  for (std::uint32_t q : {2u, 3u, 4u, 7u, 27u}) {
    auto F = Field::make_order(q);
    for (int t = 0; t < 20; ++t) {
      // low-rank products exercise nontrivial kernels
      std::size_t n = 4 + rng() % 8;
      Matrix a = random_matrix(F, n, rng);
      std::vector<Elem> e(a.entries());
      for (std::size_t i = 0; i < n; ++i) {
        if (rng() % 3 == 0) std::fill(e.begin() + i * n, e.begin() + (i + 1) * n, 0);
      }
      Matrix b = mat_mul(Matrix(F, n, e), a);
      EXPECT_EQ(rank(b) + kernel_dim(b), n);
      auto basis = kernel_basis(b);
      EXPECT_EQ(basis.size(), kernel_dim(b));
      for (const auto& v : basis) {
        for (auto x : mat_vec(b, v)) ASSERT_EQ(x, 0);
      }
    }
  }
}

TEST(FixedSpace, IdentityOnFiftyTwo) {
  auto F = Field::make_order(3);
  EXPECT_EQ(fixed_space_dim(Matrix::identity(F, 52)), 52u);
}

TEST(FixedSpace, OrderSevenInGL32ByEnumeration) {
  auto F = Field::make_order(2);
  Matrix c = Matrix::from_rows(F, {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});
  std::size_t fixed = 0;
  for (unsigned bits = 1; bits < 8; ++bits) {
    Vec v{Elem(bits & 1), Elem((bits >> 1) & 1), Elem((bits >> 2) & 1)};
    if (mat_vec(c, v) == v) ++fixed;
  }
  EXPECT_EQ(fixed, 0u);
  EXPECT_EQ(fixed_space_dim(c), 0u);
}

TEST(Echelon, InsertAndContains) {
  auto F = Field::make_order(7);
  EchelonBasis b(F, 3);
  EXPECT_TRUE(b.insert({1, 2, 3}));
  EXPECT_FALSE(b.insert({2, 4, 6}));
  EXPECT_TRUE(b.contains({3, 6, 2}));
  EXPECT_FALSE(b.contains({0, 1, 0}));
  EXPECT_TRUE(b.insert({0, 1, 0}));
  EXPECT_EQ(b.size(), 2u);
}

TEST(Echelon, ReducedRowsGiveCoordinatesAtPivots) {
  std::mt19937_64 rng(17);
  for (std::uint32_t q : {2u, 3u, 9u}) {
    auto F = Field::make_order(q);
    const std::size_t n = 12, k = 7;
    EchelonBasis b(F, n);
    std::vector<Vec> gens;
    while (b.size() < k) {
      Vec v(n);
      for (auto& x : v) x = static_cast<Elem>(rng() % q);
      if (b.insert(v)) gens.push_back(v);
    }
    const auto red = b.reduced_rows();
    ASSERT_EQ(red.size(), k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) EXPECT_EQ(red[i][b.pivots()[j]], i == j ? 1 : 0);
      EXPECT_TRUE(b.contains(red[i]));
    }
    // Coordinates of a random combination, read off at the pivots.
    std::vector<Elem> c(k);
    Vec v(n, 0);
    for (std::size_t i = 0; i < k; ++i) {
      c[i] = static_cast<Elem>(rng() % q);
      for (std::size_t t = 0; t < n; ++t) v[t] = F->add(v[t], F->mul(c[i], red[i][t]));
    }
    for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(v[b.pivots()[i]], c[i]);
  }
}

}  // namespace
