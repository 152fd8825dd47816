#include <gtest/gtest.h>

#include <random>

#include "hurwitz/ffla/order.hpp"

using namespace hurwitz::ffla;

namespace {

Matrix companion(const FieldPtr& F, const Poly& f) {
  const std::size_t n = f.size() - 1;
  std::vector<Elem> e(n * n, 0);
  for (std::size_t i = 1; i < n; ++i) e[i * n + (i - 1)] = 1;
  for (std::size_t i = 0; i < n; ++i) e[i * n + (n - 1)] = F->neg(f[i]);
  return Matrix(F, n, std::move(e));
}

Matrix block_diag(const FieldPtr& F, const std::vector<Matrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.dim();
  std::vector<Elem> e(n * n, 0);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) e[(off + i) * n + off + j] = b.at(i, j);
    off += b.dim();
  }
  return Matrix(F, n, std::move(e));
}

Matrix jordan_block(const FieldPtr& F, std::size_t k, Elem lambda = 1) {
  std::vector<Elem> e(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    e[i * k + i] = lambda;
    if (i + 1 < k) e[i * k + i + 1] = 1;
  }
  return Matrix(F, k, std::move(e));
}

std::uint64_t brute_order(const Matrix& g) {
  Matrix acc = g;
  std::uint64_t k = 1;
  while (!acc.is_identity()) {
    acc = mat_mul(acc, g);
    ++k;
  }
  return k;
}

TEST(MinPoly, SmallCases) {
  auto F = Field::make_order(5);
  EXPECT_EQ(min_poly(Matrix::identity(F, 4)), (Poly{4, 1}));
  EXPECT_EQ(min_poly(Matrix::scalar(F, 3, 2)), (Poly{3, 1}));
}

TEST(MinPoly, CompanionMatrixRecoversPolynomial) {
  auto F = Field::make_order(3);
  PolyRing R(F);
  Poly f{2, 0, 1, 1, 0, 1};
  Matrix c = companion(F, f);
  EXPECT_EQ(min_poly(c), f);
  EXPECT_TRUE(eval_poly(f, c).is_zero());
  for (const auto& [g, m] : R.factor(f)) {
    Poly proper = R.divmod(f, g).first;
    EXPECT_FALSE(eval_poly(proper, c).is_zero());
  }
}

TEST(Order, SmallCases) {
  auto F3 = Field::make_order(3);
  EXPECT_EQ(element_order(Matrix::identity(F3, 4)), 1u);
  EXPECT_EQ(element_order(Matrix::scalar(F3, 2, 2)), 2u);
  auto F2 = Field::make_order(2);
  EXPECT_EQ(element_order(companion(F2, {1, 1, 0, 1})), 7u);
  EXPECT_THROW(element_order(Matrix(F2, 3)), std::invalid_argument);
}

TEST(Order, UnipotentPart) {
  auto F = Field::make_order(3);
  EXPECT_EQ(element_order(jordan_block(F, 3)), 3u);
  EXPECT_EQ(element_order(jordan_block(F, 4)), 9u);
  auto G = Field::make_order(2);
  EXPECT_EQ(element_order(block_diag(G, {jordan_block(G, 3), companion(G, {1, 1, 0, 1})})), 28u);
}

TEST(Order, AgreesWithBrutePowering) {
  std::mt19937_64 rng(11);
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 9u}) {
    auto F = Field::make_order(q);
    for (int t = 0; t < 30; ++t) {
      std::size_t n = 2 + rng() % 4;
      std::vector<Elem> e(n * n);
      for (auto& x : e) x = rng() % q;
      Matrix g(F, n, e);
      if (determinant(g) == 0) continue;
      EXPECT_EQ(element_order(g), brute_order(g));
    }
  }
}

TEST(Order, SoundnessProperty) {
  std::mt19937_64 rng(12);
  for (std::uint32_t q : {2u, 3u, 7u, 8u}) {
    auto F = Field::make_order(q);
    for (int t = 0; t < 15; ++t) {
      std::size_t n = 5 + rng() % 20;
      std::vector<Elem> e(n * n);
      for (auto& x : e) x = rng() % q;
      Matrix g(F, n, e);
      if (determinant(g) == 0) continue;
      const std::uint64_t o = element_order(g);
      EXPECT_TRUE(mat_pow(g, o).is_identity());
      for (const auto& [r, k] : factor_integer(mpz_class(std::to_string(o)))) {
        EXPECT_FALSE(mat_pow(g, o / r.get_ui()).is_identity());
      }
    }
  }
}

TEST(Order, Probes757) {
  // 3^9 - 1 = 2 * 13 * 757
  auto F = Field::make_order(3);
  auto big = Field::make(3, 9);
  Poly f(big->modulus().begin(), big->modulus().end());
  Matrix c = companion(F, f);
  EXPECT_EQ(element_order(c), 19682u);
  EXPECT_EQ(element_order(mat_pow(c, 26)), 757u);
}

TEST(Jordan, Partitions) {
  auto F3 = Field::make_order(3);
  EXPECT_EQ(jordan_partition(Matrix::identity(F3, 5)), (std::vector<std::size_t>{1, 1, 1, 1, 1}));
  EXPECT_EQ(jordan_partition(jordan_block(F3, 3)), (std::vector<std::size_t>{3}));
  auto F2 = Field::make_order(2);
  Matrix g = block_diag(F2, {jordan_block(F2, 2), jordan_block(F2, 1), jordan_block(F2, 2)});
  EXPECT_EQ(jordan_partition(g), (std::vector<std::size_t>{2, 2, 1}));
  EXPECT_EQ(fixed_space_dim(g), 3u);
  EXPECT_THROW(jordan_partition(companion(F2, {1, 1, 0, 1})), NotUnipotent);
}

TEST(Jordan, ConsistentUnderConjugation) {
  std::mt19937_64 rng(5);
  auto F = Field::make_order(5);
  Matrix u = block_diag(F, {jordan_block(F, 4), jordan_block(F, 2), jordan_block(F, 2), jordan_block(F, 1)});
  for (int t = 0; t < 5; ++t) {
    std::vector<Elem> e(81);
    for (auto& x : e) x = rng() % 5;
    Matrix b(F, 9, e);
    auto bi = inverse(b);
    if (!bi) continue;
    Matrix g = conjugate(u, b, *bi);
    auto parts = jordan_partition(g);
    EXPECT_EQ(parts, (std::vector<std::size_t>{4, 2, 2, 1}));
    EXPECT_EQ(fixed_space_dim(g), parts.size());
    EXPECT_EQ(element_order(g), 5u);
  }
}

}  // namespace
