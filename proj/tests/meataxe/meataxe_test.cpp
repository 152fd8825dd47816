#include <gtest/gtest.h>

#include <random>

#include "hurwitz/meataxe/meataxe.hpp"

using namespace hurwitz;
using namespace hurwitz::meataxe;
using ffla::Elem;

namespace {

ModuleAction gl32() {
  auto F = ffla::Field::make_order(2);
  Matrix c = Matrix::from_rows(F, {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});
  Matrix t = Matrix::from_rows(F, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  return ModuleAction({c, t});
}

Matrix random_invertible(const ffla::FieldPtr& F, std::size_t n, std::mt19937_64& rng) {
  while (true) {
    std::vector<Elem> e(n * n);
    for (auto& x : e) x = static_cast<Elem>(rng() % F->q());
    Matrix m(F, n, e);
    if (ffla::determinant(m) != 0) return m;
  }
}

// Block upper-triangular matrix [[A, X], [0, B]].
Matrix block_upper(const Matrix& a, const Matrix& b, const Matrix* x_src) {
  const std::size_t k = a.dim(), n = a.dim() + b.dim();
  std::vector<Elem> e(n * n, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) e[i * n + j] = a.at(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) e[(k + i) * n + k + j] = b.at(i, j);
  if (x_src) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = k; j < n; ++j) e[i * n + j] = x_src->at(i, j);
  }
  return Matrix(a.field_ptr(), n, std::move(e));
}

TEST(SpinUp, Basics) {
  auto act = gl32();
  EXPECT_TRUE(spin_up({Vec{0, 0, 0}}, act).empty());
  EXPECT_EQ(spin_up({Vec{0, 1, 1}}, act).size(), 3u);
  auto F = act.field();
  Matrix u1 = Matrix::from_rows(F, {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  Matrix u2 = Matrix::from_rows(F, {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}});
  auto sub = spin_up({Vec{1, 0, 0}}, ModuleAction({u1, u2}));
  ASSERT_EQ(sub.size(), 1u);
  EXPECT_EQ(sub[0], (Vec{1, 0, 0}));
}

TEST(SpinUp, OutputIsClosed) {
  std::mt19937_64 rng(1);
  auto F = ffla::Field::make_order(3);
  Matrix a = random_invertible(F, 3, rng), b = random_invertible(F, 4, rng);
  Matrix x = random_invertible(F, 7, rng);
  ModuleAction act({block_upper(a, b, &x), block_upper(b.dim() == 4 ? a : a, b, nullptr)});
  for (int t = 0; t < 20; ++t) {
    Vec v(7);
    for (auto& c : v) c = static_cast<Elem>(rng() % 3);
    auto basis = spin_up({v}, act);
    ffla::EchelonBasis span(F, 7);
    for (const auto& r : basis) span.insert(r);
    for (const auto& r : basis) {
      for (const auto& g : act.gens()) EXPECT_TRUE(span.contains(ffla::mat_vec(g, r)));
    }
  }
}

TEST(Irreducible, NaturalModuleOfGL32) {
  auto act = gl32();
  // brute force: no nonzero proper subspace (7 lines, 7 planes) is invariant
  int invariant = 0;
  for (unsigned v = 1; v < 8; ++v) {
    Vec vec{Elem(v & 1), Elem((v >> 1) & 1), Elem((v >> 2) & 1)};
    if (spin_up({vec}, act).size() < 3) ++invariant;
    // plane = kernel of the functional v
    std::vector<Vec> plane;
    for (unsigned w = 1; w < 8; ++w) {
      if (__builtin_popcount(v & w) % 2 == 0) plane.push_back({Elem(w & 1), Elem((w >> 1) & 1), Elem((w >> 2) & 1)});
    }
    if (spin_up(plane, act).size() < 3) ++invariant;
  }
  EXPECT_EQ(invariant, 0);
  std::mt19937_64 rng(2);
  EXPECT_EQ(is_irreducible(act, rng).verdict, Verdict::Irreducible);
}

TEST(Irreducible, DirectSumIsReducible) {
  std::mt19937_64 rng(3);
  auto act3 = gl32();
  std::vector<Matrix> gens;
  for (const auto& g : act3.gens()) gens.push_back(block_upper(g, g, nullptr));
  auto r = is_irreducible(ModuleAction(gens), rng);
  ASSERT_EQ(r.verdict, Verdict::Reducible);
  EXPECT_EQ(r.subspace.size(), 3u);
}

TEST(Irreducible, NeverClaimsIrreducibleForBlockTriangular) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    auto F = ffla::Field::make_order(t % 2 ? 2 : 5);
    const std::size_t k = 1 + rng() % 4, m = 1 + rng() % 4;
    std::vector<Matrix> gens;
    for (int g = 0; g < 2; ++g) {
      Matrix x = random_invertible(F, k + m, rng);
      gens.push_back(block_upper(random_invertible(F, k, rng), random_invertible(F, m, rng), &x));
    }
    auto r = is_irreducible(ModuleAction(gens), rng, 20);
    EXPECT_NE(r.verdict, Verdict::Irreducible);
    if (r.verdict == Verdict::Reducible) {
      EXPECT_GT(r.subspace.size(), 0u);
      EXPECT_LT(r.subspace.size(), k + m);
      EXPECT_EQ(spin_up(r.subspace, ModuleAction(gens)).size(), r.subspace.size());
    }
  }
}

TEST(Split, ConstructedBlocksRoundTrip) {
  std::mt19937_64 rng(5);
  auto F = ffla::Field::make_order(7);
  std::vector<Matrix> gens;
  for (int g = 0; g < 3; ++g) {
    Matrix x = random_invertible(F, 5, rng);
    gens.push_back(block_upper(random_invertible(F, 2, rng), random_invertible(F, 3, rng), &x));
  }
  ModuleAction act(gens);
  Split s = split(act, {Vec{1, 0, 0, 0, 0}, Vec{0, 1, 0, 0, 0}});
  EXPECT_EQ(s.sub.dim(), 2u);
  EXPECT_EQ(s.quotient.dim(), 3u);
  const Matrix Pinv = *ffla::inverse(s.basis_change);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Matrix h = ffla::conjugate(gens[i], s.basis_change, Pinv);
    EXPECT_EQ(leading_block(h, 2), s.sub.gens()[i]);
    EXPECT_EQ(trailing_block(h, 2), s.quotient.gens()[i]);
    for (std::size_t r = 2; r < 5; ++r)
      for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(h.at(r, c), 0);
  }
  EXPECT_THROW(split(act, {Vec{0, 0, 1, 0, 0}}), NotReducible);
  std::mt19937_64 rng2(6);
  EXPECT_THROW(split(gl32(), rng2), NotReducible);
}

}  // namespace
