#include <gtest/gtest.h>

#include "hurwitz/rootsys/lie_algebra.hpp"

using namespace hurwitz::rootsys;

namespace {

class Algebra : public ::testing::TestWithParam<const char*> {};

TEST_P(Algebra, JacobiOnAllBasisTriples) {
  auto g = build_lie_algebra(GetParam());
  const std::size_t n = g->dim();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const SparseVec& ab = g->bracket(a, b);
      for (std::size_t c = b + 1; c < n; ++c) {
        SparseVec sum = g->bracket(ab, {{static_cast<std::uint32_t>(c), 1}});
        axpy(sum, 1, g->bracket(g->bracket(b, c), {{static_cast<std::uint32_t>(a), 1}}));
        axpy(sum, 1, g->bracket(g->bracket(c, a), {{static_cast<std::uint32_t>(b), 1}}));
        ASSERT_TRUE(sum.empty()) << GetParam() << " " << a << "," << b << "," << c;
      }
    }
  }
}

TEST_P(Algebra, ChevalleyBasisRelations) {
  auto g = build_lie_algebra(GetParam());
  const RootSystem& rs = g->root_system();
  for (std::size_t r = 0; r < rs.size(); ++r) {
    for (std::size_t i = 0; i < g->rank(); ++i) {
      SparseVec expect;
      if (int c = rs.pairing(rs.root(r), static_cast<int>(i)); c != 0) {
        expect = {{static_cast<std::uint32_t>(g->e(r)), c}};
      }
      EXPECT_EQ(g->bracket(g->h(i), g->e(r)), expect);
    }
    const int s = g->coroot_sign(r);
    EXPECT_TRUE(s == 1 || s == -1);
    SparseVec h;
    const IntVec co = g->coroot(r);
    for (std::size_t i = 0; i < g->rank(); ++i) {
      if (co[i] != 0) h.push_back({static_cast<std::uint32_t>(i), s * co[i]});
    }
    EXPECT_EQ(g->bracket(g->e(r), g->e(rs.negative(r))), h);
  }
}

TEST_P(Algebra, StructureConstantsMatchStringLengths) {
  auto g = build_lie_algebra(GetParam());
  const RootSystem& rs = g->root_system();
  for (const auto& [key, n] : structure_constants(*g)) {
    const auto [a, b] = key;
    EXPECT_EQ(std::abs(n), rs.string_down(a, b) + 1);
    EXPECT_EQ(g->structure_constant(b, a), -n);
  }
}

INSTANTIATE_TEST_SUITE_P(Types, Algebra,
                         ::testing::Values("A1", "A2", "G2", "D4", "F4", "E6"));

TEST(Algebra, A1HasNoStructureConstants) {
  EXPECT_TRUE(structure_constants(*build_lie_algebra("A1")).empty());
}

TEST(Algebra, A2SimplePairIsUnit) {
  auto g = build_lie_algebra("A2");
  EXPECT_EQ(std::abs(g->structure_constant(0, 1)), 1);
}

TEST(Algebra, LargeTypesHaveConsistentConstants) {
  for (const char* t : {"E7", "E8"}) {
    auto g = build_lie_algebra(t);
    const RootSystem& rs = g->root_system();
    EXPECT_EQ(g->dim(), rs.size() + rs.rank());
    for (const auto& [key, n] : structure_constants(*g)) {
      EXPECT_EQ(std::abs(n), 1);
      EXPECT_EQ(g->structure_constant(key.second, key.first), -n);
    }
  }
}

TEST(Algebra, FoldedEmbeddingsAreFixedOrbitSums) {
  auto f4 = build_lie_algebra("F4");
  ASSERT_TRUE(f4->ambient());
  EXPECT_EQ(f4->ambient()->root_system().label(), "E6");
  const RootSystem& rs = f4->root_system();
  for (std::size_t r = 0; r < rs.size(); ++r) {
    EXPECT_EQ(f4->embedding(f4->e(r)).size(), rs.is_long(r) ? 1u : 2u);
  }
  auto g2 = build_lie_algebra("G2");
  for (std::size_t r = 0; r < g2->root_system().size(); ++r) {
    EXPECT_EQ(g2->embedding(g2->e(r)).size(), g2->root_system().is_long(r) ? 1u : 3u);
  }
}

}  // namespace
