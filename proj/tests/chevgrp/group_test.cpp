#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <set>

#include "hurwitz/chevgrp/group.hpp"
#include "hurwitz/meataxe/meataxe.hpp"

using namespace hurwitz;
using namespace hurwitz::chevgrp;
using ffla::Elem;

namespace {

std::size_t closure_size(const std::vector<Matrix>& gens, std::size_t cap) {
  std::set<std::vector<Elem>> seen;
  std::vector<Matrix> frontier{Matrix::identity(gens[0].field_ptr(), gens[0].dim())};
  seen.insert(frontier[0].entries());
  while (!frontier.empty() && seen.size() <= cap) {
    std::vector<Matrix> next;
    for (const auto& m : frontier) {
      for (const auto& g : gens) {
        Matrix p = ffla::mat_mul(m, g);
        if (seen.insert(p.entries()).second) next.push_back(p);
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

TEST(Group, PSL27OnAdjointHasOrder168) {
  GroupCtx g = build_group("A1", 7, ModuleKind::L);
  EXPECT_EQ(g.dim, 3u);
  EXPECT_EQ(closure_size(g.generators, 1000), 168u);
  const IntegralRep& rep = build_integral_rep("A1", ModuleKind::L);
  Matrix x = root_element(rep, g.field, 0, 1);
  Matrix n = ffla::mat_sub(x, Matrix::identity(g.field, 3));
  EXPECT_FALSE(ffla::mat_mul(n, n).is_zero());
  EXPECT_TRUE(ffla::mat_mul(ffla::mat_mul(n, n), n).is_zero());
}

TEST(Group, OneParameterSubgroupLaw) {
  std::mt19937_64 rng(1);
  for (auto [fam, kind, q] : {std::tuple{"F4", ModuleKind::M, 9u}, std::tuple{"G2", ModuleKind::L, 4u},
                              std::tuple{"E6", ModuleKind::M, 8u}}) {
    const IntegralRep& rep = build_integral_rep(fam, kind);
    auto F = ffla::Field::make_order(q);
    for (int t = 0; t < 30; ++t) {
      std::size_t r = rng() % rep.root_system().size();
      Elem a = rng() % q, b = rng() % q;
      EXPECT_EQ(ffla::mat_mul(root_element(rep, F, r, a), root_element(rep, F, r, b)),
                root_element(rep, F, r, F->add(a, b)));
    }
  }
}

TEST(Group, SteinbergRelationsSampled) {
  std::mt19937_64 rng(2);
  for (auto [fam, kind, q] : {std::tuple{"F4", ModuleKind::M, 3u}, std::tuple{"E6", ModuleKind::M, 4u},
                              std::tuple{"G2", ModuleKind::M, 5u}, std::tuple{"E7", ModuleKind::M, 2u},
                              std::tuple{"F4", ModuleKind::L, 7u}}) {
    const IntegralRep& rep = build_integral_rep(fam, kind);
    const auto& rs = rep.root_system();
    const auto& g = *rep.algebra;
    auto F = ffla::Field::make_order(q);
    int checked = 0;
    while (checked < 100) {
      std::size_t a = rng() % rs.size(), b = rng() % rs.size();
      if (b == rs.negative(a) || a == b) continue;
      IntVec two_a_b = rs.root(a), a_two_b = rs.root(b);
      for (int i = 0; i < rs.rank(); ++i) {
        two_a_b[i] = 2 * rs.root(a)[i] + rs.root(b)[i];
        a_two_b[i] = rs.root(a)[i] + 2 * rs.root(b)[i];
      }
      if (rs.index_of(two_a_b) >= 0 || rs.index_of(a_two_b) >= 0) continue;
      Elem t = 1 + rng() % (q - 1), u = 1 + rng() % (q - 1);
      Matrix xa = root_element(rep, F, a, t), xb = root_element(rep, F, b, u);
      Matrix comm = ffla::mat_mul(ffla::mat_mul(*ffla::inverse(xa), *ffla::inverse(xb)),
                                  ffla::mat_mul(xa, xb));
      const int s = rs.sum_index(a, b);
      if (s < 0) {
        EXPECT_TRUE(comm.is_identity()) << fam;
      } else {
        Elem c = F->mul(F->from_int(g.structure_constant(a, b)), F->mul(t, u));
        EXPECT_EQ(comm, root_element(rep, F, static_cast<std::size_t>(s), c)) << fam;
      }
      ++checked;
    }
  }
}

TEST(Group, TorusElementsAreDiagonal) {
  for (auto [fam, kind, q] : {std::tuple{"F4", ModuleKind::M, 5u}, std::tuple{"E6", ModuleKind::M, 7u},
                              std::tuple{"G2", ModuleKind::L, 7u}}) {
    const IntegralRep& rep = build_integral_rep(fam, kind);
    auto F = ffla::Field::make_order(q);
    const Elem lambda = F->primitive();
    for (std::size_t r = 0; r < rep.root_system().size(); r += 5) {
      Matrix h = torus_element(rep, F, r, lambda);
      const IntVec co = rep.algebra->coroot(r);
      for (std::size_t i = 0; i < rep.dim; ++i) {
        int e = 0;
        for (std::size_t k = 0; k < co.size(); ++k) e += rep.weights[i][k] * co[k];
        const Elem expect = F->exp(static_cast<std::uint64_t>(((e % int(q - 1)) + int(q - 1)) * F->log(lambda)));
        for (std::size_t j = 0; j < rep.dim; ++j) {
          ASSERT_EQ(h.at(i, j), i == j ? expect : 0) << fam << " root " << r;
        }
      }
    }
  }
}

TEST(Group, GeneratorsHaveDeterminantOne) {
  for (auto [fam, kind, q] : {std::tuple{"F4", ModuleKind::M, 3u}, std::tuple{"E6", ModuleKind::M, 4u},
                              std::tuple{"E7", ModuleKind::M, 2u}, std::tuple{"F4", ModuleKind::L, 2u}}) {
    GroupCtx g = build_group(fam, q, kind);
    EXPECT_EQ(g.generators.size(), 2u * build_integral_rep(fam, kind).root_system().rank() *
                                        g.field->n());
    for (const auto& m : g.generators) EXPECT_EQ(ffla::determinant(m), 1);
  }
}

TEST(Group, F4OverGF2AdjointHasInvariantHalf) {
  GroupCtx g = build_group("F4", 2, ModuleKind::L);
  std::mt19937_64 rng(3);
  auto s = meataxe::split(meataxe::ModuleAction(g.generators), rng);
  EXPECT_EQ(s.sub.dim(), 26u);
  EXPECT_EQ(s.quotient.dim(), 26u);
}

TEST(Group, ModuleOfReductions) {
  GroupCtx m = build_group("F4", 3, ModuleKind::M);
  GroupCtx mp = module_of(m, ModuleKind::Mprime);
  EXPECT_EQ(mp.dim, 25u);
  std::mt19937_64 rng(4);
  EXPECT_EQ(meataxe::is_irreducible(meataxe::ModuleAction(mp.generators), rng).verdict,
            meataxe::Verdict::Irreducible);
  EXPECT_THROW(module_of(build_group("F4", 5, ModuleKind::M), ModuleKind::Mprime), UnsupportedGroup);
}

TEST(Group, CacheRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "hurwitz_group_cache_test";
  std::filesystem::remove_all(dir);
  GroupCtx a = cached_group("E6", 4, ModuleKind::M, dir);
  GroupCtx b = cached_group("E6", 4, ModuleKind::M, dir);
  EXPECT_EQ(a.generators, b.generators);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(serialize_group(a), serialize_group(load_group(dir / "E6_4_M.grp")));
  std::filesystem::remove_all(dir);
}

TEST(Group, Unsupported) {
  EXPECT_THROW(build_group("E8", 2, ModuleKind::M), UnsupportedGroup);
  EXPECT_THROW(build_group("F4", 6, ModuleKind::M), UnsupportedGroup);
}

}  // namespace
