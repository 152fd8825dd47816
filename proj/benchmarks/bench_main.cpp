#include <benchmark/benchmark.h>

#include <random>

#include "hurwitz/chevgrp/group.hpp"
#include "hurwitz/ffla/field.hpp"
#include "hurwitz/ffla/matrix.hpp"
#include "hurwitz/ffla/order.hpp"
#include "hurwitz/meataxe/meataxe.hpp"
#include "hurwitz/rootsys/torus.hpp"
#include "hurwitz/search/hunt.hpp"
#include "hurwitz/search/random.hpp"

using namespace hurwitz;

namespace {

ffla::Matrix random_matrix(const ffla::FieldPtr& f, std::size_t dim, std::mt19937_64& rng) {
  std::vector<ffla::Elem> e(dim * dim);
  for (auto& x : e) x = static_cast<ffla::Elem>(rng() % f->q());
  return ffla::Matrix(f, dim, std::move(e));
}

const chevgrp::GroupCtx& f4_three() {
  static const auto g =
      chevgrp::module_of(chevgrp::build_group("F4", 3, ModuleKind::M), ModuleKind::Mprime);
  return g;
}

void BM_MatMul(benchmark::State& state) {
  const auto f = ffla::Field::make_order(static_cast<std::uint32_t>(state.range(0)));
  const auto dim = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(1);
  const auto a = random_matrix(f, dim, rng), b = random_matrix(f, dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ffla::mat_mul(a, b));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MatMul)->Args({2, 26})->Args({3, 25})->Args({3, 78})->Args({2, 248})->Args({49, 52});

void BM_ElementOrder(benchmark::State& state) {
  search::ProductReplacement pr(f4_three().generators, 5);
  std::vector<ffla::Matrix> elems;
  for (int i = 0; i < 16; ++i) elems.push_back(pr.next());
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ffla::element_order(elems[i++ % elems.size()]));
}
BENCHMARK(BM_ElementOrder)->Unit(benchmark::kMicrosecond);

void BM_TorusSevens(benchmark::State& state) {
  const auto rs = rootsys::build_root_system(state.range(0) == 7 ? "E7" : "E8");
  for (auto _ : state) benchmark::DoNotOptimize(rootsys::torus_fixed_dims(rs, nullptr, 7).min_dL);
}
BENCHMARK(BM_TorusSevens)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Irreducible(benchmark::State& state) {
  const meataxe::ModuleAction act(f4_three().generators);
  std::mt19937_64 rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(meataxe::is_irreducible(act, rng).verdict);
}
BENCHMARK(BM_Irreducible)->Unit(benchmark::kMillisecond);

void BM_SplitAdjointF4Char2(benchmark::State& state) {
  const auto g = chevgrp::build_group("F4", 2, ModuleKind::L);
  const meataxe::ModuleAction act(g.generators);
  std::mt19937_64 rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(meataxe::split(act, rng).sub.dim());
}
BENCHMARK(BM_SplitAdjointF4Char2)->Unit(benchmark::kMillisecond);

// Conjugates tested per second by the F4(3) hunt loop.
void BM_HuntF4Three(benchmark::State& state) {
  const auto target = search::resolve_target("F4", 3, "2A,~A2+A1,7N");
  const auto& ctx = f4_three();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    search::HuntLimits lim;
    lim.max_iterations = 50000;
    const auto r = search::hunt(ctx, target, seed++, lim);
    state.SetItemsProcessed(state.items_processed() + static_cast<std::int64_t>(r.stats.iterations));
  }
}
BENCHMARK(BM_HuntF4Three)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
