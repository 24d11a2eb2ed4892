#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "wakimoto/affine.hpp"
#include "wakimoto/characters.hpp"
#include "wakimoto/fields.hpp"
#include "wakimoto/linalg.hpp"
#include "wakimoto/singular.hpp"

using namespace wakimoto;

namespace {

struct World {
  A22 a22 = build_a2_2();
  std::shared_ptr<const OscillatorSystem> sys =
      std::make_shared<const OscillatorSystem>(a22.algebra, a22.sigma);
  CurrentMap currents = wakimoto_currents_a22(a22, *sys);
};

const World& world() {
  static const World w;
  return w;
}

FockSpace tensor() { return make_space(world().a22, world().sys, SpaceKind::Tensor, frac(7, 3), frac(1, 3)); }

void BM_ApplyOscillator(benchmark::State& state) {
  const auto space = tensor();
  const auto basis = basis_up_to_degree(space, Truncation{static_cast<int>(state.range(0)), 1, std::nullopt});
  const Osc g{Family::A, 1, 1};
  for (auto _ : state) {
    for (const auto& m : basis) benchmark::DoNotOptimize(apply_oscillator(g, FockVector(m), space));
  }
  state.SetItemsProcessed(state.iterations() * basis.size());
}
BENCHMARK(BM_ApplyOscillator)->Arg(2)->Arg(4);

// Lowest current, uncached: a fresh operator each iteration.
void BM_ModeOperator(benchmark::State& state) {
  const auto space = tensor();
  const auto basis = basis_up_to_degree(space, Truncation{static_cast<int>(state.range(0)), 1, std::nullopt});
  const auto& f = world().currents.at(world().a22.algebra.label(world().a22.e1_m2alpha))
                      .substitute(frac(7, 3), std::nullopt);
  for (auto _ : state) {
    ModeOperator op(f, frac(-1, 2), space);
    for (const auto& m : basis) benchmark::DoNotOptimize(op.apply(m));
  }
  state.SetItemsProcessed(state.iterations() * basis.size());
}
BENCHMARK(BM_ModeOperator)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_VerifyRelation(benchmark::State& state) {
  const auto& w = world();
  CurrentMap cur;
  for (const auto& [l, f] : w.currents) cur.emplace(l, f.substitute(frac(7, 3), std::nullopt));
  const Truncation slice{static_cast<int>(state.range(0)), 1, std::nullopt};
  for (auto _ : state) {
    Realization rho(w.a22, cur, tensor());
    benchmark::DoNotOptimize(verify_relation(rho, w.a22.e1_2alpha, frac(1, 2), w.a22.e1_m2alpha, frac(-1, 2), slice,
                                             Coeff(frac(7, 3))));
  }
}
BENCHMARK(BM_VerifyRelation)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Nullspace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(-4, 4);
  RationalMatrix m(n, n + 3);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n + 3; ++c) m(r, c) = frac(d(rng), 1 + (r + c) % 3);
  for (auto _ : state) benchmark::DoNotOptimize(nullspace(m));
}
BENCHMARK(BM_Nullspace)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_FockCharacter(benchmark::State& state) {
  const auto space = tensor();
  const Truncation t{static_cast<int>(state.range(0)), std::nullopt, -2};
  for (auto _ : state) benchmark::DoNotOptimize(fock_character(space, t));
}
BENCHMARK(BM_FockCharacter)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SingularScan(benchmark::State& state) {
  const auto& w = world();
  ScanConfig cfg;
  cfg.deg_ticks = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        find_singular(w.a22, w.sys, w.currents, SpaceKind::Restricted, -3, frac(7, 5), cfg));
  }
}
BENCHMARK(BM_SingularScan)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
