#include <benchmark/benchmark.h>

#include "mrstab/cascade.hpp"
#include "mrstab/classical.hpp"
#include "mrstab/exceptional.hpp"
#include "mrstab/meander.hpp"
#include "mrstab/oracle.hpp"
#include "mrstab/realize.hpp"
#include "mrstab/rootsys.hpp"

namespace {

using mrstab::meander::Composition;

void bm_meander_index(benchmark::State& state) {
  const Composition a{{9, 3, 4}}, b{{4, 1, 11}};
  for (auto _ : state)
    benchmark::DoNotOptimize(mrstab::meander::seaweed_index(a, b));
}
BENCHMARK(bm_meander_index);

void bm_mrs_gl(benchmark::State& state) {
  const Composition a{{9, 3, 4}}, b{{4, 1, 11}};
  for (auto _ : state) benchmark::DoNotOptimize(mrstab::meander::mrs_gl(a, b));
}
BENCHMARK(bm_mrs_gl);

void bm_build_seaweed(benchmark::State& state) {
  const Composition a{{3, 3, 2}}, b{{4, 4}};
  for (auto _ : state)
    benchmark::DoNotOptimize(mrstab::realize::build_seaweed_gl(a, b));
}
BENCHMARK(bm_build_seaweed);

void bm_index_numeric_sp8(benchmark::State& state) {
  const mrstab::classical::IsoParabolic p{-1, 8, Composition{{2, 1}}};
  const auto q = mrstab::realize::build_parabolic_iso(p);
  const mrstab::oracle::Sampler s{7};
  for (auto _ : state) benchmark::DoNotOptimize(mrstab::oracle::index_numeric(q, s));
}
BENCHMARK(bm_index_numeric_sp8);

void bm_verify_mrs_seaweed(benchmark::State& state) {
  const Composition a{{2, 2}}, b{{4}};
  const auto q = mrstab::realize::build_seaweed_gl(a, b);
  const auto m = mrstab::realize::embed_mrs_gl(mrstab::meander::mrs_gl(a, b), 4);
  const mrstab::oracle::Sampler s{7};
  for (auto _ : state) benchmark::DoNotOptimize(mrstab::oracle::verify_mrs(q, m, s));
}
BENCHMARK(bm_verify_mrs_seaweed);

void bm_cascade_e8(benchmark::State& state) {
  const mrstab::roots::RootSystem rs({mrstab::roots::Family::E, 8});
  for (auto _ : state) benchmark::DoNotOptimize(mrstab::cascade::kostant_cascade(rs));
}
BENCHMARK(bm_cascade_e8);

void bm_mrs_exceptional_table(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        mrstab::exceptional::mrs_exceptional({mrstab::roots::Family::E, 7}, {2, 3, 4, 5, 6, 7}));
}
BENCHMARK(bm_mrs_exceptional_table);

}  // namespace

BENCHMARK_MAIN();
