// Serial reference vs OpenMP versions of the batch kernels.

#include "hetnet/kernels.hpp"
#include "hetnet/presets.hpp"

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

using namespace hetnet;

namespace {

const EquivariantField& field_a() {
  static const FiniteGroup4 g = build_group(group_preset("d2z4-d2z4").presentation);
  static const EquivariantField f = assemble_field(g, field_preset("case-a").spec);
  return f;
}

std::vector<Vec4> random_points(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d;
  std::vector<Vec4> v;
  for (std::size_t k = 0; k < n; ++k) v.emplace_back(d(rng), d(rng), d(rng), d(rng));
  return v;
}

std::vector<Point2> random_section(std::size_t n) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1e-2, 1e-2);
  std::vector<Point2> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back({u(rng), u(rng)});
  return v;
}

template <bool Parallel>
void BM_Equivariance(benchmark::State& st) {
  const auto pts = random_points(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(Parallel ? equivariance_residual_parallel(field_a(), pts)
                                      : equivariance_residual_serial(field_a(), pts));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_ComposeMaps(benchmark::State& st) {
  const auto pts = random_section(static_cast<std::size_t>(st.range(0)));
  LocalMapData phi;
  phi.alpha = 3.0;
  phi.beta = 2.0;
  Eigen::Matrix2d psi;
  psi << 0.7, 0.4, -0.5, 1.1;
  for (auto _ : st)
    benchmark::DoNotOptimize(Parallel ? compose_maps_parallel(phi, psi, pts) : compose_maps_serial(phi, psi, pts));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_AttractionBatch(benchmark::State& st) {
  static const AttractionContext ctx(field_a());
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(st.range(0)));
  std::iota(seeds.begin(), seeds.end(), 1);
  AttractionOptions opt;
  opt.max_time = 100.0;
  for (auto _ : st)
    benchmark::DoNotOptimize(Parallel ? attraction_batch_parallel(ctx, seeds, 0.5, opt)
                                      : attraction_batch_serial(ctx, seeds, 0.5, opt));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_Equivariance<false>)->Arg(2000)->Name("equivariance/serial");
BENCHMARK(BM_Equivariance<true>)->Arg(2000)->Name("equivariance/parallel");
BENCHMARK(BM_ComposeMaps<false>)->Arg(200000)->Name("compose_maps/serial");
BENCHMARK(BM_ComposeMaps<true>)->Arg(200000)->Name("compose_maps/parallel");
BENCHMARK(BM_AttractionBatch<false>)->Arg(8)->Unit(benchmark::kMillisecond)->Name("attraction_batch/serial");
BENCHMARK(BM_AttractionBatch<true>)->Arg(8)->Unit(benchmark::kMillisecond)->Name("attraction_batch/parallel");

BENCHMARK_MAIN();
