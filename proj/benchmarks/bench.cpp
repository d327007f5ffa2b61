#include <benchmark/benchmark.h>

#include "isonet/generators.hpp"
#include "isonet/special_nets.hpp"
#include "isonet/suites.hpp"
#include "isonet/transforms.hpp"

using namespace isonet;

namespace {

GridWindow window(const benchmark::State& s) {
  const int r = static_cast<int>(s.range(0));
  return GridWindow::symmetric(r, r);
}

void BM_Christoffel(benchmark::State& s) {
  const AffineNet f = exponential_net(20, window(s));
  for (auto _ : s) benchmark::DoNotOptimize(christoffel(f));
}
BENCHMARK(BM_Christoffel)->Arg(10)->Arg(20);

void BM_TTransform(benchmark::State& s) {
  const Connection c = build_connection(christoffel(exponential_net(20, window(s))));
  for (auto _ : s) benchmark::DoNotOptimize(t_transform(c.base, integrate_T(c, 0.1)));
}
BENCHMARK(BM_TTransform)->Arg(10)->Arg(20);

void BM_DarbouxRiccati(benchmark::State& s) {
  const ChristoffelPair p = christoffel(exponential_net(20, window(s)));
  for (auto _ : s) benchmark::DoNotOptimize(darboux_riccati(p, 0.3, Quaternion(0.2, 0.5, 0.1, -0.3)));
}
BENCHMARK(BM_DarbouxRiccati)->Arg(10)->Arg(20);

void BM_Cousin(benchmark::State& s) {
  const auto [g, h] = catenoid_pair(20, window(s));
  for (auto _ : s) benchmark::DoNotOptimize(poincare_ball(ccousin_coords(integrate_H(g, h, 0.25))));
}
BENCHMARK(BM_Cousin)->Arg(10)->Arg(20);

void BM_HorosphericalSuite(benchmark::State& s) {
  const auto [g, h] = catenoid_pair(20, window(s));
  for (auto _ : s) benchmark::DoNotOptimize(horospherical_suite(g, h, HorosphericalOptions{}));
}
BENCHMARK(BM_HorosphericalSuite)->Arg(10);

}  // namespace
BENCHMARK_MAIN();
