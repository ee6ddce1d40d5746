#include <benchmark/benchmark.h>

#include "afftrace/convex.hpp"
#include "afftrace/corpus.hpp"

namespace {

afftrace::StarBody test_ellipsoid(int m) {
  afftrace::Rng rng(17);
  return afftrace::ellipsoid_body(afftrace::Ellipsoid{rng.random_spd(m, 0.5, 2.0)});
}

void BM_Support(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const afftrace::StarBody body = test_ellipsoid(m);
  afftrace::Rng rng(23);
  Eigen::VectorXd u(m);
  for (auto _ : state) {
    for (int i = 0; i < m; ++i) u[i] = rng.uniform(-1.0, 1.0);
    benchmark::DoNotOptimize(afftrace::support(body, u.normalized()));
  }
}
BENCHMARK(BM_Support)->Arg(2)->Arg(3);

void BM_Volume(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const afftrace::StarBody body = test_ellipsoid(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(afftrace::volume(body));
  }
}
BENCHMARK(BM_Volume)->Arg(2)->Arg(3);

void BM_CentroidBody(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const afftrace::StarBody body = test_ellipsoid(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(afftrace::volume(afftrace::centroid_body(body, 2.0)));
  }
}
BENCHMARK(BM_CentroidBody)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Legendre(benchmark::State& state) {
  afftrace::Rng rng(29);
  const afftrace::HomogeneousConvex c =
      afftrace::make_quadratic_convex(rng.random_spd(3, 0.5, 2.0));
  Eigen::VectorXd x(3);
  x << 0.7, -0.4, 0.2;
  const afftrace::HomogeneousConvex conj = afftrace::legendre(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(conj.value(x));
  }
}
BENCHMARK(BM_Legendre);

}  // namespace
