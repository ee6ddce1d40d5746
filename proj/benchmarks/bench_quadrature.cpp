#include <benchmark/benchmark.h>

#include <cmath>

#include "afftrace/quadrature.hpp"
#include "afftrace/star_body.hpp"

namespace {

void BM_SphereRule(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(afftrace::sphere_rule(3, order));
  }
}
BENCHMARK(BM_SphereRule)->Arg(16)->Arg(48)->Arg(96);

void BM_SphereIntegrate(benchmark::State& state) {
  const auto rule = afftrace::sphere_rule(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rule.integrate(
        [](const Eigen::VectorXd& th) { return std::exp(th[0]) * th[1] * th[1]; }));
  }
}
BENCHMARK(BM_SphereIntegrate)->Arg(48)->Arg(96);

void BM_HalfspaceIntegral(benchmark::State& state) {
  const afftrace::HalfspaceOrders orders{static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(1))};
  const afftrace::DecayProfile decay{4.0, 1.0};
  for (auto _ : state) {
    const auto r = afftrace::integrate_halfspace(
        [](double t, const Eigen::VectorXd& x) {
          const double g = (t + 1.0) * (t + 1.0) + x.squaredNorm();
          return 1.0 / (g * g);
        },
        3, decay, orders);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_HalfspaceIntegral)->Args({48, 128})->Args({96, 256});

void BM_BodyMoment(benchmark::State& state) {
  Eigen::MatrixXd M(3, 3);
  M << 1.2, 0.2, 0.0, 0.2, 0.8, 0.1, 0.0, 0.1, 1.5;
  const afftrace::StarBody e = afftrace::ellipsoid_body(afftrace::Ellipsoid{M});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        afftrace::moment_over_body_plus(e, 1.0, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_BodyMoment)->Arg(64)->Arg(128);

}  // namespace
