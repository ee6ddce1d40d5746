#include <benchmark/benchmark.h>

#include "afftrace/corpus.hpp"
#include "afftrace/trace.hpp"

namespace {

afftrace::TestFunction bench_extremal() {
  afftrace::ExtremalParams params;
  params.n = 3;
  params.p = 2.0;
  params.lambda = 1.4;
  params.delta = 0.9;
  params.B = (Eigen::MatrixXd(2, 2) << 1.2, 0.3, -0.1, 0.7).finished();
  params.x0 = Eigen::VectorXd::Zero(2);
  return afftrace::extremal(params);
}

void BM_GradientProfile(benchmark::State& state) {
  const afftrace::TestFunction f = bench_extremal();
  afftrace::TraceOptions opt;
  opt.orders = afftrace::HalfspaceOrders{static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(afftrace::gradient_profile(f, 2.0, opt));
  }
}
BENCHMARK(BM_GradientProfile)->Args({48, 128})->Args({96, 256})->Unit(benchmark::kMillisecond);

void BM_VerifyAffine(benchmark::State& state) {
  const afftrace::TestFunction f = bench_extremal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(afftrace::verify_affine(f, 2.0));
  }
}
BENCHMARK(BM_VerifyAffine)->Unit(benchmark::kMillisecond);

void BM_TraceNorm(benchmark::State& state) {
  const afftrace::TestFunction f = bench_extremal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(afftrace::trace_norm(f, 2.0));
  }
}
BENCHMARK(BM_TraceNorm)->Unit(benchmark::kMillisecond);

void BM_BuildCf(benchmark::State& state) {
  const afftrace::TestFunction f = bench_extremal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(afftrace::build_cf(f, 2.0));
  }
}
BENCHMARK(BM_BuildCf)->Unit(benchmark::kMillisecond);

}  // namespace
