#include <benchmark/benchmark.h>

#include "coleman/integrate.hpp"

using namespace coleman;

namespace {

HyperellipticCurve leprevost() {
  std::vector<mpq_class> f = {mpq_class("1/16"), mpq_class("-1/4"),
                              mpq_class("3/8"),  mpq_class("3/4"),
                              mpq_class("33/16"), mpq_class(1)};
  for (auto& q : f) q.canonicalize();
  return HyperellipticCurve::create(f, 11, 6);
}

HyperellipticCurve rank_one() {
  std::vector<mpq_class> f = {mpq_class(0),  mpq_class(60), mpq_class(-112),
                              mpq_class(65), mpq_class(-14), mpq_class(1)};
  return HyperellipticCurve::create(f, 7, 6);
}

}  // namespace

static void BM_FrobeniusAction_p7(benchmark::State& state) {
  HyperellipticCurve c = rank_one();
  for (auto _ : state) {
    FrobeniusData fd = frobenius_action(c);
    benchmark::DoNotOptimize(fd.certified_prec);
  }
}
BENCHMARK(BM_FrobeniusAction_p7)->Unit(benchmark::kMillisecond);

static void BM_FrobeniusAction_p11(benchmark::State& state) {
  HyperellipticCurve c = leprevost();
  for (auto _ : state) {
    FrobeniusData fd = frobenius_action(c);
    benchmark::DoNotOptimize(fd.certified_prec);
  }
}
BENCHMARK(BM_FrobeniusAction_p11)->Unit(benchmark::kMillisecond);

static void BM_FullPipeline_p11(benchmark::State& state) {
  for (auto _ : state) {
    HyperellipticCurve c = leprevost();
    Integrator engine(c);
    IntegralResult r = engine.integrals_basis(
        c.lift_point(mpq_class(-1), 1), c.lift_point(mpq_class(0), 3));
    benchmark::DoNotOptimize(r.audited_prec);
  }
}
BENCHMARK(BM_FullPipeline_p11)->Unit(benchmark::kMillisecond);

static void BM_FullPipeline_p7_infinity(benchmark::State& state) {
  for (auto _ : state) {
    HyperellipticCurve c = rank_one();
    Integrator engine(c);
    std::vector<Padic> e0(4, Padic::zero(7, kExactPrec));
    e0[0] = Padic::one(7);
    IntegralResult r = engine.integrate(e0, nullptr, CurvePoint::infinity(7),
                                        c.lift_point(mpq_class(3), 6));
    benchmark::DoNotOptimize(r.audited_prec);
  }
}
BENCHMARK(BM_FullPipeline_p7_infinity)->Unit(benchmark::kMillisecond);

static void BM_TinyIntegrals(benchmark::State& state) {
  HyperellipticCurve c = rank_one();
  Integrator engine(c);
  CurvePoint P = c.lift_point(mpq_class(3), 6);
  CurvePoint Q = engine.curve().frobenius_point(P);
  for (auto _ : state) {
    IntegralResult r = engine.tiny_integrals_basis(P, Q);
    benchmark::DoNotOptimize(r.values[0]);
  }
}
BENCHMARK(BM_TinyIntegrals)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
