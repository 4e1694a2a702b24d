// Numeric-engine benchmarks: generic witness solves and parameter homotopies
// on the benchmark varieties.
#include <benchmark/benchmark.h>

#include "eulerml/obstruction.hpp"
#include "eulerml/parser.hpp"
#include "eulerml/random.hpp"
#include "eulerml/ring.hpp"
#include "eulerml/systems.hpp"
#include "eulerml/tracker.hpp"

using namespace eulerml;

namespace {

VarietySpec<Cplx> circleNumeric() {
  auto ring = makeComplexRing({"z1", "z2"});
  return makeVarietySpec<Cplx>(
      ring, {parsePolynomial<Cplx>("z1^2 + z2^2 - 1", ring)}, 1);
}

VarietySpec<Rat> umbrellaExact() {
  auto ring = makeRationalRing({"x1", "x2", "x3"});
  auto f = parsePolynomial<Rat>(
      "-x2^2*x3 + x1^2 + x2^2 + 2*x2*x3 - 2*x1 - 2*x2 - x3 + 2", ring);
  return makeVarietySpec<Rat>(ring, {f}, 2);
}

// Lagrange system of the circle at removal level k with fixed random data.
RemovalSystem<Cplx> circleSystem(std::size_t k, RandomSource& source) {
  const auto X = circleNumeric();
  const auto mu = sampleData<Cplx>(X.n, k, source);
  RemovalConfig<Cplx> cfg;
  cfg.k = k;
  if (k > 0) {
    cfg.gamma = sampleGamma<Cplx>(k, X.n, source);
    cfg.b.assign(k, Cplx(0.0, 0.0));
  }
  return lagrangeSystem(X, mu, cfg);
}

} // namespace

static void BM_SolveGenericCircleLevel0(benchmark::State& state) {
  RandomSource source(11);
  const auto system = circleSystem(0, source);
  const TrackerSettings settings = collectionSettings();
  for (auto _ : state) {
    RandomSource solveSource(13);
    WitnessSet ws = solveGeneric(system, solveSource, settings);
    benchmark::DoNotOptimize(ws.degree);
  }
}
BENCHMARK(BM_SolveGenericCircleLevel0)->Unit(benchmark::kMillisecond);

static void BM_SolveGenericCircleLevel1(benchmark::State& state) {
  RandomSource source(11);
  const auto system = circleSystem(1, source);
  const TrackerSettings settings = collectionSettings();
  for (auto _ : state) {
    RandomSource solveSource(13);
    WitnessSet ws = solveGeneric(system, solveSource, settings);
    benchmark::DoNotOptimize(ws.degree);
  }
}
BENCHMARK(BM_SolveGenericCircleLevel1)->Unit(benchmark::kMillisecond);

static void BM_ParameterTrackCircleLevel1(benchmark::State& state) {
  RandomSource source(11);
  const auto system = circleSystem(1, source);
  RandomSource solveSource(13);
  const WitnessSet ws = solveGeneric(system, solveSource, collectionSettings());
  // Offsets of hyperplanes through a fixed nearby target point.
  std::vector<Cplx> target(ws.b.size());
  for (std::size_t i = 0; i < target.size(); ++i)
    target[i] = ws.b[i] + Cplx(0.25, -0.125);
  for (auto _ : state) {
    WitnessSet tracked = parameterTrack(ws, target, collectionSettings());
    benchmark::DoNotOptimize(tracked.degree);
  }
}
BENCHMARK(BM_ParameterTrackCircleLevel1)->Unit(benchmark::kMillisecond);

static void BM_BuildCollectionUmbrella(benchmark::State& state) {
  const auto X = umbrellaExact();
  for (auto _ : state) {
    WitnessCollection wc = buildCollection(X, 20260819);
    benchmark::DoNotOptimize(wc.levels.size());
  }
}
BENCHMARK(BM_BuildCollectionUmbrella)
    ->Unit(benchmark::kMillisecond)
    ->Iterations(1);

static void BM_TrackCollectionUmbrellaPinch(benchmark::State& state) {
  const auto X = umbrellaExact();
  const WitnessCollection wc = buildCollection(X, 20260819);
  const std::vector<Rat> pinch = {1, 1, 1};
  for (auto _ : state) {
    RemovalRecord rec = removalMLDegrees(wc, pinch);
    benchmark::DoNotOptimize(rec.degrees);
  }
}
BENCHMARK(BM_TrackCollectionUmbrellaPinch)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
