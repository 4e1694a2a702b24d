// Exact-engine benchmarks: Buchberger, saturation, and symbolic ML degrees on
// the benchmark varieties. Every computation runs with the post-hoc S-pair
// self-check enabled for bases of up to 50 generators, so a run that finishes
// has re-verified all of its small bases.
#include <benchmark/benchmark.h>

#include <cstdio>

#include "eulerml/groebner.hpp"
#include "eulerml/parser.hpp"
#include "eulerml/random.hpp"
#include "eulerml/ring.hpp"
#include "eulerml/systems.hpp"

using namespace eulerml;

namespace {

GroebnerLimits checkedLimits() {
  GroebnerLimits limits;
  limits.selfCheckLimit = 50;
  return limits;
}

VarietySpec<Rat> umbrella() {
  auto ring = makeRationalRing({"x1", "x2", "x3"});
  auto f = parsePolynomial<Rat>(
      "-x2^2*x3 + x1^2 + x2^2 + 2*x2*x3 - 2*x1 - 2*x2 - x3 + 2", ring);
  return makeVarietySpec<Rat>(ring, {f}, 2);
}

VarietySpec<Rat> circle() {
  auto ring = makeRationalRing({"z1", "z2"});
  return makeVarietySpec<Rat>(ring, {parsePolynomial<Rat>("z1^2 + z2^2 - 1", ring)},
                              1);
}

DataVector<Rat> fixedData(std::size_t n, std::size_t k) {
  RandomSource source(7);
  return sampleData<Rat>(n, k, source);
}

} // namespace

static void BM_BuchbergerCircleDefining(benchmark::State& state) {
  const auto X = circle();
  for (auto _ : state) {
    GroebnerBasis gb =
        buchberger(X.generators, MonomialOrder::grevlex(), checkedLimits());
    benchmark::DoNotOptimize(gb.generators);
  }
}
BENCHMARK(BM_BuchbergerCircleDefining);

static void BM_LikelihoodIdealCircle(benchmark::State& state) {
  const auto X = circle();
  const auto mu = fixedData(X.n, 0);
  for (auto _ : state) {
    auto ideal = likelihoodIdeal(X, mu, checkedLimits());
    benchmark::DoNotOptimize(ideal);
  }
}
BENCHMARK(BM_LikelihoodIdealCircle);

static void BM_LikelihoodIdealUmbrella(benchmark::State& state) {
  const auto X = umbrella();
  const auto mu = fixedData(X.n, 0);
  for (auto _ : state) {
    auto ideal = likelihoodIdeal(X, mu, checkedLimits());
    benchmark::DoNotOptimize(ideal);
  }
}
BENCHMARK(BM_LikelihoodIdealUmbrella);

static void BM_MLDegreeSymbolicUmbrella(benchmark::State& state) {
  const auto X = umbrella();
  const auto mu = fixedData(X.n, 0);
  long degree = 0;
  for (auto _ : state) {
    degree = mlDegreeSymbolic(X, mu, checkedLimits());
    benchmark::DoNotOptimize(degree);
  }
  state.counters["ml_degree"] = static_cast<double>(degree);
}
BENCHMARK(BM_MLDegreeSymbolicUmbrella);

static void BM_SaturateUmbrellaByCoordinates(benchmark::State& state) {
  const auto X = umbrella();
  RatPoly product = RatPoly::constant(X.ring, Rat(1));
  for (std::size_t j = 0; j < X.n; ++j)
    product = product * RatPoly::variable(X.ring, j);
  for (auto _ : state) {
    auto sat = saturateByPoly(X.generators, product, checkedLimits());
    benchmark::DoNotOptimize(sat);
  }
}
BENCHMARK(BM_SaturateUmbrellaByCoordinates);

static void BM_ZeroDimDegreeUmbrellaLikelihood(benchmark::State& state) {
  const auto X = umbrella();
  const auto mu = fixedData(X.n, 0);
  const auto ideal = likelihoodIdeal(X, mu, checkedLimits());
  for (auto _ : state) {
    GroebnerBasis gb = buchberger(ideal, MonomialOrder::grevlex(), checkedLimits());
    benchmark::DoNotOptimize(zeroDimDegree(gb));
  }
}
BENCHMARK(BM_ZeroDimDegreeUmbrellaLikelihood);

int main(int argc, char** argv) {
  ::benchmark::Initialize(&argc, argv);
  if (::benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  ::benchmark::RunSpecifiedBenchmarks();
  ::benchmark::Shutdown();
  std::printf("groebner self-checks run: %ld (every basis of <= 50 generators "
              "re-verified)\n",
              groebnerSelfCheckCount());
  return groebnerSelfCheckCount() > 0 ? 0 : 1;
}
