#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

#include "eulerml/errors.hpp"
#include "eulerml/parser.hpp"
#include "eulerml/systems.hpp"
#include "eulerml/tracker.hpp"

using namespace eulerml;

namespace {

const char* kUmbrella = "-x2^2*x3 + x1^2 + x2^2 + 2*x2*x3 - 2*x1 - 2*x2 - x3 + 2";

CplxPoly cp(const std::string& text, const RingPtr& ring) {
  return parsePolynomial<Cplx>(text, ring);
}

// Lagrange system of the named variety at removal level k, with fresh random
// slicing data; the slicing matrix is returned so tests can specialize b.
RemovalSystem<Cplx> levelSystem(const VarietySpec<Cplx>& X, std::size_t k,
                                RandomSource& src,
                                std::vector<std::vector<Cplx>>* gammaOut) {
  RemovalConfig<Cplx> cfg;
  cfg.k = k;
  cfg.gamma = sampleGamma<Cplx>(k, X.n, src);
  cfg.b.assign(k, Cplx(0.0, 0.0));
  DataVector<Cplx> mu = sampleData<Cplx>(X.n, k, src);
  if (gammaOut) *gammaOut = cfg.gamma;
  return lagrangeSystem(X, mu, cfg);
}

VarietySpec<Cplx> sombrilla() {
  auto ring = makeComplexRing({"x1", "x2", "x3"});
  return makeVarietySpec<Cplx>(ring, {cp(kUmbrella, ring)}, 2);
}

VarietySpec<Cplx> circle() {
  auto ring = makeComplexRing({"z1", "z2"});
  return makeVarietySpec<Cplx>(ring, {cp("z1^2 + z2^2 - 1", ring)}, 1);
}

std::vector<Cplx> sliceTarget(const std::vector<std::vector<Cplx>>& gamma,
                              const std::vector<double>& p) {
  std::vector<Cplx> b;
  for (const auto& row : gamma) {
    Cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * p[j];
    b.push_back(acc);
  }
  return b;
}

} // namespace

TEST_CASE("settings validation rejects inconsistent steps and tolerances") {
  TrackerSettings s;
  CHECK_NOTHROW(s.validate());
  s.minStep = 0.2;
  CHECK_THROWS_AS(s.validate(), ValueError);
  s = TrackerSettings{};
  s.initialStep = 0.5; // above max step
  CHECK_THROWS_AS(s.validate(), ValueError);
  s = TrackerSettings{};
  s.classifyTol = 0.0;
  CHECK_THROWS_AS(s.validate(), ValueError);
}

TEST_CASE("compiled systems evaluate values, Jacobians, and parameter rows") {
  auto ring = makeComplexRing({"x", "y"});
  CompiledSystem f({cp("x^2*y + 3*x + 5", ring)}, 2, 0);
  REQUIRE(f.size() == 1);
  CHECK(f.degrees() == std::vector<int>{3});

  const Cplx vals[2] = {Cplx(2.0, 0.0), Cplx(0.0, 1.0)};
  Cplx out;
  f.eval(vals, &out);
  CHECK(std::abs(out - Cplx(11.0, 4.0)) < 1e-14);
  Cplx jac[2];
  f.evalJacobian(vals, jac);
  CHECK(std::abs(jac[0] - Cplx(3.0, 4.0)) < 1e-14); // 2xy + 3
  CHECK(std::abs(jac[1] - Cplx(4.0, 0.0)) < 1e-14); // x^2

  auto pring = makeComplexRing({"x", "b"});
  CompiledSystem g({cp("x*b - 2", pring)}, 1, 1);
  CHECK(g.degrees() == std::vector<int>{1}); // degree in the unknowns only
  const Cplx pv[2] = {Cplx(3.0, 0.0), Cplx(0.0, 5.0)};
  g.eval(pv, &out);
  CHECK(std::abs(out - Cplx(-2.0, 15.0)) < 1e-14);
  g.evalJacobian(pv, jac);
  CHECK(std::abs(jac[0] - Cplx(0.0, 5.0)) < 1e-14);
  g.evalParamJacobian(pv, jac);
  CHECK(std::abs(jac[0] - Cplx(3.0, 0.0)) < 1e-14);
}

TEST_CASE("total-degree start enumerates the Bezout combinations") {
  RandomSource src(5);
  StartSystem ss = totalDegreeStart(std::vector<int>{2, 3}, src);
  CHECK(ss.pathCount() == 6);

  StartSystem one = totalDegreeStart(std::vector<int>{1, 1, 1}, src);
  CHECK(one.pathCount() == 1);

  CHECK_THROWS_AS(totalDegreeStart(std::vector<int>{2, 0}, src), ValueError);

  auto ring = makeComplexRing({"u", "v"});
  std::vector<CplxPoly> polys = ss.polynomials(ring);
  CompiledSystem cs(polys, 2, 0);
  for (long i = 0; i < ss.pathCount(); ++i) {
    std::vector<Cplx> x = ss.point(i);
    Cplx vals[2];
    cs.eval(x.data(), vals);
    CHECK(std::abs(vals[0]) <= 1e-12);
    CHECK(std::abs(vals[1]) <= 1e-12);
  }
  // Start points are pairwise distinct roots.
  std::vector<Cplx> first = ss.point(0), last = ss.point(5);
  CHECK(std::abs(first[1] - last[1]) > 1e-3);
}

TEST_CASE("trackPath follows a linear path to the target root") {
  auto ring = makeComplexRing({"x"});
  LinearHomotopy h({cp("x - 1", ring)}, {cp("x - 2", ring)}, Cplx(1.0, 0.0), 1);
  TrackedPoint end = trackPath(h, {Cplx(1.0, 0.0)}, TrackerSettings{});
  REQUIRE(end.status == PathStatus::converged);
  CHECK(std::abs(end.coordinates[0] - Cplx(2.0, 0.0)) < 1e-9);
  CHECK(end.residual <= 1e-8);
  CHECK(end.condition < 1e3);
}

TEST_CASE("trackPath carries both square roots to the target pair") {
  auto ring = makeComplexRing({"x"});
  RandomSource src(11);
  LinearHomotopy h({cp("x^2 - 1", ring)}, {cp("x^2 - 4", ring)},
                   src.unitComplex(), 1);
  TrackedPoint a = trackPath(h, {Cplx(1.0, 0.0)}, TrackerSettings{});
  TrackedPoint bPt = trackPath(h, {Cplx(-1.0, 0.0)}, TrackerSettings{});
  REQUIRE(a.status == PathStatus::converged);
  REQUIRE(bPt.status == PathStatus::converged);
  std::vector<double> reals = {a.coordinates[0].real(), bPt.coordinates[0].real()};
  std::sort(reals.begin(), reals.end());
  CHECK(std::abs(reals[0] + 2.0) < 1e-8);
  CHECK(std::abs(reals[1] - 2.0) < 1e-8);
  CHECK(std::abs(a.coordinates[0].imag()) < 1e-8);
}

TEST_CASE("trackPath flags a rootless target as diverged without crashing") {
  auto ring = makeComplexRing({"x"});
  LinearHomotopy h({cp("x", ring)}, {cp("1", ring)}, Cplx(1.0, 0.0), 1);
  TrackedPoint end = trackPath(h, {Cplx(0.0, 0.0)}, TrackerSettings{});
  CHECK(end.status == PathStatus::diverged);
}

TEST_CASE("trackPath rejects a start point of the wrong size") {
  auto ring = makeComplexRing({"x"});
  LinearHomotopy h({cp("x - 1", ring)}, {cp("x - 2", ring)}, Cplx(1.0, 0.0), 1);
  CHECK_THROWS_AS(trackPath(h, {Cplx(1.0, 0.0), Cplx(0.0, 0.0)},
                            TrackerSettings{}),
                  ValueError);
}

TEST_CASE("the full space has witness degree zero") {
  auto ring = makeComplexRing({"z1", "z2"});
  auto X = makeVarietySpec<Cplx>(ring, {}, 2);
  RandomSource src(23);
  RemovalSystem<Cplx> sys = levelSystem(X, 0, src, nullptr);
  WitnessSet ws = solveGeneric(sys, src);
  CHECK(ws.degree == 0);
}

TEST_CASE("circle witness degree at generic parameters matches the exact engine") {
  RandomSource src(31);
  RemovalSystem<Cplx> sys = levelSystem(circle(), 0, src, nullptr);
  WitnessSet ws = solveGeneric(sys, src);
  CHECK(ws.degree == 4); // exact-engine oracle: circle has ML degree 4
  CHECK(ws.flags.size() == ws.points.size());
  for (std::size_t i = 0; i < ws.points.size(); ++i) {
    CHECK(ws.points[i].status == PathStatus::converged);
    if (ws.flags[i]) CHECK(ws.points[i].residual <= 1e-8);
  }
}

TEST_CASE("same seed reproduces the witness set bitwise") {
  RandomSource a(47), b(47);
  RemovalSystem<Cplx> sysA = levelSystem(circle(), 1, a, nullptr);
  RemovalSystem<Cplx> sysB = levelSystem(circle(), 1, b, nullptr);
  WitnessSet wa = solveGeneric(sysA, a);
  WitnessSet wb = solveGeneric(sysB, b);
  CHECK(wa.degree == wb.degree);
  REQUIRE(wa.points.size() == wb.points.size());
  CHECK(wa.flags == wb.flags);
  for (std::size_t i = 0; i < wa.points.size(); ++i) {
    REQUIRE(wa.points[i].coordinates.size() == wb.points[i].coordinates.size());
    for (std::size_t j = 0; j < wa.points[i].coordinates.size(); ++j)
      CHECK(wa.points[i].coordinates[j] == wb.points[i].coordinates[j]);
  }
}

TEST_CASE("parameter tracking to the start parameters is the identity") {
  RandomSource src(59);
  RemovalSystem<Cplx> sys = levelSystem(circle(), 1, src, nullptr);
  WitnessSet ws = solveGeneric(sys, src);
  REQUIRE(ws.degree > 0);
  WitnessSet back = parameterTrack(ws, ws.b);
  CHECK(back.degree == ws.degree);
  std::size_t j = 0;
  for (std::size_t i = 0; i < ws.points.size(); ++i) {
    if (!ws.flags[i]) continue;
    double dist = 0.0;
    for (std::size_t c = 0; c < ws.points[i].coordinates.size(); ++c)
      dist = std::max(dist, std::abs(ws.points[i].coordinates[c] -
                                     back.points[j].coordinates[c]));
    CHECK(dist < 1e-7);
    ++j;
  }
}

TEST_CASE("sombrilla generic witness degrees match the removal table") {
  RandomSource src(20260819);
  VarietySpec<Cplx> X = sombrilla();
  const std::vector<std::size_t> expected = {3, 10, 10, 3};
  for (std::size_t k = 0; k <= 3; ++k) {
    RemovalSystem<Cplx> sys = levelSystem(X, k, src, nullptr);
    WitnessSet ws = solveGeneric(sys, src);
    CHECK(ws.degree == expected[k]);
  }
}

TEST_CASE("sombrilla witness points specialize to the pinch point counts") {
  RandomSource src(77);
  VarietySpec<Cplx> X = sombrilla();
  const std::vector<double> pinch = {1.0, 1.0, 1.0};

  std::vector<std::vector<Cplx>> gamma2;
  RemovalSystem<Cplx> sys2 = levelSystem(X, 2, src, &gamma2);
  WitnessSet ws2 = solveGeneric(sys2, src);
  REQUIRE(ws2.degree == 10);
  WitnessSet at2 = parameterTrack(ws2, sliceTarget(gamma2, pinch));
  CHECK(at2.degree == 9);

  std::vector<std::vector<Cplx>> gamma3;
  RemovalSystem<Cplx> sys3 = levelSystem(X, 3, src, &gamma3);
  WitnessSet ws3 = solveGeneric(sys3, src);
  REQUIRE(ws3.degree == 3);
  WitnessSet at3 = parameterTrack(ws3, sliceTarget(gamma3, pinch));
  CHECK(at3.degree == 1);

  // An absurdly tight tolerance overcounts: endpoints that escaped into the
  // coordinate hyperplanes have tiny but nonzero entries.
  WitnessSet loose = reclassify(at3, 1e-300);
  CHECK(loose.degree > at3.degree);
  CHECK(reclassify(at3, 1e-6).degree == 1);
}

TEST_CASE("reclassification is pure, idempotent, and monotone") {
  RandomSource src(101);
  RemovalSystem<Cplx> sys = levelSystem(circle(), 1, src, nullptr);
  WitnessSet ws = solveGeneric(sys, src);
  REQUIRE(ws.degree > 0);

  WitnessSet same = reclassify(ws, 1e-6);
  CHECK(same.degree == ws.degree);
  CHECK(same.flags == ws.flags);

  WitnessSet again = reclassify(same, 1e-6);
  CHECK(again.flags == same.flags);

  std::size_t prev = reclassify(ws, 1e-12).degree;
  for (double tol : {1e-9, 1e-6, 1e-3, 1e-1, 10.0, 1e9}) {
    std::size_t cur = reclassify(ws, tol).degree;
    CHECK(cur <= prev);
    prev = cur;
  }
  CHECK(reclassify(ws, 1e9).degree == 0);
  CHECK_THROWS_AS(reclassify(ws, 0.0), ValueError);
}

TEST_CASE("worker count respects the environment cap") {
  setenv("EULERML_THREADS", "3", 1);
  CHECK(workerCount() == 3);
  setenv("EULERML_THREADS", "0", 1);
  CHECK(workerCount() == 1);
  unsetenv("EULERML_THREADS");
  CHECK(workerCount() >= 1);
}
