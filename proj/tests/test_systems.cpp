#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "eulerml/parser.hpp"
#include "eulerml/systems.hpp"

using namespace eulerml;

namespace {

const char* kUmbrella = "-x2^2*x3 + x1^2 + x2^2 + 2*x2*x3 - 2*x1 - 2*x2 - x3 + 2";

RatPoly qp(const std::string& text, const RingPtr& ring) {
  return parsePolynomial<Rat>(text, ring);
}

std::vector<std::string> textSet(const std::vector<RatPoly>& polys) {
  std::vector<std::string> out;
  for (const auto& p : polys) out.push_back(toText(p));
  std::sort(out.begin(), out.end());
  return out;
}

VarietySpec<Rat> umbrella() {
  auto ring = makeRationalRing({"x1", "x2", "x3"});
  return makeVarietySpecExact(ring, {qp(kUmbrella, ring)});
}

DataVector<Rat> rmu(std::vector<long> vals) {
  std::vector<Rat> entries;
  for (long v : vals) entries.push_back(Rat(v));
  return makeDataVector(std::move(entries));
}

} // namespace

TEST_CASE("variety construction computes dimension and codimension") {
  VarietySpec<Rat> X = umbrella();
  CHECK(X.n == 3);
  CHECK(X.d == 2);
  CHECK(X.c == 1);

  auto ring = makeRationalRing({"x", "y"});
  VarietySpec<Rat> full = makeVarietySpecExact(ring, {});
  CHECK(full.d == 2);
  CHECK(full.c == 0);

  CHECK_THROWS_AS(makeVarietySpecExact(ring, {qp("1", ring)}), ValueError);
  CHECK_THROWS_AS(makeVarietySpec<Rat>(ring, {}, 3), ValueError);
  // a 0-dimensional claim needs at least two generators in the plane
  CHECK_THROWS_AS(makeVarietySpec<Rat>(ring, {qp("x", ring)}, 0), ValueError);
}

TEST_CASE("data vectors reject zero entries") {
  CHECK_THROWS_AS(makeDataVector<Rat>({Rat(1), Rat(0)}), ValueError);
  CHECK(makeDataVector<Rat>({Rat(2), Rat(-3)}).entries.size() == 2);
}

TEST_CASE("singular locus of the shifted umbrella is its pinch line") {
  VarietySpec<Rat> X = umbrella();
  auto J = singularLocusIdeal(X);
  REQUIRE(J.size() == 4);
  CHECK(textSet(J) ==
        textSet({qp(kUmbrella, X.ring), qp("2*x1 - 2", X.ring),
                 qp("-2*x2*x3 + 2*x2 + 2*x3 - 2", X.ring), qp("-x2^2 + 2*x2 - 1", X.ring)}));

  GroebnerBasis gb = buchberger(J, MonomialOrder::grevlex());
  CHECK(dimension(gb) == 1);
  // every generator vanishes along the line x1 = x2 = 1
  std::vector<Rat> onLine{Rat(1), Rat(1), Rat(5)};
  for (const auto& g : J) CHECK(sgn(Rat(g.evaluate(onLine))) == 0);
  // but not at a general point of the surface
  std::vector<Rat> off{Rat(1), Rat(2), Rat(3)};
  CHECK(sgn(Rat(qp("-x2^2 + 2*x2 - 1", X.ring).evaluate(off))) != 0);
}

TEST_CASE("smooth hypersurfaces have empty singular locus") {
  auto ring = makeRationalRing({"x", "y"});
  VarietySpec<Rat> conic = makeVarietySpecExact(ring, {qp("x^2 + y^2 - 1", ring)});
  GroebnerBasis gb = buchberger(singularLocusIdeal(conic), MonomialOrder::grevlex());
  CHECK(gb.isUnitIdeal());

  VarietySpec<Rat> plane = makeVarietySpecExact(ring, {qp("x + y - 1", ring)});
  GroebnerBasis gb2 = buchberger(singularLocusIdeal(plane), MonomialOrder::grevlex());
  CHECK(gb2.isUnitIdeal());
}

TEST_CASE("likelihood ideal of the full space is the unit ideal") {
  auto ring = makeRationalRing({"z1", "z2"});
  VarietySpec<Rat> full = makeVarietySpecExact(ring, {});
  auto L = likelihoodIdeal(full, rmu({3, 7}));
  CHECK(textSet(L) == std::vector<std::string>{"1"});
  CHECK(mlDegreeSymbolic(full, rmu({3, 7})) == 0);
}

TEST_CASE("ML degree of a generic line is one") {
  auto ring = makeRationalRing({"x", "y"});
  VarietySpec<Rat> line = makeVarietySpecExact(ring, {qp("2*x + 3*y - 5", ring)});
  CHECK(mlDegreeSymbolic(line, rmu({3, 7})) == 1);
}

TEST_CASE("ML degree of the circle is four, independent of the data") {
  auto ring = makeRationalRing({"x", "y"});
  VarietySpec<Rat> circle = makeVarietySpecExact(ring, {qp("x^2 + y^2 - 1", ring)});
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    RandomSource src(seed);
    DataVector<Rat> mu = sampleData<Rat>(2, 0, src);
    CHECK(mlDegreeSymbolic(circle, mu) == 4);
  }
}

TEST_CASE("ML degree of the shifted umbrella is three") {
  VarietySpec<Rat> X = umbrella();
  RandomSource src(20260819);
  DataVector<Rat> mu = sampleData<Rat>(3, 0, src);
  CHECK(mlDegreeSymbolic(X, mu) == 3);
}

TEST_CASE("removal level zero is the identity") {
  VarietySpec<Rat> X = umbrella();
  RemovalConfig<Rat> cfg;
  cfg.k = 0;
  VarietySpec<Rat> R = removalVariety(X, cfg);
  CHECK(R.ring == X.ring);
  CHECK(R.generators.size() == X.generators.size());
  CHECK(R.d == X.d);
}

TEST_CASE("removal varieties append the slicing coordinate") {
  VarietySpec<Rat> X = umbrella();
  RandomSource src(5);
  std::vector<Rat> p{Rat(3), Rat(3), Rat(2)}; // a smooth point of the surface

  RemovalConfig<Rat> cfg;
  cfg.k = 1;
  cfg.gamma = sampleGamma<Rat>(1, 3, src);
  cfg.point = p;
  cfg.b = {Rat(0)};
  // pass the hyperplane through p
  cfg.b[0] = Rat(cfg.gamma[0][0] * p[0] + cfg.gamma[0][1] * p[1] + cfg.gamma[0][2] * p[2]);

  VarietySpec<Rat> R1 = removalVariety(X, cfg);
  CHECK(R1.n == 4);
  CHECK(R1.d == 2);
  CHECK(R1.c == 2);
  REQUIRE(R1.generators.size() == 2);
  CHECK(R1.ring->name(3) == "y");

  RemovalConfig<Rat> cfg3;
  cfg3.k = 3;
  cfg3.gamma = sampleGamma<Rat>(3, 3, src);
  cfg3.point = p;
  cfg3.b.resize(3);
  for (std::size_t i = 0; i < 3; ++i) {
    Rat acc(0);
    for (std::size_t j = 0; j < 3; ++j) acc = Rat(acc + cfg3.gamma[i][j] * p[j]);
    cfg3.b[i] = acc;
  }
  VarietySpec<Rat> R3 = removalVariety(X, cfg3);
  CHECK(R3.n == 4);
  CHECK(R3.d == 0);
  REQUIRE(R3.generators.size() == 4);

  // the lifted point (p, y = 0) lies on every generator: the slicing planes
  // pass through p and y picks up H_1(p) = 0
  std::vector<Rat> lifted{p[0], p[1], p[2], Rat(0)};
  for (const auto& g : R3.generators) CHECK(sgn(Rat(g.evaluate(lifted))) == 0);

  RemovalConfig<Rat> tooDeep;
  tooDeep.k = 4; // exceeds d + 1 = 3
  tooDeep.gamma.assign(4, {Rat(1), Rat(2), Rat(3)});
  tooDeep.b.assign(4, Rat(1));
  CHECK_THROWS_AS(removalVariety(X, tooDeep), ValueError);
}

TEST_CASE("Lagrange system of a hyperplane solves by hand") {
  auto ring = makeRationalRing({"x1", "x2"});
  VarietySpec<Rat> plane = makeVarietySpecExact(ring, {qp("x1 + x2 - 1", ring)});
  RemovalConfig<Rat> cfg; // k = 0
  RemovalSystem<Rat> sys = lagrangeSystem(plane, rmu({3, 5}), cfg);

  CHECK(sys.primalCount == 2);
  CHECK(sys.lagrangeCount == 1);
  CHECK(sys.parameterCount == 0);
  REQUIRE(sys.equations.size() == 3);
  CHECK(sys.ring->names() == std::vector<std::string>{"x1", "x2", "l1"});
  CHECK(toText(sys.equations[0]) == "x1 + x2 - 1");
  CHECK(toText(sys.equations[1]) == "x1*l1 + 3");
  CHECK(toText(sys.equations[2]) == "x2*l1 + 5");

  // hand solution: l1 = -(mu1+mu2), x = mu/(mu1+mu2)
  std::vector<Rat> sol{Rat(3) / 8, Rat(5) / 8, Rat(-8)};
  for (const auto& eq : sys.equations) CHECK(sgn(Rat(eq.evaluate(sol))) == 0);

  // and the system has exactly one solution
  GroebnerBasis gb = buchberger(sys.equations, MonomialOrder::grevlex());
  CHECK(zeroDimDegree(gb) == 1);
}

TEST_CASE("Lagrange system shapes for the umbrella") {
  VarietySpec<Rat> X = umbrella();
  RandomSource src(42);

  RemovalConfig<Rat> cfg0; // k = 0
  RemovalSystem<Rat> s0 = lagrangeSystem(X, rmu({3, 5, 7}), cfg0);
  CHECK(s0.primalCount == 3);
  CHECK(s0.lagrangeCount == 1);
  CHECK(s0.equations.size() == 4);
  CHECK(s0.ring->size() == 4);

  RemovalConfig<Rat> cfg2;
  cfg2.k = 2;
  cfg2.gamma = sampleGamma<Rat>(2, 3, src);
  cfg2.b = {Rat(1), Rat(1)}; // symbolic in the system; values unused
  cfg2.point = {Rat(3), Rat(3), Rat(2)};
  RemovalSystem<Rat> s2 = lagrangeSystem(X, rmu({3, 5, 7, 11}), cfg2);
  CHECK(s2.primalCount == 4);
  CHECK(s2.lagrangeCount == 3);
  CHECK(s2.parameterCount == 2);
  CHECK(s2.equations.size() == 7);
  CHECK(s2.ring->size() == 9);
  CHECK(s2.ring->names()[3] == "y");
  CHECK(s2.ring->names()[7] == "b1");
  CHECK(s2.defining.size() == 3);

  // substituting concrete offsets leaves a square system with finitely many
  // solutions (the parameters are the last two ring variables)
  std::map<std::size_t, Rat> bvals{{7, Rat(13, 7)}, {8, Rat(-3, 2)}};
  auto base = makeRationalRing(std::vector<std::string>(s2.ring->names().begin(),
                                                        s2.ring->names().end() - 2));
  std::vector<RatPoly> concrete;
  for (const auto& eq : s2.equations)
    concrete.push_back(dropSuffix(eq.substituted(bvals), base, 2));
  GroebnerBasis gb = buchberger(concrete, MonomialOrder::grevlex());
  CHECK(dimension(gb) == 0);
  CHECK(zeroDimDegree(gb) > 0);
}

TEST_CASE("Lagrange system rejects non-complete intersections") {
  auto ring = makeRationalRing({"x", "y", "z"});
  auto gens = std::vector<RatPoly>{qp("x*y", ring), qp("x*z", ring)};
  VarietySpec<Rat> X = makeVarietySpecExact(ring, gens);
  CHECK(X.c == 1); // the top-dimensional part is the plane x = 0
  RemovalConfig<Rat> cfg;
  CHECK_THROWS_AS(lagrangeSystem(X, rmu({1, 2, 3}), cfg), ValueError);
}

TEST_CASE("sampled data is deterministic and in range") {
  RandomSource a(123), b(123);
  DataVector<Rat> da = sampleData<Rat>(5, 0, a);
  DataVector<Rat> db = sampleData<Rat>(5, 0, b);
  CHECK(da.entries.size() == 5);
  REQUIRE(db.entries.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(da.entries[i] == db.entries[i]);

  RandomSource c(77);
  DataVector<Rat> withSlice = sampleData<Rat>(5, 2, c);
  CHECK(withSlice.entries.size() == 6);
  for (const auto& e : withSlice.entries) {
    CHECK(e >= Rat(1));
    CHECK(e <= Rat(30102));
    CHECK(e.get_den() == 1);
  }

  RandomSource d(9);
  DataVector<Cplx> cz = sampleData<Cplx>(4, 1, d);
  CHECK(cz.entries.size() == 5);
  for (const auto& e : cz.entries) CHECK(std::abs(std::abs(e) - 1.0) < 1e-12);
}

TEST_CASE("sampled slicing matrices have independent rows") {
  RandomSource src(31);
  auto g = sampleGamma<Rat>(3, 3, src);
  REQUIRE(g.size() == 3);
  for (const auto& row : g) {
    REQUIRE(row.size() == 3);
    for (const auto& e : row) {
      CHECK(e >= Rat(1));
      CHECK(e <= Rat(30102));
    }
  }
  RandomSource srcC(32);
  auto gc = sampleGamma<Cplx>(2, 5, srcC);
  CHECK(gc.size() == 2);
  CHECK_THROWS_AS(sampleGamma<Rat>(4, 3, src), ValueError);
}
