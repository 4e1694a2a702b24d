#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "eulerml/groebner.hpp"
#include "eulerml/parser.hpp"

using namespace eulerml;

namespace {

RatPoly qp(const std::string& text, const RingPtr& ring) {
  return parsePolynomial<Rat>(text, ring);
}

std::vector<RatPoly> qps(const std::vector<std::string>& texts, const RingPtr& ring) {
  std::vector<RatPoly> out;
  for (const auto& t : texts) out.push_back(qp(t, ring));
  return out;
}

std::vector<std::string> textSet(const std::vector<RatPoly>& polys) {
  std::vector<std::string> out;
  for (const auto& p : polys) out.push_back(toText(p));
  std::sort(out.begin(), out.end());
  return out;
}

// Ideal equality by double inclusion: every generator of each side reduces to
// zero against the other side's basis.
bool sameIdeal(const std::vector<RatPoly>& A, const std::vector<RatPoly>& B) {
  if (A.empty() && B.empty()) return true;
  if (A.empty() || B.empty()) {
    const auto& nonEmpty = A.empty() ? B : A;
    for (const auto& g : nonEmpty)
      if (!g.isZero()) return false;
    return true;
  }
  GroebnerBasis gbA = buchberger(A, MonomialOrder::grevlex());
  GroebnerBasis gbB = buchberger(B, MonomialOrder::grevlex());
  for (const auto& g : A)
    if (!normalForm(g, gbB).isZero()) return false;
  for (const auto& g : B)
    if (!normalForm(g, gbA).isZero()) return false;
  return true;
}

bool isReducedBasis(const GroebnerBasis& gb) {
  for (const auto& g : gb.generators) {
    if (g.isZero()) return false;
    // monic under the basis order
    const Monomial* lead = nullptr;
    for (const auto& [m, c] : g.terms()) {
      if (!lead || gb.order.compare(m, *lead) > 0) lead = &m;
    }
    Rat lc = g.terms().at(*lead);
    if (lc != Rat(1)) return false;
    // no term divisible by another generator's leading monomial
    for (const auto& h : gb.generators) {
      if (&h == &g) continue;
      const Monomial* hl = nullptr;
      for (const auto& [m, c] : h.terms()) {
        if (!hl || gb.order.compare(m, *hl) > 0) hl = &m;
      }
      for (const auto& [m, c] : g.terms()) {
        if (hl->divides(m)) return false;
      }
    }
  }
  return true;
}

} // namespace

TEST_CASE("buchberger collapses a redundant univariate pair") {
  auto ring = makeRationalRing({"x"});
  GroebnerBasis gb = buchberger(qps({"x^2 - 1", "x - 1"}, ring), MonomialOrder::lex());
  REQUIRE(gb.generators.size() == 1);
  CHECK(toText(gb.generators[0]) == "x - 1");
  CHECK(gb.reduced);
}

TEST_CASE("buchberger keeps an already reduced pair of variables") {
  auto ring = makeRationalRing({"x", "y"});
  GroebnerBasis gb = buchberger(qps({"x", "y"}, ring), MonomialOrder::grevlex());
  CHECK(textSet(gb.generators) == std::vector<std::string>{"x", "y"});
}

TEST_CASE("buchberger of the zero ideal is the empty basis") {
  auto ring = makeRationalRing({"x", "y"});
  GroebnerBasis gb = buchberger({RatPoly::zero(ring)}, MonomialOrder::grevlex());
  CHECK(gb.generators.empty());
  CHECK_FALSE(gb.isUnitIdeal());
}

TEST_CASE("buchberger detects the unit ideal") {
  auto ring = makeRationalRing({"x"});
  GroebnerBasis gb = buchberger(qps({"x", "x + 1"}, ring), MonomialOrder::grevlex());
  REQUIRE(gb.generators.size() == 1);
  CHECK(toText(gb.generators[0]) == "1");
  CHECK(gb.isUnitIdeal());
}

TEST_CASE("lex basis of circle and line eliminates the leading variable") {
  auto ring = makeRationalRing({"x", "y"});
  GroebnerBasis gb = buchberger(qps({"x^2 + y^2 - 1", "x - y"}, ring), MonomialOrder::lex());
  CHECK(textSet(gb.generators) == std::vector<std::string>{"x - y", "y^2 - 1/2"});
  CHECK(isReducedBasis(gb));
  CHECK(zeroDimDegree(gb) == 2);
}

TEST_CASE("every input generator reduces to zero against its own basis") {
  auto ring = makeRationalRing({"x", "y", "z"});
  auto gens = qps({"x*y - z^2", "x^2*z - y*z", "y^3 - x*z^2"}, ring);
  GroebnerBasis gb = buchberger(gens, MonomialOrder::grevlex());
  for (const auto& g : gens) CHECK(normalForm(g, gb).isZero());
  CHECK(isReducedBasis(gb));
  CHECK(sPairsReduceToZero(gb));
}

TEST_CASE("cyclic-3 system is zero-dimensional of degree six") {
  auto ring = makeRationalRing({"x", "y", "z"});
  auto gens = qps({"x + y + z", "x*y + y*z + z*x", "x*y*z - 1"}, ring);
  GroebnerBasis gb = buchberger(gens, MonomialOrder::grevlex());
  CHECK(isReducedBasis(gb));
  CHECK(sPairsReduceToZero(gb));
  CHECK(dimension(gb) == 0);
  CHECK(zeroDimDegree(gb) == 6);
}

TEST_CASE("normal form acts as a membership oracle") {
  auto ring = makeRationalRing({"x"});
  GroebnerBasis gb = buchberger(qps({"x - 1"}, ring), MonomialOrder::lex());
  CHECK(normalForm(qp("x^2 - 1", ring), gb).isZero());
  CHECK(toText(normalForm(qp("x^2 + 3", ring), gb)) == "4");

  auto ring2 = makeRationalRing({"x", "y"});
  GroebnerBasis gb2 = buchberger(qps({"x"}, ring2), MonomialOrder::grevlex());
  CHECK(toText(normalForm(qp("y", ring2), gb2)) == "y");
}

TEST_CASE("eliminate removes the auxiliary prefix variable") {
  auto ring = makeRationalRing({"t", "x"});
  auto out = eliminate(qps({"t*x - 1", "x - 2"}, ring), 1);
  REQUIRE(out.size() == 1);
  CHECK(toText(out[0]) == "x - 2");
}

TEST_CASE("eliminate can meet the subring trivially") {
  auto ring = makeRationalRing({"x", "y"});
  CHECK(eliminate(qps({"x - y"}, ring), 1).empty());
  auto out = eliminate(qps({"x - y", "y - 1"}, ring), 1);
  REQUIRE(out.size() == 1);
  CHECK(toText(out[0]) == "y - 1");
}

TEST_CASE("saturation by a variable strips that factor") {
  auto ring = makeRationalRing({"x", "y"});
  auto sat = saturateByPoly(qps({"x^2*y"}, ring), qp("y", ring));
  CHECK(textSet(sat) == std::vector<std::string>{"x^2"});
  // the original ideal is contained in its saturation
  GroebnerBasis gbSat = buchberger(sat, MonomialOrder::grevlex());
  CHECK(normalForm(qp("x^2*y", ring), gbSat).isZero());
}

TEST_CASE("saturation by a constant is the identity") {
  auto ring = makeRationalRing({"x"});
  auto sat = saturateByPoly(qps({"x"}, ring), qp("1", ring));
  CHECK(textSet(sat) == std::vector<std::string>{"x"});
}

TEST_CASE("saturating an ideal containing a power of g gives the unit ideal") {
  // x^2 lies in (x*y, x^2), so 1 belongs to the saturation by x.
  auto ring = makeRationalRing({"x", "y"});
  auto sat = saturateByPoly(qps({"x*y", "x^2"}, ring), qp("x", ring));
  CHECK(textSet(sat) == std::vector<std::string>{"1"});
}

TEST_CASE("saturation keeps the factor not supported on the removed locus") {
  auto ring = makeRationalRing({"x", "y"});
  auto sat = saturateByPoly(qps({"x^3 + x*y^2 - x"}, ring), qp("x", ring));
  CHECK(textSet(sat) == std::vector<std::string>{"x^2 + y^2 - 1"});
}

TEST_CASE("ideal intersection via the auxiliary variable") {
  auto ring = makeRationalRing({"x", "y"});
  auto meet = intersectIdeals(qps({"x"}, ring), qps({"y"}, ring));
  CHECK(sameIdeal(meet, qps({"x*y"}, ring)));
}

TEST_CASE("saturation by an ideal intersects the single-generator saturations") {
  auto ring = makeRationalRing({"x", "y"});

  auto axes = saturateByIdeal(qps({"x*y"}, ring), qps({"x", "y"}, ring));
  CHECK(textSet(axes) == std::vector<std::string>{"x*y"});

  // x^2 lies in the ideal, so saturating by {x} clears everything.
  auto cleared = saturateByIdeal(qps({"x^2", "x*y"}, ring), qps({"x"}, ring));
  CHECK(textSet(cleared) == std::vector<std::string>{"1"});

  // saturating by the maximal ideal removes only the embedded point at the
  // origin and keeps the line component
  auto line = saturateByIdeal(qps({"x^2", "x*y"}, ring), qps({"x", "y"}, ring));
  CHECK(textSet(line) == std::vector<std::string>{"x"});
}

TEST_CASE("single-generator ideal saturation matches the polynomial form bit-exactly") {
  auto ring = makeRationalRing({"x", "y"});
  auto viaIdeal = saturateByIdeal(qps({"x^2*y"}, ring), qps({"y"}, ring));
  auto viaPoly = saturateByPoly(qps({"x^2*y"}, ring), qp("y", ring));
  CHECK(textSet(viaIdeal) == textSet(viaPoly));
  REQUIRE(viaIdeal.size() == viaPoly.size());
  for (std::size_t i = 0; i < viaIdeal.size(); ++i) CHECK(viaIdeal[i] == viaPoly[i]);
}

TEST_CASE("dimension of basic ideals") {
  auto ring3 = makeRationalRing({"x1", "x2", "x3"});
  GroebnerBasis zero = buchberger({RatPoly::zero(ring3)}, MonomialOrder::grevlex());
  CHECK(dimension(zero) == 3);

  GroebnerBasis surf = buchberger(
      qps({"-x2^2*x3 + x1^2 + x2^2 + 2*x2*x3 - 2*x1 - 2*x2 - x3 + 2"}, ring3),
      MonomialOrder::grevlex());
  CHECK(dimension(surf) == 2);

  auto ring2 = makeRationalRing({"x", "y"});
  GroebnerBasis pt = buchberger(qps({"x", "y"}, ring2), MonomialOrder::grevlex());
  CHECK(dimension(pt) == 0);

  GroebnerBasis unit = buchberger(qps({"x", "x + 1"}, ring2), MonomialOrder::grevlex());
  CHECK(dimension(unit) == -1);
}

TEST_CASE("dimension agrees between grevlex and lex bases") {
  auto ring = makeRationalRing({"x", "y"});
  for (const auto& gens :
       {std::vector<std::string>{"x^2 + y^2 - 1"}, std::vector<std::string>{"x*y", "x^2"}}) {
    GroebnerBasis a = buchberger(qps(gens, ring), MonomialOrder::grevlex());
    GroebnerBasis b = buchberger(qps(gens, ring), MonomialOrder::lex());
    CHECK(dimension(a) == dimension(b));
  }
}

TEST_CASE("zero-dimensional degree counts standard monomials with multiplicity") {
  auto ring = makeRationalRing({"x", "y"});
  GroebnerBasis box = buchberger(qps({"x^2 - 1", "y^3 - 1"}, ring), MonomialOrder::grevlex());
  CHECK(dimension(box) == 0);
  CHECK(zeroDimDegree(box) == 6);

  GroebnerBasis origin = buchberger(qps({"x", "y"}, ring), MonomialOrder::grevlex());
  CHECK(zeroDimDegree(origin) == 1);

  auto ring1 = makeRationalRing({"x"});
  GroebnerBasis fat = buchberger(qps({"x^2"}, ring1), MonomialOrder::grevlex());
  CHECK(zeroDimDegree(fat) == 2);

  GroebnerBasis unit = buchberger(qps({"x", "x + 1"}, ring1), MonomialOrder::grevlex());
  CHECK(zeroDimDegree(unit) == 0);
}

TEST_CASE("zero-dimensional degree rejects positive-dimensional ideals") {
  auto ring = makeRationalRing({"x", "y"});
  GroebnerBasis gb = buchberger(qps({"x"}, ring), MonomialOrder::grevlex());
  CHECK_THROWS_AS(zeroDimDegree(gb), NotZeroDimensionalError);
}

TEST_CASE("resource caps abort with a distinguished error") {
  auto ring = makeRationalRing({"x", "y", "z"});
  auto gens = qps({"x + y + z", "x*y + y*z + z*x", "x*y*z - 1"}, ring);

  GroebnerLimits degreeCap;
  degreeCap.maxTotalDegree = 2;
  CHECK_THROWS_AS(buchberger(gens, MonomialOrder::grevlex(), degreeCap), ResourceLimitError);

  GroebnerLimits sizeCap;
  sizeCap.maxBasisSize = 1;
  try {
    buchberger(gens, MonomialOrder::grevlex(), sizeCap);
    FAIL("size cap not enforced");
  } catch (const ResourceLimitError& e) {
    CHECK(e.basisSize() >= 2);
  }
}

TEST_CASE("post-hoc S-pair verification hook runs and counts") {
  auto ring = makeRationalRing({"x", "y", "z"});
  auto gens = qps({"x + y + z", "x*y + y*z + z*x", "x*y*z - 1"}, ring);
  long before = groebnerSelfCheckCount();
  GroebnerLimits limits;
  limits.selfCheckLimit = 50;
  GroebnerBasis gb = buchberger(gens, MonomialOrder::grevlex(), limits);
  CHECK(groebnerSelfCheckCount() > before);
  CHECK(isReducedBasis(gb));
}
