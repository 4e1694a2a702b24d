#ifndef EULERML_GROEBNER_HPP
#define EULERML_GROEBNER_HPP

#include <vector>

#include "eulerml/order.hpp"
#include "eulerml/polynomial.hpp"

namespace eulerml {

/// Resource caps for the Buchberger loop. Hitting a cap raises
/// ResourceLimitError (a distinguished failure, never a wrong answer).
struct GroebnerLimits {
  std::size_t maxBasisSize = 20000;
  unsigned maxTotalDegree = 60;
  /// When positive, every finished basis with at most this many generators is
  /// re-verified post hoc (all S-polynomials reduce to zero).
  std::size_t selfCheckLimit = 0;
};

/// Reduced Groebner basis: monic generators, no term of any generator divisible
/// by the leading term of another. An empty generator list is the zero ideal.
struct GroebnerBasis {
  RingPtr ring;
  MonomialOrder order = MonomialOrder::grevlex();
  std::vector<RatPoly> generators;
  bool reduced = true;

  bool isUnitIdeal() const {
    return generators.size() == 1 && generators.front().isConstant() &&
           !generators.front().isZero();
  }
};

/// Buchberger's algorithm with the sugar selection strategy and the coprime
/// (first) and chain (second) criteria. Deterministic for fixed input order.
GroebnerBasis buchberger(const std::vector<RatPoly>& gens, const MonomialOrder& order,
                         const GroebnerLimits& limits = {});

/// Remainder of multivariate division by the (reduced, monic) basis. The result
/// is zero exactly when p lies in the ideal.
RatPoly normalForm(const RatPoly& p, const GroebnerBasis& gb);

/// Generators of the elimination ideal: members of the ideal that avoid the
/// first `prefixSize` variables. Returned over the same ring.
std::vector<RatPoly> eliminate(const std::vector<RatPoly>& gens, std::size_t prefixSize,
                               const GroebnerLimits& limits = {});

/// Saturation I : g^infinity via the auxiliary-variable construction
/// (adjoin t, add t*g - 1, eliminate t). Returns the reduced grevlex basis.
std::vector<RatPoly> saturateByPoly(const std::vector<RatPoly>& gens, const RatPoly& g,
                                    const GroebnerLimits& limits = {});

/// Ideal intersection via t*I + (1-t)*J and elimination of t.
std::vector<RatPoly> intersectIdeals(const std::vector<RatPoly>& I,
                                     const std::vector<RatPoly>& J,
                                     const GroebnerLimits& limits = {});

/// Saturation by an ideal: intersection of the single-generator saturations
/// I : g^infinity over the generators g of J.
std::vector<RatPoly> saturateByIdeal(const std::vector<RatPoly>& gens,
                                     const std::vector<RatPoly>& J,
                                     const GroebnerLimits& limits = {});

/// Krull dimension of the ideal: size of a maximal variable subset independent
/// modulo the leading-term ideal (exhaustive subset search). Unit ideal: -1.
int dimension(const GroebnerBasis& gb);

/// Vector-space dimension of the quotient ring (count of standard monomials,
/// multiplicity included). Raises NotZeroDimensionalError when some variable
/// has no pure power among the leading terms.
long zeroDimDegree(const GroebnerBasis& gb);

/// Post-hoc Buchberger criterion: every S-polynomial of the basis reduces to
/// zero. Used by the self-check hook and the acceptance suite.
bool sPairsReduceToZero(const GroebnerBasis& gb);

/// Number of post-hoc self-checks run so far in this process.
long groebnerSelfCheckCount();

} // namespace eulerml

#endif
