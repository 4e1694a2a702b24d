#ifndef EULERML_SYSTEMS_HPP
#define EULERML_SYSTEMS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "eulerml/groebner.hpp"
#include "eulerml/polynomial.hpp"
#include "eulerml/random.hpp"

namespace eulerml {

/// An affine variety given by generators in its ambient coordinate ring,
/// together with its dimension d and codimension c = n - d.
template <class K>
struct VarietySpec {
  RingPtr ring;
  std::vector<Polynomial<K>> generators;
  std::size_t n = 0; // ambient dimension = ring size
  std::size_t d = 0; // variety dimension
  std::size_t c = 0; // codimension n - d
};

/// Data vector of the likelihood function; every entry must be nonzero.
/// Length n for removal level 0, n+1 for levels k >= 1.
template <class K>
struct DataVector {
  std::vector<K> entries;
};

/// Slicing data for the k-th removal variety: a k x n coefficient matrix,
/// offsets b (the hyperplanes pass through p exactly when b = gamma * p),
/// and the base point p itself.
template <class K>
struct RemovalConfig {
  std::size_t k = 0;
  std::vector<std::vector<K>> gamma; // k rows, n columns
  std::vector<K> b;                  // length k
  std::vector<K> point;              // length n
};

/// Square Lagrange critical system over the ring
/// (primal coords [x..., y], multipliers l1..lc', parameters b1..bk):
/// the defining equations followed by the M_Lag rows with l0 = 1 substituted.
/// The structured fields (defining, mu) let the numeric tracker rebuild the
/// multiplier rows in its own augmented form.
template <class K>
struct RemovalSystem {
  RingPtr ring;
  std::vector<Polynomial<K>> equations;
  std::size_t primalCount = 0;   // n (k = 0) or n+1 (k >= 1)
  std::size_t lagrangeCount = 0; // c'
  std::size_t parameterCount = 0; // k
  std::vector<Polynomial<K>> defining; // the c' defining equations (b symbolic)
  std::vector<K> mu;                   // data vector, one entry per primal coord
};

/// Validates nonzero entries.
template <class K>
DataVector<K> makeDataVector(std::vector<K> entries);

/// Variety with user-supplied dimension (required by the numeric engine,
/// which cannot compute dimensions). Checks 0 <= d <= n and |gens| >= c.
template <class K>
VarietySpec<K> makeVarietySpec(RingPtr ring, std::vector<Polynomial<K>> generators,
                               std::size_t d);

/// Variety with the dimension computed from a Groebner basis (exact field).
VarietySpec<Rat> makeVarietySpecExact(RingPtr ring, std::vector<RatPoly> generators,
                                      const GroebnerLimits& limits = {});

/// Generators of the singular-locus ideal: the defining equations together
/// with all c x c minors of their Jacobian.
template <class K>
std::vector<Polynomial<K>> singularLocusIdeal(const VarietySpec<K>& X);

/// Likelihood ideal with denominators cleared: the (c+1)-minors of the stacked
/// matrix [mu ; (dF_i/dz_j) z_j] plus the defining equations, saturated first
/// by the coordinate product z_1...z_n and then by the singular-locus ideal.
std::vector<RatPoly> likelihoodIdeal(const VarietySpec<Rat>& X, const DataVector<Rat>& mu,
                                     const GroebnerLimits& limits = {});

/// ML degree via the symbolic route: zero-dimensional degree of the likelihood
/// ideal; 0 when that ideal is the unit ideal (empty critical locus).
/// NotZeroDimensionalError signals non-generic data; callers resample.
long mlDegreeSymbolic(const VarietySpec<Rat>& X, const DataVector<Rat>& mu,
                      const GroebnerLimits& limits = {});

/// The k-th removal variety. k=0 returns X unchanged; k>=1 appends the
/// coordinate y with generators F ∪ {y - H_1} ∪ {H_2,...,H_k},
/// H_i(x) = (gamma x - b)_i, of dimension d - (k-1).
template <class K>
VarietySpec<K> removalVariety(const VarietySpec<K>& X, const RemovalConfig<K>& cfg);

/// Square Lagrange system for the critical points of the removal variety at
/// level cfg.k, with the offsets b kept symbolic as trailing parameters.
/// Requires X to be a complete intersection (|generators| == c).
template <class K>
RemovalSystem<K> lagrangeSystem(const VarietySpec<K>& X, const DataVector<K>& mu,
                                const RemovalConfig<K>& cfg);

/// Random data vector of length n (k = 0) or n+1 (k >= 1): uniform integers in
/// [1, 30102] for the exact field, unit-modulus complex for the numeric field.
template <class K>
DataVector<K> sampleData(std::size_t n, std::size_t k, RandomSource& source);

/// Random k x n slicing matrix with linearly independent rows, drawn from the
/// same per-field distributions as sampleData.
template <class K>
std::vector<std::vector<K>> sampleGamma(std::size_t k, std::size_t n, RandomSource& source);

} // namespace eulerml

#endif
