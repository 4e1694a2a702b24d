#include "eulerml/systems.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "eulerml/errors.hpp"
#include "eulerml/polymatrix.hpp"

namespace eulerml {
namespace {

std::string uniqueName(const std::vector<std::string>& taken, std::string base) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base = "_" + base;
  return base;
}

template <class K>
K sampleEntry(RandomSource& source);

template <>
Rat sampleEntry<Rat>(RandomSource& source) {
  return Rat(source.uniformInt(1, 30102));
}

template <>
Cplx sampleEntry<Cplx>(RandomSource& source) {
  return source.unitComplex();
}

bool negligible(const Rat& v) { return sgn(v) == 0; }
bool negligible(const Cplx& v) { return std::abs(v) < 1e-12; }

// Row rank check by Gaussian elimination; exact for rationals, with a
// magnitude threshold for complex entries.
template <class K>
bool rowsIndependent(std::vector<std::vector<K>> m) {
  std::size_t rows = m.size();
  if (rows == 0) return true;
  std::size_t cols = m[0].size();
  if (rows > cols) return false;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && negligible(m[piv][col])) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (negligible(m[r][col])) continue;
      K f = K(m[r][col] / m[rank][col]);
      for (std::size_t c = col; c < cols; ++c) m[r][c] = K(m[r][c] - f * m[rank][c]);
    }
    ++rank;
  }
  return rank == rows;
}

template <class K>
void checkRemovalShapes(const VarietySpec<K>& X, const RemovalConfig<K>& cfg) {
  if (cfg.k == 0) return;
  if (cfg.gamma.size() != cfg.k) throw ValueError("slicing matrix must have k rows");
  for (const auto& row : cfg.gamma) {
    if (row.size() != X.n) throw ValueError("slicing matrix rows must have n entries");
  }
  if (cfg.b.size() != cfg.k) throw ValueError("offset vector must have k entries");
}

// H_i(x) = (gamma x)_i - b_i over `ring`, with b either a concrete constant or
// the trailing parameter variable at index bIndex.
template <class K>
Polynomial<K> hyperplane(const RingPtr& ring, const std::vector<K>& gammaRow,
                         const K* bValue, std::size_t bIndex) {
  Polynomial<K> h = Polynomial<K>::zero(ring);
  for (std::size_t j = 0; j < gammaRow.size(); ++j)
    h = h + Polynomial<K>::variable(ring, j).scaled(gammaRow[j]);
  if (bValue) {
    h = h - Polynomial<K>::constant(ring, *bValue);
  } else {
    h = h - Polynomial<K>::variable(ring, bIndex);
  }
  return h;
}

} // namespace

template <class K>
DataVector<K> makeDataVector(std::vector<K> entries) {
  for (const auto& e : entries) {
    if (FieldOps<K>::isZero(e)) throw ValueError("data vector entries must be nonzero");
  }
  return DataVector<K>{std::move(entries)};
}

template <class K>
VarietySpec<K> makeVarietySpec(RingPtr ring, std::vector<Polynomial<K>> generators,
                               std::size_t d) {
  std::size_t n = ring->size();
  if (d > n) throw ValueError("variety dimension exceeds the ambient dimension");
  for (const auto& g : generators) requireSameRing(ring, g.ring());
  std::size_t c = n - d;
  if (generators.size() < c)
    throw ValueError("need at least codimension-many generators for dimension " +
                     std::to_string(d));
  return VarietySpec<K>{std::move(ring), std::move(generators), n, d, c};
}

VarietySpec<Rat> makeVarietySpecExact(RingPtr ring, std::vector<RatPoly> generators,
                                      const GroebnerLimits& limits) {
  std::size_t n = ring->size();
  for (const auto& g : generators) requireSameRing(ring, g.ring());
  bool allZero = true;
  for (const auto& g : generators) {
    if (!g.isZero()) allZero = false;
  }
  std::size_t d;
  if (generators.empty() || allZero) {
    d = n;
  } else {
    GroebnerBasis gb = buchberger(generators, MonomialOrder::grevlex(), limits);
    int dim = dimension(gb);
    if (dim < 0) throw ValueError("the generators cut out the empty variety");
    d = static_cast<std::size_t>(dim);
  }
  return VarietySpec<Rat>{std::move(ring), std::move(generators), n, d, n - d};
}

template <class K>
std::vector<Polynomial<K>> singularLocusIdeal(const VarietySpec<K>& X) {
  std::vector<Polynomial<K>> out = X.generators;
  if (X.c == 0) {
    // no constraints: the 0x0 minor convention makes the singular locus empty
    out.push_back(Polynomial<K>::constant(X.ring, FieldOps<K>::one()));
    return out;
  }
  std::vector<std::size_t> vars(X.n);
  std::iota(vars.begin(), vars.end(), 0);
  PolyMatrix<K> jac = jacobian(X.generators, vars);
  std::vector<Polynomial<K>> mins = minors(jac, X.c);
  out.insert(out.end(), mins.begin(), mins.end());
  return out;
}

std::vector<RatPoly> likelihoodIdeal(const VarietySpec<Rat>& X, const DataVector<Rat>& mu,
                                     const GroebnerLimits& limits) {
  if (mu.entries.size() != X.n)
    throw ValueError("data vector length must equal the ambient dimension");

  // stacked matrix: top row mu (the scaled gradient of the log-likelihood),
  // then the scaled Jacobian rows (dF_i/dz_j) * z_j
  std::size_t rows = X.generators.size() + 1;
  PolyMatrix<Rat> stacked(X.ring, rows, X.n);
  for (std::size_t j = 0; j < X.n; ++j)
    stacked.set(0, j, RatPoly::constant(X.ring, mu.entries[j]));
  for (std::size_t i = 0; i < X.generators.size(); ++i) {
    for (std::size_t j = 0; j < X.n; ++j) {
      RatPoly entry = X.generators[i].partial(j) * RatPoly::variable(X.ring, j);
      stacked.set(i + 1, j, std::move(entry));
    }
  }

  std::vector<RatPoly> gens;
  // rank <= c is an empty condition when c+1 exceeds either matrix dimension
  if (X.c + 1 <= rows && X.c + 1 <= X.n) {
    gens = minors(stacked, X.c + 1);
  }
  gens.insert(gens.end(), X.generators.begin(), X.generators.end());
  if (gens.empty()) throw ValueError("likelihood system is empty");

  // clear the torus condition first (cheap, single polynomial), then remove
  // the singular locus
  RatPoly zprod = RatPoly::constant(X.ring, Rat(1));
  for (std::size_t j = 0; j < X.n; ++j) zprod = zprod * RatPoly::variable(X.ring, j);
  std::vector<RatPoly> onTorus = saturateByPoly(gens, zprod, limits);
  if (onTorus.empty()) return onTorus;
  GroebnerBasis gbTorus = buchberger(onTorus, MonomialOrder::grevlex(), limits);
  if (gbTorus.isUnitIdeal()) return gbTorus.generators;
  return saturateByIdeal(onTorus, singularLocusIdeal(X), limits);
}

long mlDegreeSymbolic(const VarietySpec<Rat>& X, const DataVector<Rat>& mu,
                      const GroebnerLimits& limits) {
  std::vector<RatPoly> L = likelihoodIdeal(X, mu, limits);
  if (L.empty()) throw NotZeroDimensionalError("likelihood ideal is the zero ideal");
  GroebnerBasis gb = buchberger(L, MonomialOrder::grevlex(), limits);
  if (gb.isUnitIdeal()) return 0;
  return zeroDimDegree(gb);
}

template <class K>
VarietySpec<K> removalVariety(const VarietySpec<K>& X, const RemovalConfig<K>& cfg) {
  if (cfg.k > X.d + 1) throw ValueError("removal level k must be at most d + 1");
  if (cfg.k == 0) return X;
  checkRemovalShapes(X, cfg);

  std::vector<std::string> names = X.ring->names();
  names.push_back(uniqueName(names, "y"));
  RingPtr ext = std::make_shared<VariableRing>(std::move(names), X.ring->field(),
                                               X.ring->precisionBits());

  std::vector<Polynomial<K>> gens;
  gens.reserve(X.generators.size() + cfg.k);
  for (const auto& g : X.generators) gens.push_back(liftAppend(g, ext));
  // y = H_1(x): the new coordinate is the first slicing form
  std::vector<K> row0(cfg.gamma[0]);
  row0.push_back(FieldOps<K>::zero()); // no y coefficient
  Polynomial<K> h1 = hyperplane(ext, row0, &cfg.b[0], 0);
  gens.push_back(Polynomial<K>::variable(ext, X.n) - h1);
  for (std::size_t i = 1; i < cfg.k; ++i) {
    std::vector<K> row(cfg.gamma[i]);
    row.push_back(FieldOps<K>::zero());
    gens.push_back(hyperplane(ext, row, &cfg.b[i], 0));
  }

  std::size_t n2 = X.n + 1;
  std::size_t d2 = X.d - (cfg.k - 1);
  return VarietySpec<K>{std::move(ext), std::move(gens), n2, d2, n2 - d2};
}

template <class K>
RemovalSystem<K> lagrangeSystem(const VarietySpec<K>& X, const DataVector<K>& mu,
                                const RemovalConfig<K>& cfg) {
  if (X.generators.size() != X.c)
    throw ValueError("Lagrange system requires a complete intersection "
                     "(generator count equal to the codimension)");
  checkRemovalShapes(X, cfg);
  std::size_t k = cfg.k;
  std::size_t primal = X.n + (k >= 1 ? 1 : 0);
  std::size_t cPrime = X.c + k;
  if (mu.entries.size() != primal)
    throw ValueError("data vector length must match the primal coordinate count");

  std::vector<std::string> names = X.ring->names();
  if (k >= 1) names.push_back(uniqueName(names, "y"));
  for (std::size_t i = 1; i <= cPrime; ++i)
    names.push_back(uniqueName(names, "l" + std::to_string(i)));
  for (std::size_t i = 1; i <= k; ++i)
    names.push_back(uniqueName(names, "b" + std::to_string(i)));
  RingPtr big = std::make_shared<VariableRing>(std::move(names), X.ring->field(),
                                               X.ring->precisionBits());

  std::vector<Polynomial<K>> defining;
  defining.reserve(cPrime);
  for (const auto& g : X.generators) defining.push_back(liftAppend(g, big));
  if (k >= 1) {
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<K> row(cfg.gamma[i]);
      row.resize(big->size(), FieldOps<K>::zero());
      std::size_t bIndex = primal + cPrime + i;
      Polynomial<K> h = hyperplane<K>(big, row, nullptr, bIndex);
      if (i == 0) {
        defining.push_back(Polynomial<K>::variable(big, primal - 1) - h);
      } else {
        defining.push_back(h);
      }
    }
  }

  // M_Lag_j = mu_j + sum_i l_i (dG_i/dz_j) z_j, with l_0 = 1 substituted
  std::vector<Polynomial<K>> equations = defining;
  for (std::size_t j = 0; j < primal; ++j) {
    Polynomial<K> row = Polynomial<K>::constant(big, mu.entries[j]);
    Polynomial<K> zj = Polynomial<K>::variable(big, j);
    for (std::size_t i = 0; i < cPrime; ++i) {
      Polynomial<K> a = defining[i].partial(j) * zj;
      if (a.isZero()) continue;
      row = row + Polynomial<K>::variable(big, primal + i) * a;
    }
    equations.push_back(std::move(row));
  }

  RemovalSystem<K> sys;
  sys.ring = big;
  sys.equations = std::move(equations);
  sys.primalCount = primal;
  sys.lagrangeCount = cPrime;
  sys.parameterCount = k;
  sys.defining = std::move(defining);
  sys.mu = mu.entries;
  return sys;
}

template <class K>
DataVector<K> sampleData(std::size_t n, std::size_t k, RandomSource& source) {
  std::size_t len = n + (k >= 1 ? 1 : 0);
  std::vector<K> entries;
  entries.reserve(len);
  for (std::size_t i = 0; i < len; ++i) entries.push_back(sampleEntry<K>(source));
  return makeDataVector(std::move(entries));
}

template <class K>
std::vector<std::vector<K>> sampleGamma(std::size_t k, std::size_t n, RandomSource& source) {
  if (k > n) throw ValueError("cannot sample more independent rows than columns");
  std::vector<std::vector<K>> gamma;
  do {
    gamma.assign(k, {});
    for (auto& row : gamma) {
      row.reserve(n);
      for (std::size_t j = 0; j < n; ++j) row.push_back(sampleEntry<K>(source));
    }
  } while (!rowsIndependent(gamma));
  return gamma;
}

template DataVector<Rat> makeDataVector<Rat>(std::vector<Rat>);
template DataVector<Cplx> makeDataVector<Cplx>(std::vector<Cplx>);
template VarietySpec<Rat> makeVarietySpec<Rat>(RingPtr, std::vector<RatPoly>, std::size_t);
template VarietySpec<Cplx> makeVarietySpec<Cplx>(RingPtr, std::vector<CplxPoly>, std::size_t);
template std::vector<RatPoly> singularLocusIdeal<Rat>(const VarietySpec<Rat>&);
template std::vector<CplxPoly> singularLocusIdeal<Cplx>(const VarietySpec<Cplx>&);
template VarietySpec<Rat> removalVariety<Rat>(const VarietySpec<Rat>&,
                                              const RemovalConfig<Rat>&);
template VarietySpec<Cplx> removalVariety<Cplx>(const VarietySpec<Cplx>&,
                                                const RemovalConfig<Cplx>&);
template RemovalSystem<Rat> lagrangeSystem<Rat>(const VarietySpec<Rat>&,
                                                const DataVector<Rat>&,
                                                const RemovalConfig<Rat>&);
template RemovalSystem<Cplx> lagrangeSystem<Cplx>(const VarietySpec<Cplx>&,
                                                  const DataVector<Cplx>&,
                                                  const RemovalConfig<Cplx>&);
template DataVector<Rat> sampleData<Rat>(std::size_t, std::size_t, RandomSource&);
template DataVector<Cplx> sampleData<Cplx>(std::size_t, std::size_t, RandomSource&);
template std::vector<std::vector<Rat>> sampleGamma<Rat>(std::size_t, std::size_t,
                                                        RandomSource&);
template std::vector<std::vector<Cplx>> sampleGamma<Cplx>(std::size_t, std::size_t,
                                                          RandomSource&);

} // namespace eulerml
