#ifndef EULERML_POLYNOMIAL_HPP
#define EULERML_POLYNOMIAL_HPP

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eulerml/coeffs.hpp"
#include "eulerml/monomial.hpp"
#include "eulerml/ring.hpp"

namespace eulerml {

/// Sparse multivariate polynomial: grevlex-sorted map from exponent vector to a
/// nonzero coefficient. Value semantics; all mutating helpers are private, so a
/// constructed polynomial is canonical by construction.
template <class K>
class Polynomial {
public:
  using Terms = std::map<Monomial, K, GrevlexLess>;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }

  static Polynomial constant(RingPtr ring, K value) {
    Polynomial p(std::move(ring));
    if (!FieldOps<K>::isZero(value))
      p.terms_.emplace(Monomial(p.ring_->size()), std::move(value));
    return p;
  }

  static Polynomial variable(RingPtr ring, std::size_t index, unsigned power = 1) {
    if (index >= ring->size()) throw ValueError("variable index out of range");
    Polynomial p(ring);
    if (power == 0) return constant(std::move(ring), FieldOps<K>::one());
    p.terms_.emplace(Monomial::variable(ring->size(), index, power), FieldOps<K>::one());
    return p;
  }

  static Polynomial fromTerms(RingPtr ring, std::vector<std::pair<Monomial, K>> terms) {
    Polynomial p(std::move(ring));
    for (auto& [m, c] : terms) p.addTerm(m, c);
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t termCount() const { return terms_.size(); }

  bool isConstant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.isConstant());
  }

  /// Total degree; the zero polynomial reports 0.
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  /// Largest term under the canonical grevlex order.
  const std::pair<const Monomial, K>& leadingTerm() const {
    if (terms_.empty()) throw ValueError("zero polynomial has no leading term");
    return *terms_.rbegin();
  }

  bool operator==(const Polynomial& o) const {
    requireSameRing(ring_, o.ring_);
    return terms_ == o.terms_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Polynomial operator+(const Polynomial& o) const {
    requireSameRing(ring_, o.ring_);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) r.addTerm(m, c);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const {
    requireSameRing(ring_, o.ring_);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) r.addTerm(m, -c);
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    requireSameRing(ring_, o.ring_);
    Polynomial r(ring_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) r.addTerm(ma * mb, K(ca * cb));
    return r;
  }

  Polynomial scaled(const K& s) const {
    Polynomial r(ring_);
    if (FieldOps<K>::isZero(s)) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, K(c * s));
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(ring_, FieldOps<K>::one());
    Polynomial base(*this);
    while (e > 0) {
      if (e & 1u) r = r * base;
      base = (e >>= 1) ? base * base : base;
    }
    return r;
  }

  /// Partial derivative with respect to one variable.
  Polynomial partial(std::size_t var) const {
    if (var >= ring_->size()) throw ValueError("variable index out of range");
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_) {
      unsigned e = m[var];
      if (e == 0) continue;
      Monomial dm(m);
      dm.setExponent(var, e - 1);
      r.addTerm(dm, K(c * FieldOps<K>::fromLong(static_cast<long>(e))));
    }
    return r;
  }

  /// Evaluates at a full point (one value per ring variable).
  K evaluate(std::span<const K> values) const {
    if (values.size() != ring_->size())
      throw ValueError("evaluation point has wrong length");
    K acc = FieldOps<K>::zero();
    for (const auto& [m, c] : terms_) {
      K t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (unsigned e = 0; e < m[i]; ++e) t = K(t * values[i]);
      acc = K(acc + t);
    }
    return acc;
  }

  /// Substitutes constants for a subset of variables (partial evaluation).
  Polynomial substituted(const std::map<std::size_t, K>& values) const {
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_) {
      K t = c;
      Monomial rm(m);
      for (const auto& [var, val] : values) {
        for (unsigned e = 0; e < m[var]; ++e) t = K(t * val);
        rm.setExponent(var, 0);
      }
      r.addTerm(rm, t);
    }
    return r;
  }

private:
  void addTerm(const Monomial& m, K c) {
    if (FieldOps<K>::isZero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, std::move(c));
    } else {
      it->second = K(it->second + c);
      if (FieldOps<K>::isZero(it->second)) terms_.erase(it);
    }
  }

  RingPtr ring_;
  Terms terms_;
};

using RatPoly = Polynomial<Rat>;
using CplxPoly = Polynomial<Cplx>;

/// Ring with extra variables prepended (used to adjoin auxiliary variables).
inline RingPtr extendRingFront(const RingPtr& ring, const std::vector<std::string>& names) {
  std::vector<std::string> all = names;
  all.insert(all.end(), ring->names().begin(), ring->names().end());
  return std::make_shared<VariableRing>(std::move(all), ring->field(),
                                        ring->precisionBits());
}

/// Reinterprets p over extRing, which has `prefix` extra leading variables.
template <class K>
Polynomial<K> liftWithPrefix(const Polynomial<K>& p, const RingPtr& extRing,
                             std::size_t prefix) {
  if (extRing->size() != p.ring()->size() + prefix)
    throw ValueError("extended ring has wrong size");
  std::vector<std::pair<Monomial, K>> terms;
  for (const auto& [m, c] : p.terms()) {
    Monomial em(extRing->size());
    for (std::size_t i = 0; i < m.size(); ++i) em.setExponent(i + prefix, m[i]);
    terms.emplace_back(em, c);
  }
  return Polynomial<K>::fromTerms(extRing, std::move(terms));
}

/// Reinterprets p over extRing, which appends extra trailing variables;
/// existing variable indices are unchanged.
template <class K>
Polynomial<K> liftAppend(const Polynomial<K>& p, const RingPtr& extRing) {
  if (extRing->size() < p.ring()->size())
    throw ValueError("extended ring has wrong size");
  std::vector<std::pair<Monomial, K>> terms;
  for (const auto& [m, c] : p.terms()) {
    Monomial em(extRing->size());
    for (std::size_t i = 0; i < m.size(); ++i) em.setExponent(i, m[i]);
    terms.emplace_back(em, c);
  }
  return Polynomial<K>::fromTerms(extRing, std::move(terms));
}

/// Inverse of liftAppend; p must not involve the last `suffix` variables.
template <class K>
Polynomial<K> dropSuffix(const Polynomial<K>& p, const RingPtr& baseRing,
                         std::size_t suffix) {
  if (baseRing->size() + suffix != p.ring()->size())
    throw ValueError("base ring has wrong size");
  std::vector<std::pair<Monomial, K>> terms;
  for (const auto& [m, c] : p.terms()) {
    Monomial bm(baseRing->size());
    for (std::size_t i = baseRing->size(); i < m.size(); ++i)
      if (m[i] != 0) throw ValueError("polynomial involves a trailing variable");
    for (std::size_t i = 0; i < baseRing->size(); ++i) bm.setExponent(i, m[i]);
    terms.emplace_back(bm, c);
  }
  return Polynomial<K>::fromTerms(baseRing, std::move(terms));
}

/// Inverse of liftWithPrefix; p must not involve the first `prefix` variables.
template <class K>
Polynomial<K> dropPrefix(const Polynomial<K>& p, const RingPtr& baseRing,
                         std::size_t prefix) {
  if (baseRing->size() + prefix != p.ring()->size())
    throw ValueError("base ring has wrong size");
  std::vector<std::pair<Monomial, K>> terms;
  for (const auto& [m, c] : p.terms()) {
    Monomial bm(baseRing->size());
    for (std::size_t i = 0; i < prefix; ++i)
      if (m[i] != 0) throw ValueError("polynomial involves an auxiliary variable");
    for (std::size_t i = prefix; i < m.size(); ++i) bm.setExponent(i - prefix, m[i]);
    terms.emplace_back(bm, c);
  }
  return Polynomial<K>::fromTerms(baseRing, std::move(terms));
}

} // namespace eulerml

#endif
