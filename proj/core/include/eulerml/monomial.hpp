#ifndef EULERML_MONOMIAL_HPP
#define EULERML_MONOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "eulerml/errors.hpp"

namespace eulerml {

/// Exponent vector of a monomial. The variable count is fixed at construction.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}

  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1) {
    Monomial m(nvars);
    m.exps_[index] = power;
    return m;
  }

  std::size_t size() const { return exps_.size(); }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  void setExponent(std::size_t i, unsigned e) { exps_[i] = e; }

  unsigned degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), 0u);
  }

  bool isConstant() const {
    return std::all_of(exps_.begin(), exps_.end(), [](unsigned e) { return e == 0; });
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
    return r;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  /// Quotient o / this; caller guarantees divisibility.
  Monomial quotientOf(const Monomial& o) const {
    Monomial r(o);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= exps_[i];
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i)
      r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return r;
  }

  /// True when the supports are disjoint (lcm == product).
  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.exps_.size(); ++i)
      if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
    return true;
  }

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  const std::vector<unsigned>& exponents() const { return exps_; }

private:
  std::vector<unsigned> exps_;
};

/// Graded reverse lexicographic comparison: -1, 0, or +1 as a <, ==, > b.
inline int grevlexCompare(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  // Equal degree: the monomial whose last differing exponent is smaller wins.
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

/// Strict-less functor for grevlex-ordered containers (canonical term order).
struct GrevlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grevlexCompare(a, b) < 0;
  }
};

} // namespace eulerml

#endif
