#ifndef EULERML_ORDER_HPP
#define EULERML_ORDER_HPP

#include <cstddef>

#include "eulerml/monomial.hpp"

namespace eulerml {

/// Monomial order used by the Groebner engine: grevlex, lex, or a block order
/// that eliminates a prefix of the variables (grevlex inside each block).
class MonomialOrder {
public:
  enum class Kind { Grevlex, Lex, Block };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder block(std::size_t prefixSize) {
    return MonomialOrder(Kind::Block, prefixSize);
  }

  Kind kind() const { return kind_; }
  std::size_t prefixSize() const { return prefix_; }

  /// -1, 0, or +1 as a <, ==, > b under this order.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::Grevlex:
        return grevlexCompare(a, b);
      case Kind::Lex: {
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
      }
      case Kind::Block: {
        if (int c = blockCompare(a, b, 0, prefix_); c != 0) return c;
        return blockCompare(a, b, prefix_, a.size());
      }
    }
    return 0;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

private:
  MonomialOrder(Kind k, std::size_t prefix) : kind_(k), prefix_(prefix) {}

  // Grevlex restricted to the variable range [lo, hi).
  static int blockCompare(const Monomial& a, const Monomial& b, std::size_t lo,
                          std::size_t hi) {
    unsigned da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = hi; i-- > lo;) {
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
  }

  Kind kind_;
  std::size_t prefix_;
};

} // namespace eulerml

#endif
