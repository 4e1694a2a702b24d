#ifndef EULERML_PARSER_HPP
#define EULERML_PARSER_HPP

#include <string>

#include "eulerml/polynomial.hpp"

namespace eulerml {

/// Parses polynomial text over the given ring.
///
/// Grammar: identifiers, integer / rational ("3/7") / decimal ("2.5", "1e-3")
/// literals, binary + - *, integer exponent ^, parentheses, unary sign.
/// Whitespace is insignificant. Unknown identifiers and malformed input raise
/// ParseError with the offending position.
template <class K>
Polynomial<K> parsePolynomial(const std::string& text, const RingPtr& ring);

/// Canonical text form: terms in descending grevlex order. For the exact field,
/// parsePolynomial(toText(p)) == p bit-exactly.
template <class K>
std::string toText(const Polynomial<K>& p);

extern template Polynomial<Rat> parsePolynomial<Rat>(const std::string&, const RingPtr&);
extern template Polynomial<Cplx> parsePolynomial<Cplx>(const std::string&, const RingPtr&);
extern template std::string toText<Rat>(const Polynomial<Rat>&);
extern template std::string toText<Cplx>(const Polynomial<Cplx>&);

} // namespace eulerml

#endif
