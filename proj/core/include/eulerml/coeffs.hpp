#ifndef EULERML_COEFFS_HPP
#define EULERML_COEFFS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "eulerml/errors.hpp"

namespace eulerml {

/// Exact rational coefficient (arbitrary precision, always canonicalized).
using Rat = mpq_class;

/// Floating complex coefficient.
using Cplx = std::complex<double>;

/// Per-field glue used by the templated polynomial code.
template <class K> struct FieldOps;

template <> struct FieldOps<Rat> {
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static bool isZero(const Rat& a) { return sgn(a) == 0; }
  static Rat fromLong(long v) { return Rat(v); }
  /// Exact value of "num/den" decimal-free literals is handled by the parser;
  /// this converts a base-10 integer string.
  static Rat fromIntegerText(const std::string& s) { return Rat(s); }
  static std::string toText(const Rat& a) { return a.get_str(); }
};

template <> struct FieldOps<Cplx> {
  static Cplx zero() { return Cplx(0.0, 0.0); }
  static Cplx one() { return Cplx(1.0, 0.0); }
  static bool isZero(const Cplx& a) { return a.real() == 0.0 && a.imag() == 0.0; }
  static Cplx fromLong(long v) { return Cplx(static_cast<double>(v), 0.0); }
  static Cplx fromIntegerText(const std::string& s) { return Cplx(std::stod(s), 0.0); }
  static std::string toText(const Cplx& a);
};

/// Formats a double with 17 significant digits (lossless round trip).
std::string doubleToText(double v);

/// Parses a decimal string produced by doubleToText.
double textToDouble(const std::string& s);

/// Parses "3", "-4/7", or "2.5" into an exact rational.
Rat ratFromText(const std::string& text);

/// Converts an exact rational to the nearest double.
inline double ratToDouble(const Rat& a) { return a.get_d(); }

} // namespace eulerml

#endif
