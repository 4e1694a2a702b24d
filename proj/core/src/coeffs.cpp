#include "eulerml/coeffs.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace eulerml {

std::string doubleToText(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double textToDouble(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ValueError("malformed decimal literal: " + s);
  return v;
}

std::string FieldOps<Cplx>::toText(const Cplx& a) {
  if (a.imag() == 0.0) return doubleToText(a.real());
  return "(" + doubleToText(a.real()) + (a.imag() < 0 ? "-" : "+") +
         doubleToText(std::abs(a.imag())) + "i)";
}

Rat ratFromText(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ValueError("empty rational literal");

  auto dot = s.find('.');
  auto exp = s.find_first_of("eE");
  if (dot == std::string::npos && exp == std::string::npos) {
    // Integer or num/den form.
    try {
      Rat r(s);
      if (sgn(r.get_den()) == 0) throw ValueError("zero denominator");
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      throw ValueError("malformed rational literal: " + text);
    }
  }

  // Decimal, possibly with exponent: digits[.digits][e[+-]digits]
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  long fracDigits = 0, e10 = 0;
  bool seenDot = false, any = false;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (seenDot) throw ValueError("malformed decimal literal: " + text);
      seenDot = true;
    } else {
      digits += s[i];
      any = true;
      if (seenDot) ++fracDigits;
    }
  }
  if (!any) throw ValueError("malformed decimal literal: " + text);
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw ValueError("malformed decimal literal: " + text);
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i >= s.size()) throw ValueError("malformed decimal literal: " + text);
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw ValueError("malformed decimal literal: " + text);
      e10 = e10 * 10 + (s[i] - '0');
      if (e10 > 100000) throw ValueError("exponent too large: " + text);
    }
    if (eneg) e10 = -e10;
  }

  mpz_class num(digits.empty() ? "0" : digits);
  mpz_class den(1);
  long shift = e10 - fracDigits;
  mpz_class ten(10);
  if (shift >= 0) {
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift));
    num *= scale;
  } else {
    mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-shift));
  }
  Rat r(num, den);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

} // namespace eulerml
