#include "eulerml/parser.hpp"

#include <cctype>
#include <vector>

namespace eulerml {
namespace {

enum class Tok { Integer, Decimal, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { tokenize(); }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(index_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& next() {
    const Token& t = tokens_[index_];
    if (index_ + 1 < tokens_.size()) ++index_;
    return t;
  }

private:
  void tokenize() {
    std::size_t i = 0;
    while (i < src_.size()) {
      char c = src_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        bool dot = false, expo = false;
        ++i;
        while (i < src_.size()) {
          char d = src_[i];
          if (std::isdigit(static_cast<unsigned char>(d))) {
            ++i;
          } else if (d == '.' && !dot && !expo) {
            dot = true;
            ++i;
          } else if ((d == 'e' || d == 'E') && !expo && i + 1 < src_.size() &&
                     (std::isdigit(static_cast<unsigned char>(src_[i + 1])) ||
                      ((src_[i + 1] == '+' || src_[i + 1] == '-') && i + 2 < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[i + 2]))))) {
            expo = true;
            i += (src_[i + 1] == '+' || src_[i + 1] == '-') ? 2 : 1;
          } else {
            break;
          }
        }
        tokens_.push_back({dot || expo ? Tok::Decimal : Tok::Integer,
                           src_.substr(start, i - start), start});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        ++i;
        while (i < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i])) ||
                                   src_[i] == '_'))
          ++i;
        tokens_.push_back({Tok::Ident, src_.substr(start, i - start), start});
        continue;
      }
      Tok k;
      switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", start);
      }
      tokens_.push_back({k, std::string(1, c), start});
      ++i;
    }
    tokens_.push_back({Tok::End, "", src_.size()});
  }

  const std::string& src_;
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

template <class K>
class Parser {
public:
  Parser(const std::string& text, RingPtr ring) : lex_(text), ring_(std::move(ring)) {}

  Polynomial<K> run() {
    Polynomial<K> p = parseExpr();
    const Token& t = lex_.peek();
    if (t.kind != Tok::End) throw ParseError("unexpected token '" + t.text + "'", t.pos);
    return p;
  }

private:
  Polynomial<K> parseExpr() {
    Polynomial<K> acc = parseTerm();
    while (true) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Plus) {
        lex_.next();
        acc = acc + parseTerm();
      } else if (k == Tok::Minus) {
        lex_.next();
        acc = acc - parseTerm();
      } else {
        return acc;
      }
    }
  }

  Polynomial<K> parseTerm() {
    Polynomial<K> acc = parseFactor();
    while (true) {
      const Token& t = lex_.peek();
      if (t.kind == Tok::Star) {
        lex_.next();
        acc = acc * parseFactor();
      } else if (t.kind == Tok::Slash) {
        throw ParseError("'/' is only allowed inside a rational literal", t.pos);
      } else {
        return acc;
      }
    }
  }

  Polynomial<K> parseFactor() {
    int sign = 1;
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      if (lex_.next().kind == Tok::Minus) sign = -sign;
    }
    Polynomial<K> p = parsePrimary();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.next();
      const Token& e = lex_.peek();
      if (e.kind != Tok::Integer)
        throw ParseError("exponent must be a nonnegative integer literal", e.pos);
      lex_.next();
      unsigned long v = 0;
      for (char c : e.text) {
        v = v * 10 + static_cast<unsigned long>(c - '0');
        if (v > 100000) throw ParseError("exponent too large", e.pos);
      }
      p = p.pow(static_cast<unsigned>(v));
    }
    return sign < 0 ? -p : p;
  }

  Polynomial<K> parsePrimary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Integer: {
        lex_.next();
        // Rational literal: INTEGER '/' INTEGER.
        if (lex_.peek().kind == Tok::Slash && lex_.peek(1).kind == Tok::Integer) {
          lex_.next();
          const Token& den = lex_.next();
          return literal(t.text + "/" + den.text, t.pos);
        }
        return literal(t.text, t.pos);
      }
      case Tok::Decimal:
        lex_.next();
        return literal(t.text, t.pos);
      case Tok::Ident: {
        lex_.next();
        auto idx = ring_->indexOf(t.text);
        if (!idx) throw ParseError("unknown variable '" + t.text + "'", t.pos);
        return Polynomial<K>::variable(ring_, *idx);
      }
      case Tok::LParen: {
        lex_.next();
        Polynomial<K> p = parseExpr();
        const Token& r = lex_.peek();
        if (r.kind != Tok::RParen) throw ParseError("expected ')'", r.pos);
        lex_.next();
        return p;
      }
      default:
        throw ParseError("expected a literal, variable, or '('", t.pos);
    }
  }

  Polynomial<K> literal(const std::string& text, std::size_t pos) {
    try {
      if constexpr (std::is_same_v<K, Rat>) {
        return Polynomial<K>::constant(ring_, ratFromText(text));
      } else {
        return Polynomial<K>::constant(ring_, Cplx(ratToDouble(ratFromText(text)), 0.0));
      }
    } catch (const ValueError& e) {
      throw ParseError(e.what(), pos);
    }
  }

  Lexer lex_;
  RingPtr ring_;
};

template <class K>
bool coeffIsNegative(const K& c);

template <> bool coeffIsNegative<Rat>(const Rat& c) { return sgn(c) < 0; }
template <> bool coeffIsNegative<Cplx>(const Cplx& c) {
  return c.imag() == 0.0 && c.real() < 0.0;
}

template <class K>
std::string monomialText(const Monomial& m, const VariableRing& ring) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ring.name(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

} // namespace

template <class K>
Polynomial<K> parsePolynomial(const std::string& text, const RingPtr& ring) {
  return Parser<K>(text, ring).run();
}

template <class K>
std::string toText(const Polynomial<K>& p) {
  if (p.isZero()) return "0";
  std::string out;
  bool first = true;
  // Descending canonical order.
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const Monomial& m = it->first;
    K c = it->second;
    bool neg = coeffIsNegative<K>(c);
    if (neg) c = K(-c);
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string mono = monomialText<K>(m, *p.ring());
    std::string coeff = FieldOps<K>::toText(c);
    if (mono.empty()) {
      out += coeff;
    } else if (coeff == "1") {
      out += mono;
    } else {
      out += coeff + "*" + mono;
    }
  }
  return out;
}

template Polynomial<Rat> parsePolynomial<Rat>(const std::string&, const RingPtr&);
template Polynomial<Cplx> parsePolynomial<Cplx>(const std::string&, const RingPtr&);
template std::string toText<Rat>(const Polynomial<Rat>&);
template std::string toText<Cplx>(const Polynomial<Cplx>&);

} // namespace eulerml
