#pragma once

// Polynomial text syntax: `x^3 - 2*x*y^2`, rational literals such as `3/2*x`,
// parentheses and integer powers.

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "jumploci/polynomial.hpp"

namespace jumploci {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(msg), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }
  std::string located() const {
    return "line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + what();
  }

 private:
  int line_;
  int column_;
};

inline std::string coefficient_text(const Zp& c) { return to_string(c); }
inline std::string coefficient_text(const mpq_class& c) { return c.get_str(); }

inline bool coefficient_negative(const Zp& c) { return c.symmetric() < 0; }
inline bool coefficient_negative(const mpq_class& c) { return sgn(c) < 0; }

template <class Field>
std::string to_string(const Poly<Field>& p, const PolyRing<Field>& ring) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& t : p.terms()) {
    typename Field::Scalar c = t.coef;
    bool neg = coefficient_negative(c);
    if (neg) c = -c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (size_t i = 0; i < ring.nvars(); ++i) {
      int e = t.mono.exp[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring.names()[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += coefficient_text(c);
    } else if (is_one(c)) {
      out += mono;
    } else {
      out += coefficient_text(c) + "*" + mono;
    }
  }
  return out;
}

namespace detail {

template <class Field>
class PolyParser {
 public:
  using P = Poly<Field>;
  PolyParser(const PolyRing<Field>& ring, std::string_view text, int line, int col0)
      : ring_(ring), s_(text), line_(line), col0_(col0) {}

  P parse() {
    P v = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + int(pos_)); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  P expr() {
    P acc = ring_.zero();
    bool neg = false;
    if (peek('+')) ++pos_;
    else if (peek('-')) {
      ++pos_;
      neg = true;
    }
    P t = term();
    acc = neg ? acc - t : acc + t;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  P term() {
    P acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (peek('/')) {
        ++pos_;
        size_t at = pos_;
        P d = factor();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division is only allowed by a nonzero constant");
        }
        acc = acc.scaled(inverse(d.lead().coef));
      } else {
        return acc;
      }
    }
  }

  P factor() {
    P b = base();
    if (peek('^')) {
      ++pos_;
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (b.is_zero()) return e == 0 ? ring_.one() : b;
      return b.pow(e);
    }
    return b;
  }

  P base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of polynomial");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      P v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class n(std::string(s_.substr(start, pos_ - start)));
      return ring_.constant(ring_.field().from_big(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      int idx = ring_.index_of(name);
      if (idx < 0) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return ring_.var(size_t(idx));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const PolyRing<Field>& ring_;
  std::string_view s_;
  size_t pos_ = 0;
  int line_;
  int col0_;
};

}  // namespace detail

template <class Field>
Poly<Field> parse_poly(const PolyRing<Field>& ring, std::string_view text, int line = 1, int column = 1) {
  return detail::PolyParser<Field>(ring, text, line, column).parse();
}

}  // namespace jumploci
