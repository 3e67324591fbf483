#ifndef HECKE_EXPR_HPP
#define HECKE_EXPR_HPP

// Parser for rational-function expressions in p and q:
//   integers, p, q, + - * / ^ (integer exponents), parentheses and brackets
//   [n]_x with n in {0, 2, 3} and x one of p, q, (expr) or {expr}.

#include <cctype>
#include <stdexcept>
#include <string>

#include "hecke/ratfun.hpp"

namespace hecke {

class ParseError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

class ExprParser {
public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  RatFun parse() {
    RatFun r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 9) fail("integer too large");
    return std::stol(s_.substr(start, pos_ - start));
  }

  RatFun expr() {
    RatFun r = term();
    for (;;) {
      if (accept('+')) r = r + term();
      else if (accept('-')) r = r - term();
      else return r;
    }
  }

  RatFun term() {
    RatFun r = unary();
    for (;;) {
      if (accept('*')) r = r * unary();
      else if (accept('/')) {
        RatFun d = unary();
        if (d.is_zero()) fail("division by zero");
        r = r / d;
      } else return r;
    }
  }

  RatFun unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatFun power() {
    RatFun base = atom();
    if (!accept('^')) return base;
    long e;
    if (accept('(')) {
      const bool neg = accept('-');
      e = integer();
      if (neg) e = -e;
      expect(')');
    } else {
      const bool neg = accept('-');
      e = integer();
      if (neg) e = -e;
    }
    if (e < 0 && base.is_zero()) fail("zero to a negative power");
    return base.pow(static_cast<int>(e));
  }

  RatFun atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return RatFun(integer());
    if (c == 'p') {
      ++pos_;
      return P();
    }
    if (c == 'q') {
      ++pos_;
      return Q();
    }
    if (accept('(')) {
      RatFun r = expr();
      expect(')');
      return r;
    }
    if (accept('[')) {
      const long n = integer();
      expect(']');
      expect('_');
      RatFun x;
      if (accept('{')) {
        x = expr();
        expect('}');
      } else {
        x = atom();
      }
      if (n != 0 && n != 2 && n != 3) fail("bracket index must be 0, 2 or 3");
      if (x.is_zero()) fail("bracket of zero");
      return br(static_cast<int>(n), x);
    }
    fail("unexpected character");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RatFun parse_ratfun(const std::string& s) { return detail::ExprParser(s).parse(); }

}  // namespace hecke

#endif  // HECKE_EXPR_HPP
