#include "mhlab/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

namespace mhlab {

namespace {

constexpr long kMaxExponent = 4096;

template <class K>
class Parser {
 public:
  Parser(std::string_view text, bool numeric) : s_(text), numeric_(numeric) {}

  BasicPoly<K> run() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    auto p = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
    return p;
  }

 private:
  using P = BasicPoly<K>;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool digit_at(std::size_t i) const { return i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i])); }

  P expr() {
    P acc = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  P term() {
    P acc = unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc *= unary();
      } else if (peek('/')) {
        ++pos_;
        std::size_t at = pos_;
        P d = unary();
        if (!is_constant(d)) {
          pos_ = at;
          fail("divisor must be constant");
        }
        K c = d.coeff(0, 0);
        if (c == K(0)) {
          pos_ = at;
          fail("division by zero");
        }
        acc *= P::constant(K(1) / c);
      } else {
        return acc;
      }
    }
  }

  static bool is_constant(const P& p) {
    return p.size() == 0 || (p.size() == 1 && p.terms().begin()->first == Exponent{0, 0});
  }

  P unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  P power() {
    P base = primary();
    if (!peek('^')) return base;
    ++pos_;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '-') fail("negative exponent");
    if (!digit_at(pos_)) fail("exponent must be a nonnegative integer literal");
    std::size_t start = pos_;
    while (digit_at(pos_)) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == '/')) fail("non-integer exponent");
    std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 6 || std::stol(digits) > kMaxExponent) {
      pos_ = start;
      fail("exponent too large");
    }
    return base.pow(static_cast<unsigned>(std::stol(digits)));
  }

  P primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      P inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'y') {
      if (pos_ + 1 < s_.size() && (s_[pos_ + 1] == '1' || s_[pos_ + 1] == '2') && !digit_at(pos_ + 2)) {
        bool first = s_[pos_ + 1] == '1';
        pos_ += 2;
        return first ? P::y1() : P::y2();
      }
      fail("unknown variable (expected y1 or y2)");
    }
    if (numeric_ && s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!peek('(')) fail("expected '(' after sqrt");
      ++pos_;
      std::size_t arg_pos = pos_;
      P inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      if (!is_constant(inner)) {
        pos_ = arg_pos;
        fail("sqrt argument must be constant");
      }
      double v = as_double(inner.coeff(0, 0));
      if (v < 0) {
        pos_ = arg_pos;
        fail("sqrt of a negative number");
      }
      return P::constant(K(std::sqrt(v)));
    }
    if (digit_at(pos_) || c == '.') return literal();
    fail(std::string("unexpected character '") + c + "'");
  }

  P literal();

  std::string_view s_;
  bool numeric_;
  std::size_t pos_ = 0;
};

template <>
BivariatePoly Parser<Rat>::literal() {
  std::size_t start = pos_;
  while (digit_at(pos_)) ++pos_;
  if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
    fail("decimal literals are not exact; write a rational a/b");
  if (pos_ == start) fail("expected a number");
  BigInt num(std::string(s_.substr(start, pos_ - start)));
  BigInt den = 1;
  if (pos_ < s_.size() && s_[pos_] == '/') {
    ++pos_;
    std::size_t dstart = pos_;
    while (digit_at(pos_)) ++pos_;
    if (pos_ == dstart) fail("expected an integer denominator");
    den = BigInt(std::string(s_.substr(dstart, pos_ - dstart)));
    if (den == 0) {
      pos_ = dstart;
      fail("zero denominator");
    }
  }
  return BivariatePoly::constant(rat(num, den));
}

template <>
NumericPoly Parser<double>::literal() {
  std::string rest(s_.substr(pos_));
  char* end = nullptr;
  double v = std::strtod(rest.c_str(), &end);
  if (end == rest.c_str()) fail("expected a number");
  pos_ += static_cast<std::size_t>(end - rest.c_str());
  if (pos_ < s_.size() && s_[pos_] == '/') {
    ++pos_;
    std::size_t dstart = pos_;
    while (digit_at(pos_)) ++pos_;
    if (pos_ == dstart) fail("expected an integer denominator");
    double d = std::stod(std::string(s_.substr(dstart, pos_ - dstart)));
    if (d == 0) {
      pos_ = dstart;
      fail("zero denominator");
    }
    v /= d;
  }
  return NumericPoly::constant(v);
}

}  // namespace

BivariatePoly parse_poly(std::string_view text) { return Parser<Rat>(text, false).run(); }

NumericPoly parse_numeric_poly(std::string_view text) { return Parser<double>(text, true).run(); }

}  // namespace mhlab
