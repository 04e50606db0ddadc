#pragma once

// Recursive-descent reader for arithmetic expressions such as "t*d + c*x^-1*(s - 1)".

#include <cctype>
#include <functional>
#include <string>
#include <string_view>

#include "hgo/error.hpp"
#include "hgo/scalar.hpp"

namespace hgo {

class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

template <class V>
struct ExprOps {
  std::function<V(const std::string&)> identifier;
  std::function<V(const Rational&)> number;
  std::function<V(const V&, const V&)> divide;
  std::function<V(const V&, long)> power;
};

namespace detail {

template <class V>
class ExprParser {
 public:
  ExprParser(std::string_view src, const ExprOps<V>& ops) : src_(src), ops_(ops) {}

  V run() {
    V v = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("cannot parse \"" + std::string(src_) + "\" at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  V expr() {
    V v = term();
    for (;;) {
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  V term() {
    V v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        v = ops_.divide(v, unary());
      } else {
        return v;
      }
    }
  }

  V unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  V power() {
    V base = atom();
    if (!eat('^')) return base;
    bool paren = eat('(');
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    long k = std::stol(std::string(src_.substr(start, pos_ - start)));
    if (paren && !eat(')')) fail("expected ')'");
    return ops_.power(base, neg ? -k : k);
  }

  V atom() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      V v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return ops_.number(Rational(std::string(src_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      return ops_.identifier(std::string(src_.substr(start, pos_ - start)));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  const ExprOps<V>& ops_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class V>
V parse_expression(std::string_view src, const ExprOps<V>& ops) {
  return detail::ExprParser<V>(src, ops).run();
}

}  // namespace hgo
