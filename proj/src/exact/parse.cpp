#include "rank2/exact/parse.hpp"

#include <cctype>
#include <string>

#include "rank2/error.hpp"

namespace rank2 {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  RatFunc run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError(pos_, "empty expression");
    RatFunc value = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return value;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        skip_space();
        std::size_t at = pos_;
        RatFunc rhs = unary();
        if (rhs.is_zero()) throw ParseError(at, "division by zero");
        acc /= rhs;
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        throw ParseError(pos_, "exponents must be nonnegative integers");
      }
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError(start, "expected a nonnegative integer exponent");
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 4) throw ParseError(start, "exponent too large");
      return base.pow(std::stoi(digits));
    }
    return base;
  }

  RatFunc primary() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError(pos_, "unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc inner = expr();
      if (!accept(')')) throw ParseError(pos_, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Integer value(std::string(text_.substr(start, pos_ - start)));
      return RatFunc(Poly(ring_, Rational(value)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      auto index = ring_ ? ring_->index_of(name) : std::nullopt;
      if (!index) throw ParseError(start, "unknown variable '" + name + "'");
      return RatFunc::variable(ring_, *index);
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_expression(std::string_view text, const RingPtr& ring) {
  RatFunc f = Parser(text, ring).run();
  if (!f.ring()) return RatFunc(Poly(ring) + f.num(), Poly(ring) + f.den());
  return f;
}

}  // namespace rank2
