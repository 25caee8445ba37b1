#include <cctype>
#include <string>

#include "logstrat/errors.hpp"
#include "logstrat/polynomial.hpp"

namespace logstrat {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring, std::size_t line, std::size_t column)
      : text_(text), ring_(ring), line_(line), column_(column) {
    advance();
  }

  Polynomial parse() {
    Polynomial p = expr();
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'", cur_.offset);
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t offset) const {
    std::size_t line = line_;
    std::size_t col = column_;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      cur_ = {Tok::End, "end of input", start};
      return;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      cur_ = {Tok::Number, std::string(text_.substr(start, pos_ - start)), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      cur_ = {Tok::Ident, std::string(text_.substr(start, pos_ - start)), start};
      return;
    }
    ++pos_;
    switch (c) {
      case '+': cur_ = {Tok::Plus, "+", start}; return;
      case '-': cur_ = {Tok::Minus, "-", start}; return;
      case '*': cur_ = {Tok::Star, "*", start}; return;
      case '/': cur_ = {Tok::Slash, "/", start}; return;
      case '^': cur_ = {Tok::Caret, "^", start}; return;
      case '(': cur_ = {Tok::LParen, "(", start}; return;
      case ')': cur_ = {Tok::RParen, ")", start}; return;
      default: fail(std::string("unexpected character '") + c + "'", start);
    }
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const bool minus = cur_.kind == Tok::Minus;
      advance();
      Polynomial rhs = term();
      if (minus) acc -= rhs; else acc += rhs;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const bool divide = cur_.kind == Tok::Slash;
      const std::size_t at = cur_.offset;
      advance();
      Polynomial rhs = unary();
      if (divide) {
        if (!rhs.is_constant() || rhs.is_zero())
          fail(rhs.is_zero() ? "division by zero" : "division by a non-constant", at);
        acc *= Rational(1) / rhs.leading_coefficient();
      } else {
        acc *= rhs;
      }
    }
    return acc;
  }

  Polynomial unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    if (cur_.kind == Tok::Plus) {
      advance();
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (cur_.kind == Tok::Caret) {
      advance();
      if (cur_.kind != Tok::Number) fail("exponent must be a non-negative integer", cur_.offset);
      const mpz_class e(cur_.text);
      if (e > 100000) fail("exponent too large", cur_.offset);
      advance();
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Polynomial atom() {
    switch (cur_.kind) {
      case Tok::Number: {
        const Rational v{mpz_class(cur_.text)};
        advance();
        return Polynomial::constant(ring_, v);
      }
      case Tok::Ident: {
        const auto idx = ring_->index_of(cur_.text);
        if (!idx) fail("unknown variable '" + cur_.text + "'", cur_.offset);
        advance();
        return Polynomial::variable(ring_, *idx);
      }
      case Tok::LParen: {
        advance();
        Polynomial p = expr();
        if (cur_.kind != Tok::RParen) fail("expected ')'", cur_.offset);
        advance();
        return p;
      }
      default:
        fail(cur_.kind == Tok::End ? "unexpected end of input" : "unexpected '" + cur_.text + "'",
             cur_.offset);
    }
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, "", 0};
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring, 1, 1).parse();
}

Polynomial parse_polynomial_at(std::string_view text, const RingPtr& ring, std::size_t line,
                               std::size_t column) {
  return Parser(text, ring, line, column).parse();
}

}  // namespace logstrat
