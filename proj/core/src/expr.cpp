#include <cctype>
#include <string>
#include <string_view>

#include "cdlevel/errors.hpp"
#include "cdlevel/field.hpp"
#include "internal.hpp"

namespace cdlevel::detail {

namespace {

struct Token {
  enum class Kind { Integer, Ident, Op, End } kind;
  std::string text;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ >= src_.size()) {
      tok_ = {Token::Kind::End, ""};
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      tok_ = {Token::Kind::Integer, std::string(src_.substr(start, pos_ - start))};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      tok_ = {Token::Kind::Ident, std::string(src_.substr(start, pos_ - start))};
      return;
    }
    if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      tok_ = {Token::Kind::Op, std::string(1, c)};
      ++pos_;
      return;
    }
    fail(Errc::SyntaxError, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
public:
  Parser(const Field& f, std::string_view src) : f_(f), lex_(src) {}

  Element run() {
    Element e = expr();
    if (lex_.peek().kind != Token::Kind::End) {
      fail(Errc::SyntaxError, "trailing input after expression");
    }
    return e;
  }

private:
  bool is_op(const char* s) const {
    return lex_.peek().kind == Token::Kind::Op && lex_.peek().text == s;
  }

  Element expr() {
    Element acc = term();
    while (is_op("+") || is_op("-")) {
      const bool plus = lex_.take().text == "+";
      Element rhs = term();
      acc = plus ? f_.add(acc, rhs) : f_.sub(acc, rhs);
    }
    return acc;
  }

  Element term() {
    Element acc = factor();
    while (is_op("*") || is_op("/")) {
      const bool times = lex_.take().text == "*";
      Element rhs = factor();
      acc = times ? f_.mul(acc, rhs) : f_.div(acc, rhs);
    }
    return acc;
  }

  Element factor() {
    bool negate = false;
    while (is_op("-") || is_op("+")) {
      if (lex_.take().text == "-") negate = !negate;
    }
    Element e = power();
    return negate ? f_.neg(e) : e;
  }

  Element power() {
    Element base = atom();
    if (is_op("^")) {
      lex_.take();
      bool neg_exp = false;
      while (is_op("-") || is_op("+")) {
        if (lex_.take().text == "-") neg_exp = !neg_exp;
      }
      if (lex_.peek().kind != Token::Kind::Integer) {
        fail(Errc::SyntaxError, "exponent must be an integer literal");
      }
      const std::string digits = lex_.take().text;
      if (digits.size() > 9) fail(Errc::SyntaxError, "exponent too large");
      std::int64_t e = std::stoll(digits);
      return f_.pow(base, neg_exp ? -e : e);
    }
    return base;
  }

  Element atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Kind::Integer:
        return f_.from_bigint(BigInt(t.text));
      case Token::Kind::Ident:
        return f_.variable_element(t.text);
      case Token::Kind::Op:
        if (t.text == "(") {
          Element e = expr();
          if (!is_op(")")) fail(Errc::SyntaxError, "missing ')'");
          lex_.take();
          return e;
        }
        break;
      case Token::Kind::End:
        break;
    }
    fail(Errc::SyntaxError, "expected integer, variable or '('");
  }

  const Field& f_;
  Lexer lex_;
};

bool needs_parens(const std::string& s) {
  return s.find(" + ") != std::string::npos ||
         s.find(" - ") != std::string::npos || s.find('/') != std::string::npos;
}

std::string wrap(const std::string& s) {
  return needs_parens(s) ? "(" + s + ")" : s;
}

std::string power_str(const std::string& var, std::size_t k) {
  return k == 1 ? var : var + "^" + std::to_string(k);
}

std::string poly_to_string(const Field& base, const Polynomial& p,
                           const std::string& var) {
  if (p.coeffs.empty()) return "0";
  std::string out;
  for (std::size_t i = p.coeffs.size(); i-- > 0;) {
    const Element& c = p.coeffs[i];
    if (base.is_zero(c)) continue;
    std::string cs = element_to_string(base, c);
    std::string term;
    if (i == 0) {
      term = wrap(cs);
    } else if (cs == "1") {
      term = power_str(var, i);
    } else if (cs == "-1") {
      term = "-" + power_str(var, i);
    } else {
      term = wrap(cs) + "*" + power_str(var, i);
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

// A printed polynomial that can stand unparenthesized as a division operand.
std::string poly_operand(const Field& base, const Polynomial& p,
                         const std::string& var) {
  std::string s = poly_to_string(base, p, var);
  const bool atomic = s.find(" + ") == std::string::npos &&
                      s.find(" - ") == std::string::npos &&
                      s.find('/') == std::string::npos &&
                      s.find('*') == std::string::npos && s.front() != '-';
  return atomic ? s : "(" + s + ")";
}

}  // namespace

Element parse_expression(const Field& f, std::string_view text) {
  return Parser(f, text).run();
}

std::string element_to_string(const Field& f, const Element& e) {
  switch (f.kind()) {
    case Field::Kind::Rationals: {
      const auto& r = std::get<BigRat>(e.v);
      return r.str();
    }
    case Field::Kind::Prime:
      return std::to_string(std::get<std::int64_t>(e.v));
    case Field::Kind::RatFunc: {
      const auto& rf = std::get<RatFunc>(e.v);
      const Field& base = *f.base();
      if (rf.den.coeffs.size() == 1 && base.is_one(rf.den.coeffs[0])) {
        return poly_to_string(base, rf.num, f.variable());
      }
      return poly_operand(base, rf.num, f.variable()) + "/" +
             poly_operand(base, rf.den, f.variable());
    }
  }
  return {};
}

}  // namespace cdlevel::detail
