#include "kodaira/textio.hpp"

#include <cctype>

namespace kodaira {

namespace {

struct Token {
  enum Kind { Int, Var, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
  uint64_t value = 0;
  std::string name;
  int line = 1, col = 1;
};

class Lexer {
public:
  Lexer(const std::string& s, std::vector<std::string> vars)
      : s_(s), vars_(std::move(vars)) {}

  Token next() {
    skipWs();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= s_.size()) {
      t.kind = Token::End;
      return t;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      uint64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = v * 10 + static_cast<uint64_t>(s_[pos_] - '0');
        advance();
      }
      t.kind = Token::Int;
      t.value = v;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        name.push_back(s_[pos_]);
        advance();
      }
      for (const auto& v : vars_)
        if (v == name) {
          t.kind = Token::Var;
          t.name = name;
          return t;
        }
      throw parse_error("unknown symbol '" + name + "'", t.line, t.col);
    }
    advance();
    switch (c) {
      case '+': t.kind = Token::Plus; return t;
      case '-': t.kind = Token::Minus; return t;
      case '*': t.kind = Token::Star; return t;
      case '/': t.kind = Token::Slash; return t;
      case '^': t.kind = Token::Caret; return t;
      case '(': t.kind = Token::LParen; return t;
      case ')': t.kind = Token::RParen; return t;
      default: throw parse_error(std::string("unexpected character '") + c + "'", t.line, t.col);
    }
  }

private:
  void skipWs() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }
  void advance() {
    if (pos_ < s_.size()) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }
  const std::string& s_;
  std::vector<std::string> vars_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

// Recursive-descent parser producing a rational function in one variable.
class RatParser {
public:
  RatParser(const std::string& text, FieldPtr k, std::string var)
      : lex_(text, {var}), k_(std::move(k)), var_(std::move(var)) {
    cur_ = lex_.next();
  }

  FqRat parse() {
    FqRat r = expr();
    expect(Token::End, "end of expression");
    return r;
  }

private:
  FqRat expr() {
    bool neg = false;
    while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
      if (cur_.kind == Token::Minus) neg = !neg;
      bump();
    }
    FqRat acc = term();
    if (neg) acc = -acc;
    while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
      bool minus = cur_.kind == Token::Minus;
      bump();
      FqRat t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  FqRat term() {
    FqRat acc = factor();
    for (;;) {
      if (cur_.kind == Token::Star) {
        bump();
        acc = acc * factor();
      } else if (cur_.kind == Token::Slash) {
        auto at = cur_;
        bump();
        FqRat d = factor();
        if (d.isZero()) throw parse_error("division by zero", at.line, at.col);
        acc = acc / d;
      } else if (cur_.kind == Token::Int || cur_.kind == Token::Var || cur_.kind == Token::LParen) {
        acc = acc * factor();  // implicit multiplication
      } else {
        return acc;
      }
    }
  }

  FqRat factor() {
    FqRat base = atom();
    if (cur_.kind == Token::Caret) {
      auto at = cur_;
      bump();
      bool neg = false;
      while (cur_.kind == Token::Minus) { neg = !neg; bump(); }
      if (cur_.kind != Token::Int) throw parse_error("exponent must be an integer", at.line, at.col);
      uint64_t e = cur_.value;
      bump();
      if (e > 100000) throw parse_error("exponent too large", at.line, at.col);
      FqRat r = base.oneLike();
      for (uint64_t i = 0; i < e; ++i) r = r * base;
      if (neg) {
        if (r.isZero()) throw parse_error("zero to a negative power", at.line, at.col);
        r = r.inverse();
      }
      return r;
    }
    return base;
  }

  FqRat atom() {
    switch (cur_.kind) {
      case Token::Int: {
        FieldElement c = k_->fromUint(cur_.value);
        bump();
        return FqRat(FqPoly::constant(c));
      }
      case Token::Var: {
        bump();
        return FqRat(FqPoly::gen(k_->zero()));
      }
      case Token::LParen: {
        bump();
        FqRat r = expr();
        expect(Token::RParen, "')'");
        return r;
      }
      default:
        throw parse_error("expected a value", cur_.line, cur_.col);
    }
  }

  void expect(Token::Kind k, const std::string& what) {
    if (cur_.kind != k) throw parse_error("expected " + what, cur_.line, cur_.col);
    if (k != Token::End) bump();
  }
  void bump() { cur_ = lex_.next(); }

  Lexer lex_;
  FieldPtr k_;
  std::string var_;
  Token cur_;
};

}  // namespace

FqRat parse_rat(const std::string& text, const FieldPtr& k, const std::string& var) {
  return RatParser(text, k, var).parse();
}

FqPoly parse_poly(const std::string& text, const FieldPtr& k, const std::string& var) {
  FqRat r = parse_rat(text, k, var);
  if (!r.isPolynomial()) throw parse_error("expected a polynomial, got a proper quotient", 1, 1);
  return r.num().scaled(r.den()[0].inverse());
}

std::string poly_text(const FqPoly& f, const std::string& var) {
  if (f.isZero()) return "0";
  std::string out;
  bool first = true;
  for (long i = f.deg(); i >= 0; --i) {
    const FieldElement& c = f[static_cast<size_t>(i)];
    if (c.isZero()) continue;
    if (!first) out += " + ";
    first = false;
    bool unit_coeff = c.isOne() && i > 0;
    if (!unit_coeff) out += c.str();
    if (i > 0) {
      if (!unit_coeff) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::string rat_text(const FqRat& r, const std::string& var) {
  if (r.isPolynomial()) return poly_text(r.num().scaled(r.den()[0].inverse()), var);
  std::string n = poly_text(r.num(), var);
  std::string d = poly_text(r.den(), var);
  auto wrap = [](const std::string& s) {
    return s.find_first_of("+- ") == std::string::npos ? s : "(" + s + ")";
  };
  return wrap(n) + "/" + wrap(d);
}

}  // namespace kodaira
