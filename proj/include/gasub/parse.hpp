#pragma once

#include <cctype>
#include <charconv>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gasub/signature.hpp"

namespace gasub {

struct ParseError : Error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t at)
      : Error(msg + " (at offset " + std::to_string(at) + ")"), offset(at) {}
};

struct Expr {
  enum class Kind { Number, Basis, Neg, Add, Sub, Geometric, Wedge, Contract, Call };
  Kind kind;
  double number = 0.0;
  int basis = 0;          // 1-based generator index, Kind::Basis
  std::string func;       // Kind::Call
  std::vector<std::unique_ptr<Expr>> args;  // children: operands or call arguments
};

using ExprPtr = std::unique_ptr<Expr>;

namespace parse_detail {

struct Arity {
  int min;
  int max;
};

inline const std::map<std::string, Arity>& function_table() {
  static const std::map<std::string, Arity> table = {
      {"meet", {2, 2}}, {"join", {2, 2}},   {"delta", {2, 2}},  {"idiv", {2, 2}},
      {"lmeet", {2, 3}}, {"ljoin", {2, 2}}, {"grade", {2, 2}},  {"rev", {1, 1}},
      {"inv", {1, 1}},  {"proj", {2, 2}},   {"pseudo", {0, 0}}, {"factor", {1, 1}},
      {"isblade", {1, 1}},
  };
  return table;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static ExprPtr node(Expr::Kind kind) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    return e;
  }

  static ExprPtr binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs) {
    ExprPtr e = node(kind);
    e->args.push_back(std::move(lhs));
    e->args.push_back(std::move(rhs));
    return e;
  }

  // expr := term (('+'|'-') term)*
  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      lhs = binary(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs), term());
    }
  }

  // term := unary (('*'|'^'|'|') unary)*; the three products share one
  // precedence level and associate left.
  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      char c = peek();
      Expr::Kind kind;
      if (c == '*')
        kind = Expr::Kind::Geometric;
      else if (c == '^')
        kind = Expr::Kind::Wedge;
      else if (c == '|')
        kind = Expr::Kind::Contract;
      else
        return lhs;
      ++pos_;
      lhs = binary(kind, std::move(lhs), unary());
    }
  }

  // unary := '-' unary | atom
  ExprPtr unary() {
    if (peek() == '-') {
      ++pos_;
      ExprPtr e = node(Expr::Kind::Neg);
      e->args.push_back(unary());
      return e;
    }
    return atom();
  }

  // atom := number | 'e'digits | func '(' args ')' | '(' expr ')'
  ExprPtr atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  ExprPtr number() {
    skip_ws();
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    ExprPtr e = node(Expr::Kind::Number);
    e->number = value;
    return e;
  }

  ExprPtr identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalnum(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));

    // Basis vector reference: 'e' followed by digits only.
    if (name.size() > 1 && name[0] == 'e' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
      ExprPtr e = node(Expr::Kind::Basis);
      e->basis = std::stoi(name.substr(1));
      return e;
    }

    auto it = function_table().find(name);
    if (it == function_table().end())
      throw ParseError("unknown function '" + name + "'", start);
    if (peek() != '(') throw ParseError("expected '(' after '" + name + "'", pos_);
    ++pos_;
    ExprPtr e = node(Expr::Kind::Call);
    e->func = name;
    if (peek() == ')') {
      ++pos_;
    } else {
      e->args.push_back(expr());
      while (peek() == ',') {
        ++pos_;
        e->args.push_back(expr());
      }
      if (peek() != ')') throw ParseError("expected ')' in call to '" + name + "'", pos_);
      ++pos_;
    }
    int argc = static_cast<int>(e->args.size());
    if (argc < it->second.min || argc > it->second.max)
      throw ParseError("'" + name + "' expects " + std::to_string(it->second.min) +
                           (it->second.max != it->second.min
                                ? ".." + std::to_string(it->second.max)
                                : "") +
                           " arguments, got " + std::to_string(argc),
                       start);
    return e;
  }
};

}  // namespace parse_detail

inline ExprPtr parse(std::string_view text) { return parse_detail::Parser(text).run(); }

}  // namespace gasub
