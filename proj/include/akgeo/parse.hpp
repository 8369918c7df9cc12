#pragma once

// Recursive-descent parser for the expression language:
//
//   expr     := term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := base ('^' exponent)?
//   base     := number | 'i' | identifier | call | '(' expr ')' | '-' factor
//   call     := ('exp'|'log'|'sqrt'|'conj') '(' expr ')'
//   exponent := integer | '(' integer '/' integer ')'
//
// sqrt(e) is sugar for e^(1/2). Identifiers: x1..x4, the aliases z1, z2,
// z1b, z2b, v, and declared parameter names. '#' starts a comment to end of
// line; whitespace is insignificant. Decimal literals become exact rationals.

#include "akgeo/errors.hpp"
#include "akgeo/expr.hpp"

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace akgeo {

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::map<std::string, Expression> identifiers)
      : text_(text), ids_(std::move(identifiers)) {}

  Expression parse() {
    Expression e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

  static std::map<std::string, Expression> default_identifiers() {
    std::map<std::string, Expression> ids;
    Expression i = imaginary_unit();
    Expression x1 = make_coordinate(1), x2 = make_coordinate(2);
    Expression x3 = make_coordinate(3), x4 = make_coordinate(4);
    ids["x1"] = x1;
    ids["x2"] = x2;
    ids["x3"] = x3;
    ids["x4"] = x4;
    ids["z1"] = x1 + i * x2;
    ids["z2"] = x3 + i * x4;
    ids["z1b"] = x1 - i * x2;
    ids["z2b"] = x3 - i * x4;
    ids["v"] = 2 * x1;
    return ids;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expression parse_expr() {
    Expression acc = parse_term();
    while (true) {
      if (eat('+')) {
        acc = acc + parse_term();
      } else if (eat('-')) {
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  Expression parse_term() {
    Expression acc = parse_factor();
    while (true) {
      if (eat('*')) {
        acc = acc * parse_factor();
      } else if (eat('/')) {
        acc = acc / parse_factor();
      } else {
        return acc;
      }
    }
  }

  Expression parse_factor() {
    Expression base = parse_base();
    if (eat('^')) return make_power(std::move(base), parse_exponent());
    return base;
  }

  Rational parse_exponent() {
    skip_ws();
    if (eat('(')) {
      BigInt num = parse_integer();
      BigInt den = 1;
      skip_ws();
      if (eat('/')) {
        den = parse_integer();
        if (den == 0) throw ParseError("zero denominator in exponent", pos_);
      }
      if (!eat(')')) throw ParseError("expected ')' after rational exponent", pos_);
      return Rational(num, den);
    }
    return Rational(parse_integer());
  }

  BigInt parse_integer() {
    skip_ws();
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_++];
    }
    if (digits.empty()) throw ParseError("expected integer", start);
    BigInt v(digits);
    return neg ? -v : v;
  }

  Expression parse_base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return -parse_factor();
    }
    if (c == '(') {
      ++pos_;
      Expression e = parse_expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expression parse_number() {
    std::size_t start = pos_;
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      digits += text_[pos_++];
    Rational value = digits.empty() ? Rational(0) : Rational(BigInt(digits));
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::string frac;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        frac += text_[pos_++];
      if (digits.empty() && frac.empty()) throw ParseError("malformed number", start);
      if (!frac.empty()) {
        BigInt scale = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
        value += Rational(BigInt(frac), scale);
      }
    } else if (digits.empty()) {
      throw ParseError("malformed number", start);
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      BigInt ex = parse_integer();
      if (ex >= 0) {
        for (BigInt k = 0; k < ex; ++k) value *= 10;
      } else {
        for (BigInt k = 0; k > ex; --k) value /= 10;
      }
    }
    return make_rational(value);
  }

  Expression parse_identifier() {
    std::size_t start = pos_;
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      name += text_[pos_++];
    }
    if (name == "i") return imaginary_unit();
    if (name == "exp" || name == "log" || name == "sqrt" || name == "conj") {
      if (!eat('(')) throw ParseError("expected '(' after " + name, pos_);
      Expression arg = parse_expr();
      if (!eat(')')) throw ParseError("expected ')' after " + name + " argument", pos_);
      if (name == "exp") return make_exp(std::move(arg));
      if (name == "log") return make_log(std::move(arg));
      if (name == "sqrt") return make_power(std::move(arg), Rational(1, 2));
      return conjugate(arg);
    }
    auto it = ids_.find(name);
    if (it == ids_.end()) throw ParseError("unknown identifier '" + name + "'", start);
    return it->second;
  }

  std::string_view text_;
  std::map<std::string, Expression> ids_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses an expression; known_parameters become Parameter leaves (real-valued).
inline Expression parse_expression(std::string_view text,
                                   const std::vector<std::string>& known_parameters = {}) {
  auto ids = detail::ExpressionParser::default_identifiers();
  for (const std::string& p : known_parameters) ids[p] = make_parameter(p);
  return detail::ExpressionParser(text, std::move(ids)).parse();
}

// Variant used by the model-file reader: extra identifiers (the differential
// symbols) are injected directly.
inline Expression parse_expression_with(std::string_view text,
                                        const std::map<std::string, Expression>& extra,
                                        const std::vector<std::string>& known_parameters = {}) {
  auto ids = detail::ExpressionParser::default_identifiers();
  for (const std::string& p : known_parameters) ids[p] = make_parameter(p);
  for (const auto& [k, v] : extra) ids[k] = v;
  return detail::ExpressionParser(text, std::move(ids)).parse();
}

}  // namespace akgeo
