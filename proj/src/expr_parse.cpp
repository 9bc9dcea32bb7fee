#include "mvx/expr_parse.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

#include "mvx/errors.hpp"

namespace mvx {

namespace {

class Parser {
 public:
  Parser(std::string_view s, int dim, int line, int col0)
      : s_(s), dim_(dim), line_(line), col0_(col0) {}

  Expr parse() {
    Expr e = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view s_;
  int dim_;
  int line_;
  int col0_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, col0_ + static_cast<int>(pos_), msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Expr sum() {
    Expr e = term();
    for (;;) {
      if (eat('+'))
        e = add(e, term());
      else if (eat('-'))
        e = sub(e, term());
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (eat('*'))
        e = mul(e, unary());
      else if (eat('/'))
        e = div(e, unary());
      else
        return e;
    }
  }

  Expr unary() {
    if (eat('-')) return neg(unary());
    if (eat('+')) return unary();
    return power();
  }

  Expr power() {
    Expr e = atom();
    if (eat('^')) {
      skip_ws();
      bool negexp = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
        negexp = s_[pos_] == '-';
        ++pos_;
      }
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("integer exponent expected after '^'");
      int k = 0;
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        k = k * 10 + (s_[pos_] - '0');
        if (k > 64) fail("exponent too large");
        ++pos_;
      }
      e = powi(e, negexp ? -k : k);
    }
    return e;
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expression expected");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      if (!eat(')')) fail("')' expected");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
            s_[pos_] == '.'))
      ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      size_t save = pos_;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() &&
               std::isdigit(static_cast<unsigned char>(s_[pos_])))
          ++pos_;
      } else {
        pos_ = save;
      }
    }
    std::string tok(s_.substr(start, pos_ - start));
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) {
      pos_ = start;
      fail("malformed number '" + tok + "'");
    }
    return konst(v);
  }

  Expr name() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_]))))
      ++pos_;
    std::string id(s_.substr(start, pos_ - start));
    if (id.size() >= 2 && id[0] == 'x' &&
        std::isdigit(static_cast<unsigned char>(id[1]))) {
      int mu = std::atoi(id.c_str() + 1);
      if (mu < 1 || mu > dim_) {
        pos_ = start;
        fail("unknown coordinate '" + id + "' in dimension " +
             std::to_string(dim_));
      }
      return coord(mu - 1);
    }
    if (!eat('(')) {
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    Expr arg = sum();
    if (!eat(')')) fail("')' expected");
    if (id == "sin") return sin_(arg);
    if (id == "cos") return cos_(arg);
    if (id == "exp") return exp_(arg);
    if (id == "sqrt") return sqrt_(arg);
    if (id == "abs") return abs_(arg);
    pos_ = start;
    fail("unknown function '" + id + "'");
  }
};

}  // namespace

Expr parse_expr(std::string_view text, int dim, int line, int col0) {
  return Parser(text, dim, line, col0).parse();
}

}  // namespace mvx
