/// \file
/// Tiny arithmetic expression evaluator used for function and density payloads
/// such as "exp(-x) * sin(3*x)^2". Grammar:
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('+' | '-') unary | power
///   power  := atom ('^' unary)?
///   atom   := number | name | name '(' expr ')' | '(' expr ')'
///
/// Names: x (first coordinate), x0..x9, pi, e. Functions: exp, log, sin, cos,
/// tan, sqrt, abs, step (1 for argument >= 0).

#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "lcanorm/group.hpp"

namespace lcanorm {

class Expression {
 public:
  explicit Expression(std::string source) : source_(std::move(source)) {
    pos_ = 0;
    root_ = parse_expr();
    skip_space();
    if (pos_ != source_.size()) fail("unexpected '" + std::string(1, source_[pos_]) + "'");
  }

  double operator()(std::span<const double> coords) const { return eval(*root_, coords); }
  double operator()(double x) const { return eval(*root_, std::span<const double>(&x, 1)); }

  const std::string& source() const { return source_; }

 private:
  enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  struct Node {
    Op op;
    double value = 0.0;
    std::size_t var = 0;
    std::string fn;
    std::unique_ptr<Node> lhs, rhs;
  };

  static double eval(const Node& n, std::span<const double> xs) {
    switch (n.op) {
      case Op::Number: return n.value;
      case Op::Var:
        if (n.var >= xs.size()) throw Error("expression uses coordinate x" + std::to_string(n.var) + " out of range");
        return xs[n.var];
      case Op::Neg: return -eval(*n.lhs, xs);
      case Op::Add: return eval(*n.lhs, xs) + eval(*n.rhs, xs);
      case Op::Sub: return eval(*n.lhs, xs) - eval(*n.rhs, xs);
      case Op::Mul: return eval(*n.lhs, xs) * eval(*n.rhs, xs);
      case Op::Div: return eval(*n.lhs, xs) / eval(*n.rhs, xs);
      case Op::Pow: return std::pow(eval(*n.lhs, xs), eval(*n.rhs, xs));
      case Op::Call: {
        const double a = eval(*n.lhs, xs);
        if (n.fn == "exp") return std::exp(a);
        if (n.fn == "log") return std::log(a);
        if (n.fn == "sin") return std::sin(a);
        if (n.fn == "cos") return std::cos(a);
        if (n.fn == "tan") return std::tan(a);
        if (n.fn == "sqrt") return std::sqrt(a);
        if (n.fn == "abs") return std::abs(a);
        return a >= 0.0 ? 1.0 : 0.0;  // step
      }
    }
    return 0.0;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("expression \"" + source_ + "\" at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < source_.size() && std::isspace(static_cast<unsigned char>(source_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < source_.size() && source_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static std::unique_ptr<Node> make(Op op, std::unique_ptr<Node> lhs = nullptr, std::unique_ptr<Node> rhs = nullptr) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  std::unique_ptr<Node> parse_expr() {
    auto lhs = parse_term();
    while (true) {
      if (accept('+')) {
        lhs = make(Op::Add, std::move(lhs), parse_term());
      } else if (accept('-')) {
        lhs = make(Op::Sub, std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Node> parse_term() {
    auto lhs = parse_unary();
    while (true) {
      if (accept('*')) {
        lhs = make(Op::Mul, std::move(lhs), parse_unary());
      } else if (accept('/')) {
        lhs = make(Op::Div, std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Node> parse_unary() {
    if (accept('-')) return make(Op::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  std::unique_ptr<Node> parse_power() {
    auto base = parse_atom();
    if (accept('^')) return make(Op::Pow, std::move(base), parse_unary());
    return base;
  }

  std::unique_ptr<Node> parse_atom() {
    skip_space();
    if (pos_ >= source_.size()) fail("unexpected end of input");
    if (accept('(')) {
      auto inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const char c = source_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = source_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = make(Op::Number);
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (pos_ < source_.size() && std::isalnum(static_cast<unsigned char>(source_[pos_]))) name += source_[pos_++];
      if (accept('(')) {
        static const char* const known[] = {"exp", "log", "sin", "cos", "tan", "sqrt", "abs", "step"};
        bool ok = false;
        for (const char* k : known) ok = ok || name == k;
        if (!ok) fail("unknown function " + name);
        auto n = make(Op::Call, parse_expr());
        n->fn = name;
        if (!accept(')')) fail("expected ')'");
        return n;
      }
      if (name == "pi") {
        auto n = make(Op::Number);
        n->value = std::numbers::pi;
        return n;
      }
      if (name == "e") {
        auto n = make(Op::Number);
        n->value = std::numbers::e;
        return n;
      }
      if (name == "x") return make(Op::Var);
      if (name.size() == 2 && name[0] == 'x' && std::isdigit(static_cast<unsigned char>(name[1]))) {
        auto n = make(Op::Var);
        n->var = static_cast<std::size_t>(name[1] - '0');
        return n;
      }
      fail("unknown name " + name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string source_;
  std::size_t pos_ = 0;
  std::shared_ptr<Node> root_;
};

}  // namespace lcanorm
