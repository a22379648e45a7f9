#include "gcauchy/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "gcauchy/errors.hpp"

namespace gcauchy {

struct Expression::Node {
  enum Kind { number, variable, neg, add, sub, mul, div, pow, call } kind;
  cplx value = 0;
  cplx (*fn)(const cplx&) = nullptr;
  std::shared_ptr<const Node> a, b;

  cplx eval(double v) const {
    switch (kind) {
      case number: return value;
      case variable: return v;
      case neg: return -a->eval(v);
      case add: return a->eval(v) + b->eval(v);
      case sub: return a->eval(v) - b->eval(v);
      case mul: return a->eval(v) * b->eval(v);
      case div: return a->eval(v) / b->eval(v);
      case pow: {
        const cplx x = a->eval(v), y = b->eval(v);
        // keep real powers real, and integer powers exact
        if (y.imag() == 0 && x.imag() == 0 && (x.real() >= 0 || y.real() == std::round(y.real())))
          return std::pow(x.real(), y.real());
        if (y.imag() == 0 && y.real() == std::round(y.real()) && std::abs(y.real()) <= 64) {
          long n = std::lround(std::abs(y.real()));
          cplx r = 1, b = x;
          for (; n; n >>= 1, b *= b)
            if (n & 1) r *= b;
          return y.real() < 0 ? 1.0 / r : r;
        }
        return std::pow(x, y);
      }
      case call: return fn(a->eval(v));
    }
    return 0;
  }
};

namespace {

using NodeP = std::shared_ptr<const Expression::Node>;

cplx c_sin(const cplx& z) { return z.imag() == 0 ? cplx(std::sin(z.real())) : std::sin(z); }
cplx c_cos(const cplx& z) { return z.imag() == 0 ? cplx(std::cos(z.real())) : std::cos(z); }
cplx c_sinh(const cplx& z) { return z.imag() == 0 ? cplx(std::sinh(z.real())) : std::sinh(z); }
cplx c_cosh(const cplx& z) { return z.imag() == 0 ? cplx(std::cosh(z.real())) : std::cosh(z); }
cplx c_exp(const cplx& z) { return z.imag() == 0 ? cplx(std::exp(z.real())) : std::exp(z); }

NodeP make(Expression::Node::Kind k, NodeP a = nullptr, NodeP b = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodeP run() {
    NodeP e = expr();
    skip();
    if (p_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[p_]) + "'", p_);
    return e;
  }
  bool uses_i = false, uses_var = false;

 private:
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }

  NodeP expr() {
    NodeP a = term();
    for (;;) {
      if (eat('+'))
        a = make(Expression::Node::add, a, term());
      else if (eat('-'))
        a = make(Expression::Node::sub, a, term());
      else
        return a;
    }
  }
  NodeP term() {
    NodeP a = unary();
    for (;;) {
      if (eat('*'))
        a = make(Expression::Node::mul, a, unary());
      else if (eat('/'))
        a = make(Expression::Node::div, a, unary());
      else
        return a;
    }
  }
  // -x^2 is -(x^2)
  NodeP unary() {
    if (eat('-')) return make(Expression::Node::neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  NodeP power() {
    NodeP a = primary();
    if (eat('^')) return make(Expression::Node::pow, a, unary());
    return a;
  }
  NodeP primary() {
    skip();
    if (p_ >= s_.size()) throw ParseError("expected a value", p_);
    const char c = s_[p_];
    if (c == '(') {
      ++p_;
      NodeP e = expr();
      if (!eat(')')) throw ParseError("expected ')'", p_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(s_.substr(p_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      const std::size_t len = end - rest.c_str();
      if (len == 0) throw ParseError("malformed number", p_);
      p_ += len;
      auto n = std::make_shared<Expression::Node>();
      n->kind = Expression::Node::number;
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = p_;
      while (p_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[p_]))) ++p_;
      const std::string id(s_.substr(start, p_ - start));
      if (id == "y" || id == "t") {
        uses_var = true;
        return make(Expression::Node::variable);
      }
      if (id == "i") {
        uses_i = true;
        auto n = std::make_shared<Expression::Node>();
        n->kind = Expression::Node::number;
        n->value = cplx(0, 1);
        return n;
      }
      cplx (*fn)(const cplx&) = nullptr;
      if (id == "sin") fn = c_sin;
      if (id == "cos") fn = c_cos;
      if (id == "sinh") fn = c_sinh;
      if (id == "cosh") fn = c_cosh;
      if (id == "exp") fn = c_exp;
      if (!fn) throw ParseError("unknown name '" + id + "'", start);
      if (!eat('(')) throw ParseError("expected '(' after " + id, p_);
      auto n = std::make_shared<Expression::Node>();
      n->kind = Expression::Node::call;
      n->fn = fn;
      n->a = expr();
      if (!eat(')')) throw ParseError("expected ')'", p_);
      return n;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", p_);
  }

  std::string_view s_;
  std::size_t p_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view src) {
  Parser p(src);
  Expression e;
  e.root_ = p.run();
  e.src_ = std::string(src);
  e.uses_i_ = p.uses_i;
  e.constant_ = !p.uses_var;
  return e;
}

cplx Expression::operator()(double v) const { return root_->eval(v); }

}  // namespace gcauchy
