#include "stepwave/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "stepwave/constants.hpp"
#include "stepwave/error.hpp"

namespace stepwave {

struct Expr::Node {
  enum class Kind { number, variable, negate, add, sub, mul, div, pow, exp, abs, sqrt };

  Kind kind = Kind::number;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->value = v;
  return n;
}

NodePtr make_node(Node::Kind kind, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

double evaluate(const Node& n, double x) {
  switch (n.kind) {
  case Node::Kind::number: return n.value;
  case Node::Kind::variable: return x;
  case Node::Kind::negate: return -evaluate(*n.lhs, x);
  case Node::Kind::add: return evaluate(*n.lhs, x) + evaluate(*n.rhs, x);
  case Node::Kind::sub: return evaluate(*n.lhs, x) - evaluate(*n.rhs, x);
  case Node::Kind::mul: return evaluate(*n.lhs, x) * evaluate(*n.rhs, x);
  case Node::Kind::div: return evaluate(*n.lhs, x) / evaluate(*n.rhs, x);
  case Node::Kind::pow: return std::pow(evaluate(*n.lhs, x), evaluate(*n.rhs, x));
  case Node::Kind::exp: return std::exp(evaluate(*n.lhs, x));
  case Node::Kind::abs: return std::abs(evaluate(*n.lhs, x));
  case Node::Kind::sqrt: return std::sqrt(evaluate(*n.lhs, x));
  }
  return 0.0;
}

void print(const Node& n, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print(*n.lhs, out);
    out += op;
    print(*n.rhs, out);
    out += ')';
  };
  auto call = [&](const char* name) {
    out += name;
    out += '(';
    print(*n.lhs, out);
    out += ')';
  };
  switch (n.kind) {
  case Node::Kind::number: {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", n.value);
    out += '(';
    out += buf;
    out += ')';
    break;
  }
  case Node::Kind::variable: out += 'x'; break;
  case Node::Kind::negate:
    out += "(-";
    print(*n.lhs, out);
    out += ')';
    break;
  case Node::Kind::add: binary(" + "); break;
  case Node::Kind::sub: binary(" - "); break;
  case Node::Kind::mul: binary(" * "); break;
  case Node::Kind::div: binary(" / "); break;
  case Node::Kind::pow: binary(" ^ "); break;
  case Node::Kind::exp: call("exp"); break;
  case Node::Kind::abs: call("abs"); break;
  case Node::Kind::sqrt: call("sqrt"); break;
  }
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

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

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make_node(Node::Kind::add, lhs, term());
      else if (accept('-')) lhs = make_node(Node::Kind::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make_node(Node::Kind::mul, lhs, unary());
      else if (accept('/')) lhs = make_node(Node::Kind::div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_node(Node::Kind::negate, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make_node(Node::Kind::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      NodePtr inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits();
      } else {
        pos_ = save;  // "2e" followed by something else: let the caller complain
      }
    }
    double value = 0.0;
    auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || end != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return make_number(value);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name == "x") return make_node(Node::Kind::variable, nullptr);
    if (name == "pi") return make_number(std::numbers::pi);
    if (name == "e2") return make_number(kCoulombE2);

    Node::Kind fn;
    if (name == "exp") fn = Node::Kind::exp;
    else if (name == "abs") fn = Node::Kind::abs;
    else if (name == "sqrt") fn = Node::Kind::sqrt;
    else {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    if (!accept('(')) fail("expected '(' after " + std::string(name));
    NodePtr arg = expression();
    if (!accept(')')) fail("expected ')'");
    return make_node(fn, std::move(arg));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

Expr::Expr() : root_(make_number(0.0)) {}

double Expr::operator()(double x) const { return evaluate(*root_, x); }

std::string Expr::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

Expr parse_expr(std::string_view text) { return Expr(Parser(text).parse()); }

} // namespace stepwave
