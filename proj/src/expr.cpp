#include "qwalk/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace qw {

ExprError::ExprError(const std::string& msg, int column)
    : std::runtime_error("column " + std::to_string(column) + ": " + msg), column_(column) {}

struct Expression::Node {
  std::function<double(const ExprEnv&)> fn;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(std::function<double(const ExprEnv&)> f) {
  return std::make_shared<const Expression::Node>(Expression::Node{std::move(f)});
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse_all() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

  bool uses_x = false, uses_t = false;

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ExprError(msg, static_cast<int>(pos_) + 1); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        NodePtr rhs = term();
        lhs = make([lhs, rhs](const ExprEnv& e) { return lhs->fn(e) + rhs->fn(e); });
      } else if (accept('-')) {
        NodePtr rhs = term();
        lhs = make([lhs, rhs](const ExprEnv& e) { return lhs->fn(e) - rhs->fn(e); });
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        NodePtr rhs = unary();
        lhs = make([lhs, rhs](const ExprEnv& e) { return lhs->fn(e) * rhs->fn(e); });
      } else if (accept('/')) {
        NodePtr rhs = unary();
        lhs = make([lhs, rhs](const ExprEnv& e) { return lhs->fn(e) / rhs->fn(e); });
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      NodePtr n = unary();
      return make([n](const ExprEnv& e) { return -n->fn(e); });
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) {
      NodePtr ex = unary();  // right associative
      return make([base, ex](const ExprEnv& e) { return std::pow(base->fn(e), ex->fn(e)); });
    }
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return make([v](const ExprEnv&) { return v; });
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string id = s_.substr(start, pos_ - start);
    if (id == "x") {
      uses_x = true;
      return make([](const ExprEnv& e) { return e.x; });
    }
    if (id == "t") {
      uses_t = true;
      return make([](const ExprEnv& e) { return e.t; });
    }
    if (id == "a") return make([](const ExprEnv& e) { return e.a; });
    if (id == "L") return make([](const ExprEnv& e) { return e.L; });
    if (id == "pi") return make([](const ExprEnv&) { return std::numbers::pi; });

    using Fn = double (*)(double);
    Fn f = nullptr;
    if (id == "cos") f = [](double v) { return std::cos(v); };
    else if (id == "sin") f = [](double v) { return std::sin(v); };
    else if (id == "arccos") f = [](double v) { return std::acos(v); };
    else if (id == "sqrt") f = [](double v) { return std::sqrt(v); };
    else if (id == "exp") f = [](double v) { return std::exp(v); };
    if (!f) {
      pos_ = start;
      fail("unknown symbol '" + id + "'");
    }
    if (!accept('(')) fail("expected '(' after " + id);
    NodePtr arg = expr();
    if (!accept(')')) fail("expected ')'");
    return make([f, arg](const ExprEnv& e) { return f(arg->fn(e)); });
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Parser p(text);
  Expression e;
  e.root_ = p.parse_all();
  e.text_ = text;
  e.uses_x_ = p.uses_x;
  e.uses_t_ = p.uses_t;
  return e;
}

double Expression::eval(const ExprEnv& env) const { return root_->fn(env); }

}  // namespace qw
