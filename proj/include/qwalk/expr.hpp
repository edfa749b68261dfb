#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace qw {

// Values available to a schedule expression.
struct ExprEnv {
  double x = 0.0;
  double t = 0.0;
  double a = 1.0;  // lattice spacing
  double L = 1.0;
};

class ExprError : public std::runtime_error {
 public:
  ExprError(const std::string& msg, int column);
  int column() const { return column_; }

 private:
  int column_;
};

// Arithmetic (+ - * / ^, unary minus, parentheses), the functions cos, sin,
// arccos, sqrt, exp and the symbols x, t, a, L, pi.
class Expression {
 public:
  struct Node;

  static Expression parse(const std::string& text);
  double eval(const ExprEnv& env) const;
  // True when the expression mentions x (or t).
  bool depends_on_x() const { return uses_x_; }
  bool depends_on_t() const { return uses_t_; }
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  bool uses_x_ = false;
  bool uses_t_ = false;
};

}  // namespace qw
