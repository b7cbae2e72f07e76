#pragma once

#include <memory>
#include <string>
#include <vector>

namespace fbspde {

/// Compiled arithmetic expression over the variables
///   t, x1..x9 (x aliases x1), w (path-functional channel), v (driver value).
/// Operators: + - * / ^ (right-assoc), unary +/-.
/// Functions: exp, sin, cos, abs, sqrt, max(a,b).
class Expr {
public:
  Expr() = default;

  /// Throws DomainError with a character position on parse failure.
  static Expr compile(const std::string& text, int max_dim = 9);

  double eval(double t, const double* x, double w = 0.0, double v = 0.0) const;

  /// Highest x-index referenced (0 when none).
  int max_axis() const { return max_axis_; }
  bool uses_t() const { return uses_t_; }
  bool uses_w() const { return uses_w_; }
  bool uses_v() const { return uses_v_; }
  const std::string& text() const { return text_; }
  bool empty() const { return code_.empty(); }

private:
  // Stack bytecode: push constants/variables, apply ops.
  enum class Op : unsigned char {
    push_const, push_t, push_x, push_w, push_v,
    add, sub, mul, divide, pow, neg,
    fn_exp, fn_sin, fn_cos, fn_abs, fn_sqrt, fn_max,
  };
  struct Instr {
    Op op;
    int arg = 0;
    double value = 0.0;
  };

  std::vector<Instr> code_;
  std::string text_;
  int max_axis_ = 0;
  bool uses_t_ = false, uses_w_ = false, uses_v_ = false;

  friend class ExprParser;
};

}  // namespace fbspde
