#include "fbspde/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "fbspde/errors.hpp"

namespace fbspde {

class ExprParser {
public:
  ExprParser(const std::string& text, int max_dim, Expr& out)
      : text_(text), max_dim_(max_dim), out_(out) {}

  void run() {
    parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

private:
  const std::string& text_;
  int max_dim_;
  Expr& out_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw DomainError("expression error at position " + std::to_string(pos_ + 1) + ": " + msg +
                      " in '" + text_ + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
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

  void emit(Expr::Op op, int arg = 0, double value = 0.0) {
    out_.code_.push_back({op, arg, value});
  }

  // expr := term (('+'|'-') term)*
  void parse_expr() {
    parse_term();
    for (;;) {
      if (consume('+')) {
        parse_term();
        emit(Expr::Op::add);
      } else if (consume('-')) {
        parse_term();
        emit(Expr::Op::sub);
      } else {
        return;
      }
    }
  }

  // term := unary (('*'|'/') unary)*
  void parse_term() {
    parse_unary();
    for (;;) {
      if (consume('*')) {
        parse_unary();
        emit(Expr::Op::mul);
      } else if (consume('/')) {
        parse_unary();
        emit(Expr::Op::divide);
      } else {
        return;
      }
    }
  }

  // unary := ('-'|'+')* power
  void parse_unary() {
    if (consume('-')) {
      parse_unary();
      emit(Expr::Op::neg);
      return;
    }
    if (consume('+')) {
      parse_unary();
      return;
    }
    parse_power();
  }

  // power := primary ('^' unary)?   (right associative)
  void parse_power() {
    parse_primary();
    if (consume('^')) {
      parse_unary();
      emit(Expr::Op::pow);
    }
  }

  void parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a value");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      parse_expr();
      if (!consume(')')) fail("expected ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      parse_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      parse_ident();
      return;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  void parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    emit(Expr::Op::push_const, 0, value);
  }

  void parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name = text_.substr(start, pos_ - start);

    if (peek() == '(') {
      parse_call(name);
      return;
    }
    if (name == "t") {
      out_.uses_t_ = true;
      emit(Expr::Op::push_t);
      return;
    }
    if (name == "w") {
      out_.uses_w_ = true;
      emit(Expr::Op::push_w);
      return;
    }
    if (name == "v" || name == "u") {  // driver value; u accepted as an alias
      out_.uses_v_ = true;
      emit(Expr::Op::push_v);
      return;
    }
    if (name == "pi") {
      emit(Expr::Op::push_const, 0, 3.14159265358979323846);
      return;
    }
    if (name == "x") {
      out_.max_axis_ = std::max(out_.max_axis_, 1);
      emit(Expr::Op::push_x, 0);
      return;
    }
    if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '9') {
      const int axis = name[1] - '1';
      if (axis >= max_dim_) fail("variable '" + name + "' exceeds the problem dimension");
      out_.max_axis_ = std::max(out_.max_axis_, axis + 1);
      emit(Expr::Op::push_x, axis);
      return;
    }
    pos_ = start;
    fail("unknown identifier '" + name + "' (allowed: t, x, x1..x9, w, v, pi)");
  }

  void parse_call(const std::string& name) {
    if (!consume('(')) fail("expected '('");
    parse_expr();
    if (name == "max") {
      if (!consume(',')) fail("max takes two arguments");
      parse_expr();
      if (!consume(')')) fail("expected ')'");
      emit(Expr::Op::fn_max);
      return;
    }
    if (!consume(')')) fail("expected ')'");
    if (name == "exp") emit(Expr::Op::fn_exp);
    else if (name == "sin") emit(Expr::Op::fn_sin);
    else if (name == "cos") emit(Expr::Op::fn_cos);
    else if (name == "abs") emit(Expr::Op::fn_abs);
    else if (name == "sqrt") emit(Expr::Op::fn_sqrt);
    else fail("unknown function '" + name + "' (allowed: exp, sin, cos, abs, sqrt, max)");
  }
};

Expr Expr::compile(const std::string& text, int max_dim) {
  Expr e;
  e.text_ = text;
  ExprParser parser(text, max_dim, e);
  parser.run();
  // Validate the evaluation stack never outgrows the fixed buffer.
  int depth = 0, peak = 0;
  for (const Instr& in : e.code_) {
    switch (in.op) {
      case Op::push_const:
      case Op::push_t:
      case Op::push_x:
      case Op::push_w:
      case Op::push_v: ++depth; break;
      case Op::add:
      case Op::sub:
      case Op::mul:
      case Op::divide:
      case Op::pow:
      case Op::fn_max: --depth; break;
      default: break;
    }
    peak = std::max(peak, depth);
  }
  if (peak >= 64) throw DomainError("expression too deeply nested: '" + text + "'");
  return e;
}

double Expr::eval(double t, const double* x, double w, double v) const {
  double stack[64];
  int top = -1;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::push_const: stack[++top] = in.value; break;
      case Op::push_t: stack[++top] = t; break;
      case Op::push_x: stack[++top] = x[in.arg]; break;
      case Op::push_w: stack[++top] = w; break;
      case Op::push_v: stack[++top] = v; break;
      case Op::add: --top; stack[top] += stack[top + 1]; break;
      case Op::sub: --top; stack[top] -= stack[top + 1]; break;
      case Op::mul: --top; stack[top] *= stack[top + 1]; break;
      case Op::divide: --top; stack[top] /= stack[top + 1]; break;
      case Op::pow: --top; stack[top] = std::pow(stack[top], stack[top + 1]); break;
      case Op::neg: stack[top] = -stack[top]; break;
      case Op::fn_exp: stack[top] = std::exp(stack[top]); break;
      case Op::fn_sin: stack[top] = std::sin(stack[top]); break;
      case Op::fn_cos: stack[top] = std::cos(stack[top]); break;
      case Op::fn_abs: stack[top] = std::abs(stack[top]); break;
      case Op::fn_sqrt: stack[top] = std::sqrt(stack[top]); break;
      case Op::fn_max: --top; stack[top] = std::max(stack[top], stack[top + 1]); break;
    }
  }
  return top >= 0 ? stack[top] : 0.0;
}

}  // namespace fbspde
