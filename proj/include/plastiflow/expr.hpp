#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace plastiflow::expr {

struct Node;
// Immutable expression tree in the single variable t.
using Expr = std::shared_ptr<const Node>;

enum class Kind { Num, Pi, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Sin, Cos, Tan, Exp, Ln, Sqrt, Atan, Dn };

struct Node {
  Kind kind;
  double value = 0;  // Num
  Func func = Func::Sin;  // Call
  std::vector<Expr> args;  // operands (1 for Neg, 2 for binary, arity for Call)
};

Expr parse(const std::string& text);
double eval(const Expr& e, double t);
// Exact symbolic derivative; throws UnsupportedNode for dn.
Expr differentiate(const Expr& e);
// Canonical text with minimal parentheses; parse(to_string(e)) has the same tree.
std::string to_string(const Expr& e);

// Jacobi elliptic dn with modulus m (parameter m^2), arithmetic-geometric mean.
double jacobi_dn(double u, double m);

// A user-supplied function of one variable together with its derivatives.
// Falls back to finite differences when an expression has no symbolic derivative.
class FuncSlot {
 public:
  FuncSlot() = default;
  explicit FuncSlot(const std::string& text);
  explicit FuncSlot(Expr e);

  bool empty() const { return !expr_; }
  const std::string& text() const { return text_; }
  double operator()(double t) const { return eval(expr_, t); }
  double d1(double t) const;
  double d2(double t) const;
  bool symbolic_d1() const { return d1_ != nullptr; }

 private:
  std::string text_;
  Expr expr_, d1_, d2_;
};

}  // namespace plastiflow::expr
