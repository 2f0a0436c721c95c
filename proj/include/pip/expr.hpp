#pragma once

// A small arithmetic language for interpolation targets given on the command
// line.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := base ('^' factor)?             right associative
//   base   := number | 'pi' | var | fn '(' expr ')' | '(' expr ')' | '-' base
//   var    := x1 .. xm   (x, y, z also accepted when m <= 3)
//   fn     := sin | cos | exp | sqrt | abs
//
// Unary minus applies to a base, so -x^2 is (-x)^2. There is no implicit
// multiplication.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pip {

enum class UnaryOp { Neg, Sin, Cos, Exp, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Constant, Variable, Unary, Binary };

  Kind kind;
  double value = 0.0;       // Constant
  int variable = 0;         // Variable, zero-based
  UnaryOp unary = UnaryOp::Neg;
  BinaryOp binary = BinaryOp::Add;
  ExprPtr lhs;              // Unary operand or Binary left
  ExprPtr rhs;

  static ExprPtr constant(double v);
  static ExprPtr var(int index);
  static ExprPtr make_unary(UnaryOp op, ExprPtr operand);
  static ExprPtr make_binary(BinaryOp op, ExprPtr l, ExprPtr r);
};

/// Structural equality of two trees.
bool same_structure(const ExprNode& a, const ExprNode& b);

class Expression {
 public:
  Expression(ExprPtr root, int dim);

  int dim() const noexcept { return dim_; }
  const ExprNode& root() const noexcept { return *root_; }
  ExprPtr shared_root() const noexcept { return root_; }

  /// Throws NumericalError on division by zero, square roots of negative
  /// numbers or any non-finite result.
  double operator()(std::span<const double> x) const;

  /// Fully parenthesized text that parses back to the same tree.
  std::string to_string() const;

 private:
  ExprPtr root_;
  int dim_;
};

/// Throws ParseError (with a character offset) on malformed input.
Expression parse_expression(std::string_view text, int m);

double eval_expr(const Expression& e, std::span<const double> x);

/// Resolves a --fn argument: either an expression, or one of
/// builtin:runge (1/(1+25|x|^2)), builtin:coslak (prod cos x_i),
/// builtin:const(c).
Expression make_function(std::string_view text, int m);

}  // namespace pip
