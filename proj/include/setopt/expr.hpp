#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "setopt/common.hpp"

namespace setopt {

/// Raised by Expression::parse; carries the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t offset, const std::string& what)
      : Error(code, what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

struct AffineForm {
  Vec row;
  double offset = 0.0;
};

struct ValueGradient {
  double value = 0.0;
  Vec gradient;
};

/// Immutable smooth scalar expression over x1..xn.
///
/// Admitted primitives: + - * /, integer powers, unary minus, sin, cos, exp.
/// Nonsmooth primitives (abs, min, max) are rejected at parse time.
class Expression {
 public:
  enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };

  struct Node {
    Op op = Op::Const;
    double value = 0.0;  // Const
    int index = 0;       // Var: zero-based variable; Pow: integer exponent
    std::shared_ptr<const Node> lhs, rhs;
  };

  // |denominator| (or |base| under a negative power) at or below this is a DomainError.
  static constexpr double kDomainGuard = 1e-12;

  static Expression parse(std::string_view text, int n_vars);
  static Expression constant(double c, int n_vars);
  static Expression variable(int index, int n_vars);

  int n_vars() const { return n_vars_; }
  const Node& root() const { return *root_; }

  /// Fully parenthesized text; reparses to a structurally identical tree.
  std::string print() const;
  bool structurally_equal(const Expression& other) const;

  /// Set when the expression is affine in x (constant Jacobian row).
  const std::optional<AffineForm>& affine() const { return affine_; }

  double evaluate(const Vec& x) const;
  ValueGradient eval_with_gradient(const Vec& x) const;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);

 private:
  Expression(std::shared_ptr<const Node> root, int n_vars);

  std::shared_ptr<const Node> root_;
  int n_vars_ = 0;
  std::optional<AffineForm> affine_;
};

inline ValueGradient eval_with_gradient(const Expression& expr, const Vec& x) {
  return expr.eval_with_gradient(x);
}

}  // namespace setopt
