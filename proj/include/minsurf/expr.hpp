#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "minsurf/series.hpp"

namespace minsurf {

enum class ExprKind {
  kConstant,
  kVariable,
  kNegate,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kIntPow,
  kExp,
  kSqrt,
};

/// Immutable expression tree over one complex variable z.  Nodes are shared;
/// copying an Expr is cheap.  The factory functions fold constants and apply
/// a few local identities (x*1 = x, x+0 = x, x^1 = x, ...), so parsing and
/// differentiation produce reasonably small trees.
class Expr {
 public:
  Expr() = default;

  static Expr constant(Complex c);
  static Expr variable();
  static Expr negate(Expr a);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr pow(Expr base, int exponent);
  static Expr exp(Expr a);
  static Expr sqrt(Expr a);

  bool valid() const { return node_ != nullptr; }
  ExprKind kind() const;
  Complex constant_value() const;  // kConstant only
  int exponent() const;            // kIntPow only
  const Expr& child(int i) const;  // 0 = left/only, 1 = right
  int arity() const;

  /// Structural equality of trees.
  bool same_tree(const Expr& other) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Parse the expression grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' signed-int)?
///   atom   := number | 'i' | 'z' | '(' expr ')'
///           | ('exp'|'sqrt') '(' expr ')' | '-' atom
/// Numbers are decimal literals, optionally suffixed with 'i'.
Expr parse_expr(std::string_view text);

/// Print so that parse_expr(to_string(e)) reproduces the tree.
std::string to_string(const Expr& e);

Expr differentiate(const Expr& e);

/// Pointwise evaluation.  Square roots take the anchored branch (non-negative
/// real part, positive imaginary part on the negative real axis).
Complex eval(const Expr& e, Complex z);

/// Laurent expansion about p with `order` stored coefficients requested.
/// Square-root arguments must not vanish at p; the branch is anchored at p.
LaurentSeries expand(const Expr& e, Complex p, int order);

/// Parse a complex constant such as "2", "0.5i", "1+2i", "-0.3+0.1i".
Complex parse_complex(std::string_view text);

}  // namespace minsurf
