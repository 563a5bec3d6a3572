#ifndef STEPWAVE_EXPR_HPP
#define STEPWAVE_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>

namespace stepwave {

/// Immutable parsed expression in the single variable x.
///
/// Grammar (lowest to highest precedence):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?          (right-associative)
///     primary := number | 'x' | 'pi' | 'e2' | func '(' expr ')' | '(' expr ')'
///     func    := 'exp' | 'abs' | 'sqrt'
///
/// so -x^2 is -(x^2) and 2^3^2 is 2^(3^2). e2 is the Coulomb constant
/// 1.44 eV nm.
class Expr {
public:
  struct Node;

  Expr();  ///< the constant 0

  double operator()(double x) const;

  /// Fully parenthesized text that parses back to an equivalent tree.
  std::string to_string() const;

private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  friend Expr parse_expr(std::string_view text);

  std::shared_ptr<const Node> root_;
};

/// Throws ParseError with the character offset of the first problem.
Expr parse_expr(std::string_view text);
inline Expr parse_potential_expr(std::string_view text) { return parse_expr(text); }

} // namespace stepwave

#endif
