#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mfrac/hurst_spec.hpp"

namespace mfrac {

namespace expr {

enum class NodeKind { number, variable, pi, negate, binary, call };

enum class BinaryOp { add, sub, mul, div, pow, less, less_equal, greater, greater_equal };

/// Immutable expression tree node.
struct Node {
  NodeKind kind = NodeKind::number;
  double number = 0.0;
  BinaryOp op = BinaryOp::add;
  std::string function;
  std::vector<std::shared_ptr<const Node>> children;
};

using NodePtr = std::shared_ptr<const Node>;

bool structurally_equal(const Node& a, const Node& b);

}  // namespace expr

/// A parsed Hurst-function expression in the variable `t`.
///
/// Grammar (lowest to highest precedence):
///   comparison  :  <  <=  >  >=      (left associative, yields 1 or 0)
///   additive    :  +  -
///   multiplicative : *  /
///   unary       :  -x
///   power       :  x ^ y             (right associative, binds tighter than unary -)
///   primary     :  number | t | pi | ( expr ) | f(args)
/// Functions: sin, cos, exp, abs (one argument), min, max (two),
/// ifelse(cond, a, b) (a when cond != 0, else b).
class HurstExpr {
 public:
  /// Throws ParseError (with byte offset) on syntax errors and unknown identifiers.
  static HurstExpr parse(std::string_view source);

  double evaluate(double t) const;

  /// Fully parenthesized canonical text; parses back to an identical tree.
  std::string format() const;

  const std::string& source() const noexcept { return source_; }
  const expr::Node& root() const noexcept { return *root_; }

  friend bool operator==(const HurstExpr& a, const HurstExpr& b) {
    return expr::structurally_equal(*a.root_, *b.root_);
  }

 private:
  HurstExpr(std::string source, expr::NodePtr root);

  std::string source_;
  expr::NodePtr root_;
};

inline HurstExpr parse_hurst_expr(std::string_view source) { return HurstExpr::parse(source); }

/// Level-independent HurstSpec evaluating the expression (clamped as usual).
HurstSpec to_hurst_spec(const HurstExpr& expr);

}  // namespace mfrac
