#pragma once

// Scalar coefficient expressions.
//
//   expr    := term  { ("+" | "-") term }
//   term    := unary { ("*" | "/") unary }
//   unary   := ("-" | "+") unary | power
//   power   := primary [ "^" unary ]          (right associative)
//   primary := number | variable | function "(" expr ")" | "(" expr ")"
//   function:= sin | cos | exp | log | sqrt | abs_smooth
//
// Integer-valued constant exponents are unrolled into products; any other
// exponent requires a positive base. abs_smooth(t) = sqrt(t^2 + delta^2),
// which is |t| for the default delta = 0.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "liftlab/hyper.hpp"
#include "liftlab/jet.hpp"

namespace liftlab {

struct ParseOptions {
  double abs_delta = 0.0;
};

enum class Func { Sin, Cos, Exp, Log, Sqrt, AbsSmooth };

class Expr {
 public:
  struct Node;

  const std::vector<std::string>& variables() const noexcept { return *vars_; }

  double eval(std::span<const double> point) const;
  Hyper eval(std::span<const Hyper> point) const;

  /// Value, gradient and Hessian with respect to the variables listed in
  /// `active` (indices into variables()). Derivatives are exact.
  Jet2 eval_jet(std::span<const double> point, std::span<const std::size_t> active) const;

  /// Fully parenthesized rendering that parses back to the same tree.
  std::string to_string() const;

  bool structurally_equal(const Expr& other) const;
  bool depends_on(std::size_t variable) const;

  friend Expr parse(std::string_view source, std::vector<std::string> variables,
                    ParseOptions options);

 private:
  Expr(std::shared_ptr<const Node> root, std::shared_ptr<const std::vector<std::string>> vars)
      : root_(std::move(root)), vars_(std::move(vars)) {}

  std::shared_ptr<const Node> root_;
  std::shared_ptr<const std::vector<std::string>> vars_;
};

Expr parse(std::string_view source, std::vector<std::string> variables, ParseOptions options = {});

inline Jet2 eval_jet(const Expr& e, std::span<const double> point,
                     std::span<const std::size_t> active) {
  return e.eval_jet(point, active);
}

/// Standard variable names x1..xn, y1..yn (level 1) followed by X1..Xn,
/// Y1..Yn (level 2).
std::vector<std::string> coordinate_names(int level, int n);

}  // namespace liftlab
