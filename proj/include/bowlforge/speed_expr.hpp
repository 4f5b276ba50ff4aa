#pragma once

#include <memory>
#include <span>
#include <string>

#include "bowlforge/speed.hpp"

namespace bowlforge {

namespace expr_detail {
struct Node;
}

/// A parsed speed expression over the symmetric atoms S1..Sn, H, K and n.
///
/// Grammar (whitespace-insensitive):
///
///     expr     := term (("+" | "-") term)*
///     term     := unary (("*" | "/") unary)*
///     unary    := "-" unary | power
///     power    := primary ("^" exponent)?
///     exponent := "-"? number | "(" expr ")"      (constant: literals and n)
///     primary  := number | atom | "(" expr ")"
///     atom     := "S" digit+ | "H" | "K" | "n"
///
/// Because only symmetric atoms exist, every expression is a symmetric
/// function of the curvatures by construction.
class SpeedExpr {
 public:
  SpeedExpr(std::shared_ptr<const expr_detail::Node> root, int dim, std::string source);

  int dim() const noexcept { return dim_; }
  const std::string& source() const noexcept { return source_; }

  /// Evaluates at a positive n-vector. Throws DomainError instead of
  /// returning NaN, infinity or a non-positive value.
  double evaluate(std::span<const double> z) const;

  /// Canonical fully-parenthesized rendering of the tree.
  std::string to_string() const;

 private:
  std::shared_ptr<const expr_detail::Node> root_;
  int dim_;
  int max_order_;  // highest Sk referenced
  std::string source_;
};

/// Throws ParseError (with byte offset) or DimensionError for Sk, k > dim.
SpeedExpr parse_speed(const std::string& source, int dim);

/// log_lambda(f(lambda z) / f(z)) averaged over 20 seeded random points.
/// Throws NotHomogeneous when the per-point estimates spread by more than 1e-8
/// and AdmissibilityError when a probe is not positive.
double measure_homogeneity(const SpeedExpr& expr, double lambda = 2.0);

/// Wraps an expression as a SpeedFunction with its measured degree.
SpeedFunction to_speed_function(const SpeedExpr& expr);

}  // namespace bowlforge
