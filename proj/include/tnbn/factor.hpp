#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tnbn {

/// Dense table over the cross product of its scope's states. Entries are
/// row-major: the last scope variable varies fastest.
class Factor {
 public:
  Factor() : values_{1.0} {}
  Factor(std::vector<std::size_t> scope, std::vector<std::size_t> cards,
         std::vector<double> values);

  /// Constant factor with empty scope.
  static Factor scalar(double v);

  const std::vector<std::size_t>& scope() const { return scope_; }
  const std::vector<std::size_t>& cards() const { return cards_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  bool mentions(std::size_t var) const;

  /// Pointwise product; the result's scope is the sorted union of both scopes.
  Factor multiply(const Factor& other) const;

  /// Sums `var` out. No-op when `var` is not in scope.
  Factor sum_out(std::size_t var) const;

  /// Restricts `var` to `state` and drops it from the scope.
  Factor reduce(std::size_t var, std::size_t state) const;

  double sum() const;

 private:
  std::vector<std::size_t> scope_;
  std::vector<std::size_t> cards_;
  std::vector<double> values_;
};

/// Product of many factors, multiplied left to right.
Factor multiply_all(std::span<const Factor> factors);

}  // namespace tnbn
