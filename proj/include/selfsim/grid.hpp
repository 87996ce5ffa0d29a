#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace selfsim {

/// Samples of a function on n uniform nodes spanning [x_min, x_max].
class GridFunction {
 public:
  GridFunction(double x_min, double x_max, std::vector<double> values);

  /// Samples `f` at n uniform nodes.
  static GridFunction sample(double x_min, double x_max, std::size_t n,
                             const std::function<double(double)>& f);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t size() const { return values_.size(); }
  double spacing() const { return (x_max_ - x_min_) / static_cast<double>(values_.size() - 1); }
  double node(std::size_t i) const;

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double min_value() const;
  double max_value() const;

  /// Four-point Lagrange interpolation (one-sided stencils at the ends).
  /// Throws DomainError outside [x_min, x_max].
  double interpolate_cubic(double x) const;

 private:
  double x_min_;
  double x_max_;
  std::vector<double> values_;
};

/// n uniform nodes on [a, b], endpoints included.
std::vector<double> uniform_nodes(double a, double b, std::size_t n);

}  // namespace selfsim
