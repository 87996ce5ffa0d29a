#include "selfsim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "selfsim/errors.hpp"

namespace selfsim {

GridFunction::GridFunction(double x_min, double x_max, std::vector<double> values)
    : x_min_(x_min), x_max_(x_max), values_(std::move(values)) {
  if (values_.size() < 2) {
    throw DomainError("GridFunction: need at least 2 nodes");
  }
  if (!(x_min_ < x_max_)) {
    throw DomainError("GridFunction: x_min must be below x_max");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("GridFunction: non-finite value at node " + std::to_string(i));
    }
  }
}

GridFunction GridFunction::sample(double x_min, double x_max, std::size_t n,
                                  const std::function<double(double)>& f) {
  const auto xs = uniform_nodes(x_min, x_max, n);
  std::vector<double> v(n);
  std::transform(xs.begin(), xs.end(), v.begin(), f);
  return GridFunction(x_min, x_max, std::move(v));
}

double GridFunction::node(std::size_t i) const {
  if (i + 1 == values_.size()) {
    return x_max_;
  }
  return x_min_ + spacing() * static_cast<double>(i);
}

double GridFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

double GridFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double GridFunction::interpolate_cubic(double x) const {
  if (!(x >= x_min_ && x <= x_max_)) {
    throw DomainError("GridFunction::interpolate_cubic: point outside grid");
  }
  const std::size_t n = values_.size();
  const double h = spacing();
  if (n < 4) {
    const auto i = std::min<std::size_t>(static_cast<std::size_t>((x - x_min_) / h), n - 2);
    const double s = (x - node(i)) / h;
    return (1.0 - s) * values_[i] + s * values_[i + 1];
  }
  // Stencil i0..i0+3 with x inside [i0+1, i0+2] where possible.
  const double pos = (x - x_min_) / h;
  auto cell = static_cast<std::ptrdiff_t>(std::floor(pos));
  auto i0 = std::clamp<std::ptrdiff_t>(cell - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
  const double s = pos - static_cast<double>(i0);  // local coordinate, nodes at 0,1,2,3
  const double* f = values_.data() + i0;
  const double l0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
  const double l1 = s * (s - 2.0) * (s - 3.0) / 2.0;
  const double l2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
  const double l3 = s * (s - 1.0) * (s - 2.0) / 6.0;
  return l0 * f[0] + l1 * f[1] + l2 * f[2] + l3 * f[3];
}

std::vector<double> uniform_nodes(double a, double b, std::size_t n) {
  if (n < 2) {
    throw DomainError("uniform_nodes: need at least 2 nodes");
  }
  std::vector<double> xs(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = a + h * static_cast<double>(i);
  }
  xs.back() = b;
  return xs;
}

}  // namespace selfsim
