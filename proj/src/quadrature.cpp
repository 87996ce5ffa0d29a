#include "selfsim/quadrature.hpp"

#include <cmath>
#include <string>

namespace selfsim {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw DomainError("QuadratureSpec: abs_tol must be positive and finite");
  }
  if (max_panels < 2) {
    throw DomainError("QuadratureSpec: max_panels must be at least 2");
  }
  const double min_radius = 2.0 * std::sqrt(std::log(1.0 / std::min(abs_tol, 1.0)));
  if (!(tail_radius >= min_radius)) {
    throw DomainError("QuadratureSpec: tail_radius " + std::to_string(tail_radius) +
                      " below 2*sqrt(ln(1/abs_tol)) = " + std::to_string(min_radius));
  }
  for (double s : singularity_splits) {
    if (!std::isfinite(s)) {
      throw DomainError("QuadratureSpec: singularity split must be finite");
    }
  }
}

std::vector<double> panel_edges(double a, double b, std::span<const double> splits_a,
                                std::span<const double> splits_b) {
  std::vector<double> edges{a};
  for (auto splits : {splits_a, splits_b}) {
    for (double s : splits) {
      if (s > a && s < b) {
        edges.push_back(s);
      }
    }
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace selfsim
