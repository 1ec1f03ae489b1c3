#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "suds/error.hpp"
#include "suds/sample.hpp"

namespace suds {

/// Gaussian RBF kernel K(a, b) = exp(-gamma * |a - b|^2).
struct KernelSpec {
  double gamma = 1.0;

  double operator()(std::span<const double> a, std::span<const double> b) const {
    return std::exp(-gamma * squared_distance(a, b));
  }

  // 1 / (d * var), var pooled over every feature value of the fit set.
  static KernelSpec scale(std::span<const Vector> X) {
    detail::require(!X.empty(), "KernelSpec::scale: empty input");
    const std::size_t d = X.front().size();
    double mean = 0.0, m2 = 0.0;
    std::size_t count = 0;
    for (const auto& x : X) {
      for (double v : x) {
        ++count;
        const double delta = v - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (v - mean);
      }
    }
    const double var = count > 0 ? m2 / static_cast<double>(count) : 0.0;
    const double gamma = 1.0 / (static_cast<double>(std::max<std::size_t>(d, 1)) * std::max(var, 1e-6));
    return KernelSpec{std::max(gamma, 1e-6)};
  }
};

}  // namespace suds
