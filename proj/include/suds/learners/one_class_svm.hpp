#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "suds/error.hpp"
#include "suds/learners/kernel.hpp"
#include "suds/sample.hpp"

namespace suds {

struct OneClassSolverConfig {
  double kkt_tolerance = 1e-3;
  // Iteration cap is max_passes * n * n working-set updates.
  std::size_t max_passes = 10;
};

/// nu one-class SVM: decision(x) = sum_i alpha_i K(sv_i, x) - rho.
class OneClassSvmModel {
 public:
  OneClassSvmModel() = default;
  OneClassSvmModel(std::vector<Vector> support_vectors, Vector alphas, double rho, KernelSpec kernel,
                   double nu)
      : support_vectors_(std::move(support_vectors)),
        alphas_(std::move(alphas)),
        rho_(rho),
        kernel_(kernel),
        nu_(nu) {}

  double decision(std::span<const double> x) const {
    return kernel_sum(x) - rho_;
  }
  // +1 in-distribution, -1 outlier.
  int predict(std::span<const double> x) const { return decision(x) >= 0.0 ? 1 : -1; }
  bool is_outlier(std::span<const double> x) const { return predict(x) < 0; }

  double kernel_sum(std::span<const double> x) const {
    detail::require(!support_vectors_.empty(), "one-class SVM: model is not fitted");
    detail::require_dim(support_vectors_.front().size(), x.size(), "ocsvm_decision");
    double s = 0.0;
    for (std::size_t i = 0; i < support_vectors_.size(); ++i) s += alphas_[i] * kernel_(support_vectors_[i], x);
    return s;
  }

  const std::vector<Vector>& support_vectors() const { return support_vectors_; }
  const Vector& alphas() const { return alphas_; }
  double rho() const { return rho_; }
  double gamma() const { return kernel_.gamma; }
  const KernelSpec& kernel() const { return kernel_; }
  double nu() const { return nu_; }
  bool fitted() const { return !support_vectors_.empty(); }
  std::size_t dim() const { return fitted() ? support_vectors_.front().size() : 0; }

  // Solver diagnostics.
  std::size_t n_train = 0;
  std::size_t iterations = 0;
  bool converged = false;

 private:
  std::vector<Vector> support_vectors_;
  Vector alphas_;
  double rho_ = 0.0;
  KernelSpec kernel_;
  double nu_ = 0.5;
};

namespace detail {

enum class BoundState : unsigned char { lower, free, upper };

}  // namespace detail

// Solves min 1/2 a'Qa s.t. 0 <= a_i <= 1, sum a = nu*n with SMO and
// second-order working-set selection, then rescales so the alphas sum to 1
// (bounds become 1/(nu*n)).
inline OneClassSvmModel ocsvm_fit(std::span<const Vector> X, double nu,
                                  std::optional<KernelSpec> kernel_opt = std::nullopt,
                                  const OneClassSolverConfig& config = {}) {
  detail::require(!X.empty(), "ocsvm_fit: empty input");
  detail::require(X.size() >= 2, "ocsvm_fit: need at least two samples");
  detail::require(nu > 0.0 && nu <= 1.0, "ocsvm_fit: nu must lie in (0, 1]");
  const std::size_t n = X.size();
  const std::size_t d = X.front().size();
  for (const auto& x : X) detail::require_dim(d, x.size(), "ocsvm_fit");
  const KernelSpec kernel = kernel_opt ? *kernel_opt : KernelSpec::scale(X);
  detail::require(kernel.gamma > 0.0, "ocsvm_fit: gamma must be positive");

  std::vector<double> Q(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    Q[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = kernel(X[i], X[j]);
      Q[i * n + j] = k;
      Q[j * n + i] = k;
    }
  }

  constexpr double C = 1.0;
  constexpr double tau = 1e-12;
  const double total = nu * static_cast<double>(n);
  Vector alpha(n, 0.0);
  const auto whole = static_cast<std::size_t>(std::floor(total));
  for (std::size_t i = 0; i < std::min(whole, n); ++i) alpha[i] = C;
  if (whole < n) alpha[whole] = total - static_cast<double>(whole);

  Vector G(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] == 0.0) continue;
    for (std::size_t k = 0; k < n; ++k) G[k] += alpha[i] * Q[k * n + i];
  }

  const std::size_t max_iter = std::max<std::size_t>(config.max_passes * n * n, 1000);
  std::size_t iter = 0;
  bool converged = false;
  for (; iter < max_iter; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i_sel = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] < C && -G[t] >= gmax) {
        gmax = -G[t];
        i_sel = t;
      }
    }
    double gmax2 = -std::numeric_limits<double>::infinity();
    double obj_min = std::numeric_limits<double>::infinity();
    std::size_t j_sel = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] <= 0.0) continue;
      gmax2 = std::max(gmax2, G[t]);
      if (i_sel == n) continue;
      const double grad_diff = gmax + G[t];
      if (grad_diff > 0.0) {
        double quad = Q[i_sel * n + i_sel] + Q[t * n + t] - 2.0 * Q[i_sel * n + t];
        if (quad <= 0.0) quad = tau;
        const double obj = -(grad_diff * grad_diff) / quad;
        if (obj <= obj_min) {
          obj_min = obj;
          j_sel = t;
        }
      }
    }
    if (gmax + gmax2 < config.kkt_tolerance || i_sel == n || j_sel == n) {
      converged = true;
      break;
    }

    const std::size_t i = i_sel, j = j_sel;
    const double old_i = alpha[i], old_j = alpha[j];
    double quad = Q[i * n + i] + Q[j * n + j] - 2.0 * Q[i * n + j];
    if (quad <= 0.0) quad = tau;
    const double delta = (G[i] - G[j]) / quad;
    const double sum = old_i + old_j;
    alpha[i] -= delta;
    alpha[j] += delta;
    if (sum > C) {
      if (alpha[i] > C) {
        alpha[i] = C;
        alpha[j] = sum - C;
      }
    } else if (alpha[j] < 0.0) {
      alpha[j] = 0.0;
      alpha[i] = sum;
    }
    if (sum > C) {
      if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = sum - C;
      }
    } else if (alpha[i] < 0.0) {
      alpha[i] = 0.0;
      alpha[j] = sum;
    }
    const double di = alpha[i] - old_i, dj = alpha[j] - old_j;
    for (std::size_t k = 0; k < n; ++k) G[k] += Q[k * n + i] * di + Q[k * n + j] * dj;
  }

  std::vector<detail::BoundState> state(n);
  std::vector<Vector> svs;
  Vector sv_alpha;
  for (std::size_t i = 0; i < n; ++i) {
    state[i] = alpha[i] >= C ? detail::BoundState::upper
               : alpha[i] <= 0.0 ? detail::BoundState::lower
                                 : detail::BoundState::free;
    if (alpha[i] > 0.0) {
      svs.push_back(X[i]);
      sv_alpha.push_back(alpha[i] / total);
    }
  }

  // rho from the rescaled duals, evaluated the same way decision() will.
  OneClassSvmModel probe(svs, sv_alpha, 0.0, kernel, nu);
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  std::vector<double> free_sums;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = probe.kernel_sum(X[i]);
    switch (state[i]) {
      case detail::BoundState::upper: lb = std::max(lb, g); break;
      case detail::BoundState::lower: ub = std::min(ub, g); break;
      case detail::BoundState::free: free_sums.push_back(g); break;
    }
  }
  double rho;
  if (!free_sums.empty()) {
    // Offset from the minimum so identical free values average to themselves.
    const double base = *std::min_element(free_sums.begin(), free_sums.end());
    double spread = 0.0;
    for (double g : free_sums) spread += g - base;
    rho = base + spread / static_cast<double>(free_sums.size());
  } else if (std::isfinite(ub) && std::isfinite(lb)) {
    rho = 0.5 * (ub + lb);
  } else {
    rho = std::isfinite(lb) ? lb : ub;
  }

  OneClassSvmModel model(std::move(svs), std::move(sv_alpha), rho, kernel, nu);
  model.n_train = n;
  model.iterations = iter;
  model.converged = converged;
  return model;
}

}  // namespace suds
