#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "suds/error.hpp"
#include "suds/sample.hpp"

namespace suds {

struct LogisticConfig {
  double learning_rate = 0.1;
  int max_epochs = 500;
  double l2 = 1e-4;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
};

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// Binary logistic regression trained by full-batch gradient descent.
class LogisticModel {
 public:
  LogisticModel() = default;
  LogisticModel(Vector weights, double bias, LogisticConfig config = {})
      : weights_(std::move(weights)), bias_(bias), config_(config) {}

  const Vector& weights() const { return weights_; }
  double bias() const { return bias_; }
  const LogisticConfig& config() const { return config_; }
  std::size_t dim() const { return weights_.size(); }

  double decision(std::span<const double> x) const {
    detail::require_dim(weights_.size(), x.size(), "logistic_score");
    double z = bias_;
    for (std::size_t i = 0; i < x.size(); ++i) z += weights_[i] * x[i];
    return z;
  }

  // P(label = 1 | x).
  double score(std::span<const double> x) const { return sigmoid(decision(x)); }

  // Loss trace per accepted epoch, kept for diagnostics and tests.
  std::vector<double> loss_history;

 private:
  Vector weights_;
  double bias_ = 0.0;
  LogisticConfig config_;
};

namespace detail {

// log(1 + exp(z)) without overflow.
inline double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

inline double logistic_loss(std::span<const Vector> X, std::span<const int> y, const Vector& w,
                            double b, double l2) {
  double loss = 0.0;
  for (std::size_t n = 0; n < X.size(); ++n) {
    double z = b;
    for (std::size_t i = 0; i < w.size(); ++i) z += w[i] * X[n][i];
    loss += y[n] ? softplus(-z) : softplus(z);
  }
  loss /= static_cast<double>(X.size());
  double reg = 0.0;
  for (double v : w) reg += v * v;
  return loss + 0.5 * l2 * reg;
}

}  // namespace detail

// Gradient descent on mean log-loss + (l2/2)|w|^2, starting from zero. A step
// that would raise the loss is retried at half the rate, so the loss sequence
// never increases. Stops after max_epochs or once the loss change drops below
// the tolerance.
inline LogisticModel logistic_fit(std::span<const Vector> X, std::span<const int> y,
                                  const LogisticConfig& config = {}) {
  detail::require(X.size() == y.size(), "logistic_fit: |X| != |y|");
  detail::require(X.size() >= 2, "logistic_fit: need at least two samples");
  const std::size_t dim = X.front().size();
  bool seen0 = false, seen1 = false;
  for (std::size_t n = 0; n < X.size(); ++n) {
    detail::require_dim(dim, X[n].size(), "logistic_fit");
    detail::require(y[n] == 0 || y[n] == 1, "logistic_fit: labels must be 0 or 1");
    (y[n] ? seen1 : seen0) = true;
  }
  detail::require(seen0 && seen1, "logistic_fit: both classes must be present");

  Vector w(dim, 0.0);
  double b = 0.0;
  double step = config.learning_rate;
  const double inv_n = 1.0 / static_cast<double>(X.size());
  double loss = detail::logistic_loss(X, y, w, b, config.l2);

  std::vector<double> history{loss};
  Vector grad(dim);
  Vector trial(dim);

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t n = 0; n < X.size(); ++n) {
      double z = b;
      for (std::size_t i = 0; i < dim; ++i) z += w[i] * X[n][i];
      const double r = sigmoid(z) - static_cast<double>(y[n]);
      for (std::size_t i = 0; i < dim; ++i) grad[i] += r * X[n][i];
      grad_b += r;
    }
    for (std::size_t i = 0; i < dim; ++i) grad[i] = grad[i] * inv_n + config.l2 * w[i];
    grad_b *= inv_n;

    double next_loss = loss;
    double trial_b = b;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = w[i] - step * grad[i];
      trial_b = b - step * grad_b;
      next_loss = detail::logistic_loss(X, y, trial, trial_b, config.l2);
      if (next_loss <= loss) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    w.swap(trial);
    b = trial_b;
    const double change = loss - next_loss;
    loss = next_loss;
    history.push_back(loss);
    if (change < config.tolerance) break;
  }

  LogisticModel out(std::move(w), b, config);
  out.loss_history = std::move(history);
  return out;
}

}  // namespace suds
