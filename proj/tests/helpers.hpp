#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "suds/sample.hpp"

namespace suds::testing {

// n points from an isotropic Gaussian around `center`.
inline std::vector<Vector> gaussian_cloud(const Vector& center, double sigma, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sigma);
  std::vector<Vector> out(n, center);
  for (auto& x : out) {
    for (auto& v : x) v += g(rng);
  }
  return out;
}

inline std::vector<Sample> as_samples(const std::vector<Vector>& X, std::size_t first_index = 0,
                                      std::optional<ClassId> label = std::nullopt) {
  std::vector<Sample> out;
  for (std::size_t i = 0; i < X.size(); ++i) out.emplace_back(X[i], first_index + i, label);
  return out;
}

inline std::vector<Sample> concat(std::vector<Sample> a, const std::vector<Sample>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Brute-force pair counting; ties count one half.
inline double brute_auc(const std::vector<double>& s, const std::vector<int>& y) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] != 1) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j] != 0) continue;
      pairs += 1.0;
      if (s[i] > s[j]) wins += 1.0;
      else if (s[i] == s[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

}  // namespace suds::testing
