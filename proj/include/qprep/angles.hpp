#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qprep/distribution.hpp"
#include "qprep/words.hpp"

namespace qprep {

/// Conditional rotation angles theta_w for every word of length 0..n-1,
/// where theta_w = arccos sqrt(p_{0w} / p_w) and theta_w = 0 whenever
/// p_w = 0 (the branch carries no mass, so the angle is arbitrary; zero
/// keeps downstream circuits sparse and reproducible).
class AngleTree {
 public:
  explicit AngleTree(std::vector<std::vector<double>> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw std::invalid_argument("need at least the root angle");
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      if (levels_[l].size() != (std::size_t{1} << l))
        throw std::invalid_argument("level l must hold 2^l angles");
      for (double a : levels_[l])
        if (!std::isfinite(a)) throw std::invalid_argument("angles must be finite");
    }
  }

  /// Register size n; angles exist for word lengths 0..n-1.
  int qubit_count() const { return static_cast<int>(levels_.size()); }

  double theta(int level, std::uint64_t k) const { return levels_[level][k]; }
  double theta(const Word& w) const { return levels_[w.length()][w.index()]; }
  double root_theta() const { return levels_[0][0]; }
  const std::vector<double>& level(int l) const { return levels_[l]; }

 private:
  std::vector<std::vector<double>> levels_;
};

inline AngleTree compute_angles(const MassTree& tree) {
  const int n = tree.depth();
  std::vector<std::vector<double>> levels(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    levels[l].resize(std::size_t{1} << l);
    for (std::uint64_t k = 0; k < levels[l].size(); ++k) {
      const double p = tree.mass(l, k);
      if (p == 0.0) {
        levels[l][k] = 0.0;
        continue;
      }
      // Rounding can push the ratio a hair outside [0,1]; clamp before acos.
      const double ratio = std::min(1.0, std::max(0.0, tree.mass(l + 1, 2 * k) / p));
      levels[l][k] = std::acos(std::sqrt(ratio));
    }
  }
  return AngleTree(std::move(levels));
}

/// cos(x) for character 0, sin(x) for character 1: the amplitude factor a
/// single conditional rotation contributes to one branch.
inline double trig_factor(int z, double x) {
  if (z != 0 && z != 1) throw std::invalid_argument("character must be 0 or 1");
  return z == 0 ? std::cos(x) : std::sin(x);
}

/// Recovers the leaf mass p_k as the squared product of the trig factors
/// collected along the root-to-leaf path; inverse of compute_angles up to
/// rounding.
inline double reconstruct_leaf_mass(const AngleTree& angles, std::uint64_t k) {
  const int n = angles.qubit_count();
  if (k >= (std::uint64_t{1} << n)) throw std::out_of_range("leaf index out of range");
  double amplitude = 1.0;
  for (int s = 1; s <= n; ++s) {
    const int z = static_cast<int>((k >> (s - 1)) & 1u);
    amplitude *= trig_factor(z, angles.theta(n - s, k >> s));
  }
  return amplitude * amplitude;
}

}  // namespace qprep
