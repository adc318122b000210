#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qprep/simulator.hpp"

namespace test_helpers {

/// Random pmf over 2^n outcomes, normalized in long double. A slice of the
/// entries is forced to exactly 0 so zero-mass branches stay covered.
inline std::vector<double> random_pmf(std::mt19937_64& rng, int n, double zero_fraction = 0.2) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> p(std::size_t{1} << n);
  for (double& v : p) v = unit(rng) < zero_fraction ? 0.0 : unit(rng);
  long double total = 0.0L;
  for (double v : p) total += v;
  if (total == 0.0L) {
    p[0] = 1.0;
    return p;
  }
  for (double& v : p) v = static_cast<double>(v / total);
  return p;
}

inline std::vector<double> random_angles(std::mt19937_64& rng, std::size_t count,
                                         double lo = 0.0, double hi = 1.5707963267948966) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(count);
  for (double& a : out) a = dist(rng);
  return out;
}

/// O(4^m) transform straight from the definition, as an independent check
/// of the butterfly: out[v] = 2^-m * sum_w (-1)^parity(v AND w) in[w].
inline std::vector<double> walsh_direct(const std::vector<double>& phi) {
  std::vector<double> alpha(phi.size(), 0.0);
  for (std::size_t v = 0; v < phi.size(); ++v) {
    for (std::size_t w = 0; w < phi.size(); ++w) {
      const int sign = std::popcount(v & w) % 2 == 0 ? 1 : -1;
      alpha[v] += sign * phi[w];
    }
    alpha[v] /= static_cast<double>(phi.size());
  }
  return alpha;
}

inline double max_amp_diff(const qprep::StateVector& a, const qprep::StateVector& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.amplitudes().size(); ++k)
    worst = std::max(worst, std::abs(a.amplitudes()[k] - b.amplitudes()[k]));
  return worst;
}

/// Triangular-density antiderivative written from the right-hand piece, to
/// cross-check the library's form.
inline double triangular_cdf_reference(double x) {
  return x <= 0.5 ? 2.0 * x * x : 1.0 - 2.0 * (1.0 - x) * (1.0 - x);
}

inline qprep::Matrix mat_mul(const qprep::Matrix& a, const qprep::Matrix& b) {
  const std::size_t dim = a.size();
  qprep::Matrix out(dim, std::vector<qprep::Complex>(dim, qprep::Complex{0.0, 0.0}));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k)
      for (std::size_t j = 0; j < dim; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

}  // namespace test_helpers
