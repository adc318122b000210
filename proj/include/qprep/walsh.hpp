#pragma once

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qprep {

namespace detail {

inline void walsh_butterfly(std::vector<double>& v) {
  if (v.empty() || !std::has_single_bit(v.size()))
    throw std::invalid_argument("length must be a power of two");
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument("values must be finite");
  for (std::size_t len = 1; len < v.size(); len <<= 1)
    for (std::size_t block = 0; block < v.size(); block += 2 * len)
      for (std::size_t j = block; j < block + len; ++j) {
        const double a = v[j];
        const double b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
}

}  // namespace detail

/// Forward transform: out[v] = 2^-m * sum_w (-1)^<v,w> in[w], where words
/// are addressed by index and <v,w> is the parity of the AND of the
/// indices. Computed by the in-place butterfly in m * 2^m steps.
inline std::vector<double> walsh_hadamard(std::vector<double> values) {
  detail::walsh_butterfly(values);
  const double scale = 1.0 / static_cast<double>(values.size());
  for (double& x : values) x *= scale;
  return values;
}

/// Inverse of walsh_hadamard: the same butterfly without the 2^-m factor.
inline std::vector<double> walsh_hadamard_inverse(std::vector<double> values) {
  detail::walsh_butterfly(values);
  return values;
}

}  // namespace qprep
