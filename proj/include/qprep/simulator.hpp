#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "qprep/circuit.hpp"
#include "qprep/errors.hpp"
#include "qprep/words.hpp"

namespace qprep {

using Complex = std::complex<double>;
using Matrix = std::vector<std::vector<Complex>>;

/// Dense statevector over qubits 1..n; qubit t is bit t-1 of the basis
/// index, so basis state |b_n(k)> sits at amplitude k.
class StateVector {
 public:
  explicit StateVector(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1 || qubit_count > 30)
      throw std::invalid_argument("qubit count must be in [1, 30]");
    amps_.assign(std::size_t{1} << qubit_count, Complex{0.0, 0.0});
    amps_[0] = Complex{1.0, 0.0};
  }

  static StateVector from_amplitudes(int qubit_count, std::vector<Complex> amps) {
    StateVector sv(qubit_count);
    if (amps.size() != sv.amps_.size())
      throw std::invalid_argument("amplitude count must be 2^n");
    for (const Complex& a : amps)
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
        throw std::invalid_argument("amplitudes must be finite");
    sv.amps_ = std::move(amps);
    return sv;
  }

  int qubit_count() const { return qubit_count_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }

  double norm_squared() const {
    double total = 0.0;
    for (const Complex& a : amps_) total += std::norm(a);
    return total;
  }

  void apply(const Gate& gate) {
    std::visit([this](const auto& g) { apply_gate(g); }, gate);
  }

  void apply(const PatternX& gate) {
    const auto [mask, value] = control_mask(gate.controls, gate.target);
    for_each_pair(gate.target, mask, value,
                  [](Complex& a0, Complex& a1) { std::swap(a0, a1); });
  }

 private:
  // Packs pattern controls into (mask, value) over basis-index bits.
  std::pair<std::uint64_t, std::uint64_t> control_mask(const std::vector<PatternControl>& controls,
                                                       int target) const {
    std::uint64_t mask = 0, value = 0;
    for (const PatternControl& c : controls) {
      if (c.qubit < 1 || c.qubit > qubit_count_ || c.qubit == target)
        throw std::invalid_argument("bad control qubit");
      const std::uint64_t bit = std::uint64_t{1} << (c.qubit - 1);
      if (mask & bit) throw std::invalid_argument("duplicate control qubit");
      mask |= bit;
      if (c.bit) value |= bit;
    }
    return {mask, value};
  }

  /// Visits every amplitude pair (i, i | 2^(t-1)) whose index matches the
  /// control pattern.
  template <class F>
  void for_each_pair(int target, std::uint64_t mask, std::uint64_t value, F&& update) {
    if (target < 1 || target > qubit_count_) throw std::invalid_argument("bad target qubit");
    const std::uint64_t stride = std::uint64_t{1} << (target - 1);
    const std::uint64_t size = amps_.size();
    for (std::uint64_t block = 0; block < size; block += 2 * stride)
      for (std::uint64_t low = 0; low < stride; ++low) {
        const std::uint64_t i0 = block | low;
        if ((i0 & mask) != value) continue;
        update(amps_[i0], amps_[i0 | stride]);
      }
  }

  void rotate_pairs(int target, std::uint64_t mask, std::uint64_t value, double c, double s) {
    for_each_pair(target, mask, value, [c, s](Complex& a0, Complex& a1) {
      const Complex new0 = c * a0 - s * a1;
      const Complex new1 = s * a0 + c * a1;
      a0 = new0;
      a1 = new1;
    });
  }

  void apply_gate(const RotY& g) {
    rotate_pairs(g.target, 0, 0, std::cos(0.5 * g.angle), std::sin(0.5 * g.angle));
  }
  void apply_gate(const PauliX& g) {
    for_each_pair(g.target, 0, 0, [](Complex& a0, Complex& a1) { std::swap(a0, a1); });
  }
  void apply_gate(const CNot& g) {
    if (g.control < 1 || g.control > qubit_count_ || g.control == g.target)
      throw std::invalid_argument("bad control qubit");
    const std::uint64_t bit = std::uint64_t{1} << (g.control - 1);
    for_each_pair(g.target, bit, bit, [](Complex& a0, Complex& a1) { std::swap(a0, a1); });
  }
  void apply_gate(const PatternRot& g) {
    const auto [mask, value] = control_mask(g.controls, g.target);
    // PatternRot stores the half-angle form directly: cos(angle) on the diagonal.
    rotate_pairs(g.target, mask, value, std::cos(g.angle), std::sin(g.angle));
  }

  int qubit_count_ = 0;
  std::vector<Complex> amps_;
};

/// Runs a circuit from |0...0>. Registers beyond `qubit_cap` are rejected
/// rather than silently exhausting memory.
inline StateVector run(const Circuit& circuit, int qubit_cap = 24) {
  if (circuit.qubit_count() > qubit_cap)
    throw ResourceError("register too large to simulate densely");
  StateVector sv(circuit.qubit_count());
  for (const Gate& gate : circuit.gates()) sv.apply(gate);
  return sv;
}

inline std::vector<double> born_probabilities(const StateVector& sv) {
  std::vector<double> probs(sv.amplitudes().size());
  for (std::size_t k = 0; k < probs.size(); ++k) probs[k] = std::norm(sv.amplitudes()[k]);
  return probs;
}

inline constexpr const char* sample_generator_id() { return "mt19937_64"; }

struct Histogram {
  int qubit_count = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // only outcomes that occurred
};

/// Draws `shots` outcomes from the measurement law of `sv` by inverse-CDF
/// lookup. Uniform variates are built directly from the top 53 bits of
/// mt19937_64 output, so histograms are reproducible across platforms for
/// a fixed seed.
inline Histogram sample(const StateVector& sv, std::uint64_t shots, std::uint64_t seed) {
  const std::vector<double> probs = born_probabilities(sv);
  std::vector<double> cumulative(probs.size());
  long double acc = 0.0L;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += static_cast<long double>(probs[k]);
    cumulative[k] = static_cast<double>(acc);
  }
  cumulative.back() = 1.0;  // guard against rounding shortfall at the top

  Histogram hist;
  hist.qubit_count = sv.qubit_count();
  hist.shots = shots;
  hist.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::uint64_t k =
        std::min(static_cast<std::uint64_t>(it - cumulative.begin()),
                 static_cast<std::uint64_t>(cumulative.size() - 1));
    ++hist.counts[k];
  }
  return hist;
}

/// The block-diagonal operator that rotates qubit 1 by ry(phi[k]) on the
/// branch where qubits 2..m+1 spell the word b_m(k). `phi` uses the same
/// half-angle convention as RotY.
inline Matrix ucry_dense(const std::vector<double>& phi, int control_count) {
  if (control_count < 0 || control_count > 12)
    throw std::invalid_argument("control count must be in [0, 12]");
  if (phi.size() != (std::size_t{1} << control_count))
    throw std::invalid_argument("need one angle per control word");
  const std::size_t dim = std::size_t{2} << control_count;
  Matrix mat(dim, std::vector<Complex>(dim, Complex{0.0, 0.0}));
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const double c = std::cos(0.5 * phi[k]);
    const double s = std::sin(0.5 * phi[k]);
    mat[2 * k][2 * k] = c;
    mat[2 * k][2 * k + 1] = -s;
    mat[2 * k + 1][2 * k] = s;
    mat[2 * k + 1][2 * k + 1] = c;
  }
  return mat;
}

namespace detail {

template <class ApplyColumn>
Matrix dense_from_columns(int qubit_count, ApplyColumn&& apply_column) {
  if (qubit_count < 1 || qubit_count > 12)
    throw std::invalid_argument("dense operators are limited to 12 qubits");
  const std::size_t dim = std::size_t{1} << qubit_count;
  Matrix mat(dim, std::vector<Complex>(dim, Complex{0.0, 0.0}));
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<Complex> basis(dim, Complex{0.0, 0.0});
    basis[col] = Complex{1.0, 0.0};
    StateVector sv = StateVector::from_amplitudes(qubit_count, std::move(basis));
    apply_column(sv);
    for (std::size_t row = 0; row < dim; ++row) mat[row][col] = sv.amplitudes()[row];
  }
  return mat;
}

}  // namespace detail

/// The full operator of a circuit, column by column.
inline Matrix dense_unitary(const Circuit& circuit) {
  return detail::dense_from_columns(circuit.qubit_count(), [&](StateVector& sv) {
    for (const Gate& gate : circuit.gates()) sv.apply(gate);
  });
}

/// The full operator of a pattern-X product, column by column.
inline Matrix dense_unitary(int qubit_count, const std::vector<PatternX>& gates) {
  return detail::dense_from_columns(qubit_count, [&](StateVector& sv) {
    for (const PatternX& gate : gates) sv.apply(gate);
  });
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t j = 0; j < a[i].size(); ++j)
      worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
  }
  return worst;
}

}  // namespace qprep
