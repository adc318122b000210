#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qprep/angles.hpp"
#include "qprep/circuit.hpp"
#include "qprep/errors.hpp"
#include "qprep/gray.hpp"
#include "qprep/simulator.hpp"
#include "qprep/walsh.hpp"

namespace qprep {

/// Rotation data for one stage: phi[c] is the ry angle for control word
/// b_{j-1}(c) (twice the stored conditional angle), alpha is its
/// Walsh-Hadamard spectrum, which is what the ladder rotations use.
struct StageAngles {
  std::vector<double> phi;
  std::vector<double> alpha;
};

inline StageAngles stage_angles(int j, const AngleTree& angles) {
  if (j < 1 || j > angles.qubit_count()) throw std::invalid_argument("stage out of range");
  StageAngles out;
  out.phi.resize(std::size_t{1} << (j - 1));
  for (std::uint64_t c = 0; c < out.phi.size(); ++c) out.phi[c] = 2.0 * angles.theta(j - 1, c);
  out.alpha = walsh_hadamard(out.phi);
  return out;
}

/// The ancilla-free {ry, cx} ladder on a local register (target qubit 1,
/// controls 2..m+1) equivalent to rotating the target by ry(phi[c]) on the
/// branch where the controls spell b_m(c). Rotations visit the
/// Walsh-Hadamard spectrum in reflected-binary word order; each CX control
/// sits on the qubit of the word character that changes at that step. The
/// final CX returns every control's flip parity to even; without it
/// (`closing = false`) branches whose last character is 1 keep a stray X.
inline Circuit build_ladder(int control_count, const std::vector<double>& alpha,
                            bool closing = true) {
  if (control_count < 0 || control_count > 24)
    throw std::invalid_argument("control count must be in [0, 24]");
  if (alpha.size() != (std::size_t{1} << control_count))
    throw std::invalid_argument("need one spectrum entry per control word");
  Circuit circuit(control_count + 1);
  if (control_count == 0) {
    circuit.append(RotY{1, alpha[0]});
    return circuit;
  }
  const GrayPlan plan = gray_plan(control_count);
  circuit.append(RotY{1, alpha[plan.gamma[0]]});
  for (std::size_t k = 1; k < plan.gamma.size(); ++k) {
    circuit.append(CNot{1 + plan.flip_positions[k - 1], 1});
    circuit.append(RotY{1, alpha[plan.gamma[k]]});
  }
  if (closing) circuit.append(CNot{1 + plan.closing_flip_position, 1});
  return circuit;
}

struct StageVerification {
  double max_deviation = 0.0;   // worst entry/amplitude mismatch found
  double max_residual_x = 0.0;  // dense check only: worst X contamination of a branch block
  bool dense_checked = false;
};

namespace detail {

// Applies ry(phi[c]) to the (2c, 2c+1) amplitude pair of a local-register
// state, i.e. the target operator of a stage, without forming a matrix.
inline void apply_ucry(std::vector<Complex>& amps, const std::vector<double>& phi) {
  for (std::size_t c = 0; c < phi.size(); ++c) {
    const double co = std::cos(0.5 * phi[c]);
    const double si = std::sin(0.5 * phi[c]);
    Complex& a0 = amps[2 * c];
    Complex& a1 = amps[2 * c + 1];
    const Complex new0 = co * a0 - si * a1;
    const Complex new1 = si * a0 + co * a1;
    a0 = new0;
    a1 = new1;
  }
}

inline std::vector<Complex> random_state(int qubit_count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Complex> amps(std::size_t{1} << qubit_count);
  double norm2 = 0.0;
  for (Complex& a : amps) {
    a = Complex{u() - 0.5, u() - 0.5};
    norm2 += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& a : amps) a *= scale;
  return amps;
}

}  // namespace detail

/// Checks a ladder against the stage operator it should implement. Up to
/// `max_dense_controls` controls the two operators are compared entry by
/// entry; beyond that, on seeded random statevectors. The dense path also
/// reports how far branch blocks are from pure y-rotations (nonzero means
/// stray X factors, as with an unclosed ladder).
inline StageVerification verify_stage(const Circuit& ladder, const std::vector<double>& phi,
                                      int control_count, int max_dense_controls = 6) {
  if (ladder.qubit_count() != control_count + 1)
    throw std::invalid_argument("ladder register must hold control_count + 1 qubits");
  if (phi.size() != (std::size_t{1} << control_count))
    throw std::invalid_argument("need one angle per control word");

  StageVerification result;
  if (control_count <= max_dense_controls) {
    result.dense_checked = true;
    const Matrix got = dense_unitary(ladder);
    const Matrix want = ucry_dense(phi, control_count);
    result.max_deviation = max_abs_diff(got, want);
    for (std::size_t c = 0; c < phi.size(); ++c) {
      const Complex b00 = got[2 * c][2 * c], b01 = got[2 * c][2 * c + 1];
      const Complex b10 = got[2 * c + 1][2 * c], b11 = got[2 * c + 1][2 * c + 1];
      result.max_residual_x =
          std::max(result.max_residual_x, std::abs(b00 - b11) + std::abs(b01 + b10));
    }
    return result;
  }

  for (std::uint64_t trial = 0; trial < 3; ++trial) {
    std::vector<Complex> amps =
        detail::random_state(control_count + 1, 0x5eedu + 1000 * trial + control_count);
    std::vector<Complex> expected = amps;
    detail::apply_ucry(expected, phi);
    StateVector sv = StateVector::from_amplitudes(control_count + 1, std::move(amps));
    for (const Gate& gate : ladder.gates()) sv.apply(gate);
    for (std::size_t i = 0; i < expected.size(); ++i)
      result.max_deviation =
          std::max(result.max_deviation, std::abs(sv.amplitudes()[i] - expected[i]));
  }
  return result;
}

/// Transpiles one stage to {ry, x, cx} and proves the rewrite before
/// returning it: the stage ladder is built on a local register, verified
/// against the stage operator, then shifted into place. A verification
/// failure raises CompilationError rather than returning a bad circuit.
inline Circuit transpile_stage(int j, const AngleTree& angles, double tol = 1e-10) {
  const int n = angles.qubit_count();
  if (j < 1 || j > n) throw std::invalid_argument("stage must be in [1, n]");
  if (j == 1) {
    Circuit circuit(n);
    circuit.append(RotY{n, 2.0 * angles.root_theta()});
    return circuit;
  }
  const int m = j - 1;
  const StageAngles sa = stage_angles(j, angles);
  Circuit ladder = build_ladder(m, sa.alpha, true);
  const StageVerification check = verify_stage(ladder, sa.phi, m);
  if (!(check.max_deviation <= tol))
    throw CompilationError("transpiled stage deviates from its target operator",
                           check.max_deviation);
  return embed(ladder, n, n - j);
}

inline Circuit transpile_full(const AngleTree& angles, double tol = 1e-10) {
  const int n = angles.qubit_count();
  Circuit circuit(n);
  for (int j = 1; j <= n; ++j) circuit.extend(transpile_stage(j, angles, tol));
  return circuit;
}

/// Per-stage cost and accuracy summary of the closed ladder against the
/// variant that drops the final CX.
struct StageReport {
  int stage = 0;
  int control_count = 0;
  std::size_t ry_count = 0;
  std::size_t cx_count_closed = 0;
  std::size_t cx_count_open = 0;
  bool dense_checked = false;
  double deviation_closed = 0.0;
  double deviation_open = 0.0;
  double residual_x_open = 0.0;
};

inline std::vector<StageReport> compare_ladder_variants(const AngleTree& angles,
                                                        int max_dense_controls = 6) {
  std::vector<StageReport> reports;
  for (int j = 1; j <= angles.qubit_count(); ++j) {
    StageReport report;
    report.stage = j;
    report.control_count = j - 1;
    if (j == 1) {
      report.ry_count = 1;
      report.dense_checked = true;
      reports.push_back(report);
      continue;
    }
    const int m = j - 1;
    const StageAngles sa = stage_angles(j, angles);
    const Circuit closed = build_ladder(m, sa.alpha, true);
    const Circuit open = build_ladder(m, sa.alpha, false);
    const GateCounts closed_counts = gate_counts(closed);
    report.ry_count = closed_counts.rot_y;
    report.cx_count_closed = closed_counts.cnot;
    report.cx_count_open = gate_counts(open).cnot;
    const StageVerification vc = verify_stage(closed, sa.phi, m, max_dense_controls);
    const StageVerification vo = verify_stage(open, sa.phi, m, max_dense_controls);
    report.dense_checked = vc.dense_checked;
    report.deviation_closed = vc.max_deviation;
    report.deviation_open = vo.max_deviation;
    report.residual_x_open = vo.max_residual_x;
    reports.push_back(report);
  }
  return reports;
}

}  // namespace qprep
