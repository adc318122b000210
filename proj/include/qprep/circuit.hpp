#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qprep/angles.hpp"
#include "qprep/words.hpp"

namespace qprep {

/// Qubits are numbered 1..n throughout. Qubit t holds word character z_t,
/// so basis index k has bit t-1 equal to the value of qubit t.

/// Standard y-rotation ry(angle): cos(angle/2) on the diagonal.
struct RotY {
  int target;
  double angle;
  friend bool operator==(const RotY&, const RotY&) = default;
};

struct PauliX {
  int target;
  friend bool operator==(const PauliX&, const PauliX&) = default;
};

struct CNot {
  int control;
  int target;
  friend bool operator==(const CNot&, const CNot&) = default;
};

/// One control of a pattern gate: fires when `qubit` holds `bit` (0 or 1).
struct PatternControl {
  int qubit;
  int bit;
  friend bool operator==(const PatternControl&, const PatternControl&) = default;
};

/// Rotation by twice the stored angle (cos(angle) on the diagonal), applied
/// only on branches where every control matches. Controls are kept sorted
/// by qubit.
struct PatternRot {
  int target;
  double angle;
  std::vector<PatternControl> controls;
  friend bool operator==(const PatternRot&, const PatternRot&) = default;
};

using Gate = std::variant<RotY, PauliX, CNot, PatternRot>;

/// X on the target, applied only on branches where every control matches.
/// Not a circuit gate: it appears as an intermediate when a CNOT is
/// rewritten over a pattern basis, and in dense-operator checks.
struct PatternX {
  int target;
  std::vector<PatternControl> controls;
  friend bool operator==(const PatternX&, const PatternX&) = default;
};

class Circuit {
 public:
  explicit Circuit(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1 || qubit_count > 63)
      throw std::invalid_argument("qubit count must be in [1, 63]");
  }

  int qubit_count() const { return qubit_count_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  void append(Gate gate) {
    std::visit([this](auto& g) { validate(g); }, gate);
    if (auto* pr = std::get_if<PatternRot>(&gate))
      std::sort(pr->controls.begin(), pr->controls.end(),
                [](const PatternControl& a, const PatternControl& b) { return a.qubit < b.qubit; });
    gates_.push_back(std::move(gate));
  }

  void extend(const Circuit& other) {
    if (other.qubit_count_ != qubit_count_)
      throw std::invalid_argument("cannot extend across register sizes");
    for (const Gate& g : other.gates_) append(g);
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check_qubit(int q) const {
    if (q < 1 || q > qubit_count_) throw std::invalid_argument("qubit index out of range");
  }
  void validate(const RotY& g) const { check_qubit(g.target); }
  void validate(const PauliX& g) const { check_qubit(g.target); }
  void validate(const CNot& g) const {
    check_qubit(g.control);
    check_qubit(g.target);
    if (g.control == g.target) throw std::invalid_argument("control must differ from target");
  }
  void validate(const PatternRot& g) const {
    check_qubit(g.target);
    for (const PatternControl& c : g.controls) {
      check_qubit(c.qubit);
      if (c.qubit == g.target) throw std::invalid_argument("control must differ from target");
      if (c.bit != 0 && c.bit != 1) throw std::invalid_argument("control bit must be 0 or 1");
      for (const PatternControl& d : g.controls)
        if (&c != &d && c.qubit == d.qubit)
          throw std::invalid_argument("duplicate control qubit");
    }
  }

  int qubit_count_ = 0;
  std::vector<Gate> gates_;
};

struct GateCounts {
  std::size_t rot_y = 0;
  std::size_t pauli_x = 0;
  std::size_t cnot = 0;
  std::size_t pattern_rot = 0;
  std::size_t total() const { return rot_y + pauli_x + cnot + pattern_rot; }
};

inline GateCounts gate_counts(const Circuit& circuit) {
  GateCounts counts;
  for (const Gate& gate : circuit.gates()) {
    if (std::holds_alternative<RotY>(gate)) ++counts.rot_y;
    if (std::holds_alternative<PauliX>(gate)) ++counts.pauli_x;
    if (std::holds_alternative<CNot>(gate)) ++counts.cnot;
    if (std::holds_alternative<PatternRot>(gate)) ++counts.pattern_rot;
  }
  return counts;
}

/// Stage j of the preparation circuit on n qubits. Stage 1 is the lone
/// unconditioned rotation on qubit n; stage j >= 2 holds one rotation per
/// word w of length j-1, targeting qubit n-j+1 with character w_r matched
/// on qubit n-j+1+r, in increasing word-index order.
inline Circuit build_stage(int j, const AngleTree& angles) {
  const int n = angles.qubit_count();
  if (j < 1 || j > n) throw std::invalid_argument("stage must be in [1, n]");
  Circuit circuit(n);
  if (j == 1) {
    circuit.append(RotY{n, 2.0 * angles.root_theta()});
    return circuit;
  }
  const int target = n - j + 1;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << (j - 1)); ++k) {
    const Word w(j - 1, k);
    std::vector<PatternControl> controls;
    controls.reserve(static_cast<std::size_t>(j) - 1);
    for (int r = 1; r <= j - 1; ++r) controls.push_back({target + r, w.bit(r)});
    circuit.append(PatternRot{target, angles.theta(w), std::move(controls)});
  }
  return circuit;
}

/// The full preparation circuit: stages 1..n in application order,
/// 2^n - 1 rotations in total.
inline Circuit build_full(const AngleTree& angles) {
  const int n = angles.qubit_count();
  Circuit circuit(n);
  for (int j = 1; j <= n; ++j) circuit.extend(build_stage(j, angles));
  return circuit;
}

/// Rewrites CNOT(control -> qubit 1) on a register of `register_size`
/// qubits as the product of the 2^(register_size-2) pattern-controlled X
/// gates whose patterns fix character control-1 to 1, in increasing
/// word-index order. The factors commute, so this order is a convention,
/// not a constraint.
inline std::vector<PatternX> expand_cnot_to_patterns(const CNot& gate, int register_size) {
  if (register_size < 2) throw std::invalid_argument("register must hold at least 2 qubits");
  if (gate.target != 1) throw std::invalid_argument("expansion expects target qubit 1");
  if (gate.control < 2 || gate.control > register_size)
    throw std::invalid_argument("control out of range");
  const int m = register_size - 1;  // pattern word length
  const int r = gate.control - 1;   // pattern character fixed to 1
  std::vector<PatternX> factors;
  factors.reserve(std::size_t{1} << (m - 1));
  for (std::uint64_t e = 0; e < (std::uint64_t{1} << (m - 1)); ++e) {
    const std::uint64_t low = e & ((std::uint64_t{1} << (r - 1)) - 1);
    const std::uint64_t high = e >> (r - 1);
    const std::uint64_t bits = low | (std::uint64_t{1} << (r - 1)) | (high << r);
    std::vector<PatternControl> controls;
    controls.reserve(static_cast<std::size_t>(m));
    for (int s = 1; s <= m; ++s)
      controls.push_back({1 + s, static_cast<int>((bits >> (s - 1)) & 1u)});
    factors.push_back(PatternX{1, std::move(controls)});
  }
  return factors;
}

/// Copies a circuit into a larger register, shifting every qubit up by
/// `offset`.
inline Circuit embed(const Circuit& local, int qubit_count, int offset) {
  if (offset < 0 || local.qubit_count() + offset > qubit_count)
    throw std::invalid_argument("embedded circuit does not fit the register");
  Circuit out(qubit_count);
  for (Gate gate : local.gates()) {
    std::visit(
        [&](auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RotY> || std::is_same_v<T, PauliX>) {
            g.target += offset;
          } else if constexpr (std::is_same_v<T, CNot>) {
            g.control += offset;
            g.target += offset;
          } else {
            g.target += offset;
            for (PatternControl& c : g.controls) c.qubit += offset;
          }
        },
        gate);
    out.append(std::move(gate));
  }
  return out;
}

namespace detail {

inline std::string format_angle(double angle) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", angle);
  return buf;
}

}  // namespace detail

/// Plain-text circuit form: optional '#' comment lines, a `qubits n`
/// header, then one gate per line. Angles are printed with 17 significant
/// digits so parsing the text reproduces the gates bit for bit.
inline std::string to_text(const Circuit& circuit, const std::vector<std::string>& comments = {}) {
  std::string out;
  for (const std::string& c : comments) out += "# " + c + "\n";
  out += "qubits " + std::to_string(circuit.qubit_count()) + "\n";
  for (const Gate& gate : circuit.gates()) {
    std::visit(
        [&](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RotY>) {
            out += "RY " + std::to_string(g.target) + " " + detail::format_angle(g.angle);
          } else if constexpr (std::is_same_v<T, PauliX>) {
            out += "X " + std::to_string(g.target);
          } else if constexpr (std::is_same_v<T, CNot>) {
            out += "CX " + std::to_string(g.control) + " " + std::to_string(g.target);
          } else {
            out += "PRY " + std::to_string(g.target) + " " + detail::format_angle(g.angle);
            for (const PatternControl& c : g.controls)
              out += " " + std::to_string(c.qubit) + ":" + std::to_string(c.bit);
          }
        },
        gate);
    out += "\n";
  }
  return out;
}

inline Circuit circuit_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("circuit text line " + std::to_string(line_no) + ": " + why);
  };

  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    rows.push_back(std::move(tokens));
    if (rows.size() == 1 && (rows[0].size() != 2 || rows[0][0] != "qubits"))
      fail("expected `qubits n` header");
  }
  if (rows.empty()) throw std::invalid_argument("circuit text has no `qubits n` header");

  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      fail("expected an integer, got `" + s + "`");
    }
    if (used != s.size()) fail("expected an integer, got `" + s + "`");
    return v;
  };
  auto to_angle = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      fail("expected an angle, got `" + s + "`");
    }
    if (used != s.size()) fail("expected an angle, got `" + s + "`");
    return v;
  };

  Circuit circuit(to_int(rows[0][1]));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& t = rows[i];
    const std::string& op = t[0];
    try {
      if (op == "RY" && t.size() == 3) {
        circuit.append(RotY{to_int(t[1]), to_angle(t[2])});
      } else if (op == "X" && t.size() == 2) {
        circuit.append(PauliX{to_int(t[1])});
      } else if (op == "CX" && t.size() == 3) {
        circuit.append(CNot{to_int(t[1]), to_int(t[2])});
      } else if (op == "PRY" && t.size() >= 3) {
        PatternRot g{to_int(t[1]), to_angle(t[2]), {}};
        for (std::size_t c = 3; c < t.size(); ++c) {
          const std::size_t colon = t[c].find(':');
          if (colon == std::string::npos) fail("expected control `qubit:bit`, got `" + t[c] + "`");
          g.controls.push_back(
              {to_int(t[c].substr(0, colon)), to_int(t[c].substr(colon + 1))});
        }
        circuit.append(std::move(g));
      } else {
        fail("unrecognized gate line");
      }
    } catch (const std::invalid_argument& e) {
      if (std::string_view(e.what()).starts_with("circuit text line")) throw;
      fail(e.what());
    }
  }
  return circuit;
}

/// OPENQASM 2.0 export for circuits over {ry, x, cx}. Pattern-controlled
/// rotations have no direct OPENQASM 2.0 form, so they are rejected with a
/// pointer at the transpiler. Qubit t maps to q[t-1].
inline std::string to_qasm(const Circuit& circuit) {
  std::string out =
      "OPENQASM 2.0;\n"
      "include \"qelib1.inc\";\n"
      "// qubit t of the circuit is q[t-1]\n"
      "qreg q[" +
      std::to_string(circuit.qubit_count()) + "];\n";
  for (const Gate& gate : circuit.gates()) {
    std::visit(
        [&](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RotY>) {
            out += "ry(" + detail::format_angle(g.angle) + ") q[" +
                   std::to_string(g.target - 1) + "];\n";
          } else if constexpr (std::is_same_v<T, PauliX>) {
            out += "x q[" + std::to_string(g.target - 1) + "];\n";
          } else if constexpr (std::is_same_v<T, CNot>) {
            out += "cx q[" + std::to_string(g.control - 1) + "],q[" +
                   std::to_string(g.target - 1) + "];\n";
          } else {
            throw std::invalid_argument(
                "pattern-controlled rotations have no OPENQASM 2.0 form; "
                "transpile the circuit first");
          }
        },
        gate);
  }
  return out;
}

}  // namespace qprep
