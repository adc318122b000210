#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "../helpers.hpp"
#include "qprep/circuit.hpp"
#include "qprep/distribution.hpp"
#include "qprep/simulator.hpp"

using qprep::AngleTree;
using qprep::Circuit;
using qprep::CNot;
using qprep::Gate;
using qprep::PatternControl;
using qprep::PatternRot;
using qprep::PatternX;
using qprep::PauliX;
using qprep::RotY;
using qprep::Word;

namespace {

AngleTree triangular_angles(int n) {
  return qprep::compute_angles(
      qprep::build_mass_tree(qprep::DistributionSpec::triangular(n)));
}

}  // namespace

TEST_CASE("stage one is a single unconditioned rotation on the last qubit") {
  const AngleTree angles = triangular_angles(3);
  const Circuit stage = qprep::build_stage(1, angles);
  REQUIRE(stage.size() == 1);
  const auto& g = std::get<RotY>(stage.gates()[0]);
  CHECK(g.target == 3);
  CHECK(g.angle == 2.0 * angles.root_theta());
}

TEST_CASE("later stages walk the words of the previous level in index order") {
  const AngleTree angles = triangular_angles(3);
  const Circuit stage = qprep::build_stage(3, angles);
  REQUIRE(stage.size() == 4);
  const char* expected_words[] = {"00", "10", "01", "11"};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& g = std::get<PatternRot>(stage.gates()[k]);
    CHECK(g.target == 1);
    CHECK(g.angle == angles.theta(Word::parse(expected_words[k])));
    REQUIRE(g.controls.size() == 2);
    const Word w = Word::parse(expected_words[k]);
    for (int r = 1; r <= 2; ++r) {
      CHECK(g.controls[r - 1].qubit == 1 + r);
      CHECK(g.controls[r - 1].bit == w.bit(r));
    }
  }
  CHECK_THROWS_AS(qprep::build_stage(0, angles), std::invalid_argument);
  CHECK_THROWS_AS(qprep::build_stage(4, angles), std::invalid_argument);
}

TEST_CASE("full circuits hold one rotation per tree word") {
  std::mt19937_64 rng(41);
  for (int n = 1; n <= 12; ++n) {
    const AngleTree angles = qprep::compute_angles(qprep::build_mass_tree(
        qprep::DistributionSpec::discrete_pmf(n, test_helpers::random_pmf(rng, n))));
    const Circuit circuit = qprep::build_full(angles);
    const qprep::GateCounts counts = qprep::gate_counts(circuit);
    CHECK(counts.total() == (std::size_t{1} << n) - 1);
    CHECK(counts.rot_y == 1);
    CHECK(counts.pattern_rot == (std::size_t{1} << n) - 2);
    CHECK(counts.cnot == 0);
    CHECK(counts.pauli_x == 0);
  }
}

TEST_CASE("append validates gates") {
  Circuit c(3);
  CHECK_THROWS_AS(c.append(RotY{0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(c.append(RotY{4, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(c.append(CNot{2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(c.append(PatternRot{1, 0.5, {{1, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(c.append(PatternRot{1, 0.5, {{2, 2}}}), std::invalid_argument);
  CHECK_THROWS_AS(c.append(PatternRot{1, 0.5, {{2, 0}, {2, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(Circuit(0), std::invalid_argument);

  // controls end up sorted by qubit regardless of the order given
  c.append(PatternRot{1, 0.5, {{3, 1}, {2, 0}}});
  const auto& g = std::get<PatternRot>(c.gates()[0]);
  CHECK(g.controls[0].qubit == 2);
  CHECK(g.controls[1].qubit == 3);
}

TEST_CASE("cnot expansion fixes one pattern character to 1") {
  SECTION("smallest register") {
    const auto factors = qprep::expand_cnot_to_patterns(CNot{2, 1}, 2);
    REQUIRE(factors.size() == 1);
    CHECK(factors[0].target == 1);
    REQUIRE(factors[0].controls.size() == 1);
    CHECK(factors[0].controls[0] == PatternControl{2, 1});
  }
  SECTION("three qubits, both control choices") {
    const auto low = qprep::expand_cnot_to_patterns(CNot{2, 1}, 3);
    REQUIRE(low.size() == 2);
    CHECK(low[0].controls == std::vector<PatternControl>{{2, 1}, {3, 0}});
    CHECK(low[1].controls == std::vector<PatternControl>{{2, 1}, {3, 1}});
    const auto high = qprep::expand_cnot_to_patterns(CNot{3, 1}, 3);
    REQUIRE(high.size() == 2);
    CHECK(high[0].controls == std::vector<PatternControl>{{2, 0}, {3, 1}});
    CHECK(high[1].controls == std::vector<PatternControl>{{2, 1}, {3, 1}});
  }
  SECTION("product equals the plain gate exactly") {
    for (int j = 2; j <= 5; ++j)
      for (int control = 2; control <= j; ++control) {
        Circuit reference(j);
        reference.append(CNot{control, 1});
        const auto factors = qprep::expand_cnot_to_patterns(CNot{control, 1}, j);
        CHECK(factors.size() == (std::size_t{1} << (j - 2)));
        CHECK(qprep::max_abs_diff(qprep::dense_unitary(reference),
                                  qprep::dense_unitary(j, factors)) == 0.0);
      }
  }
  SECTION("contract errors") {
    CHECK_THROWS_AS(qprep::expand_cnot_to_patterns(CNot{2, 1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(qprep::expand_cnot_to_patterns(CNot{2, 3}, 3), std::invalid_argument);
    CHECK_THROWS_AS(qprep::expand_cnot_to_patterns(CNot{4, 1}, 3), std::invalid_argument);
  }
}

TEST_CASE("embedding shifts every qubit") {
  Circuit local(2);
  local.append(RotY{1, 0.7});
  local.append(CNot{2, 1});
  local.append(PatternRot{1, 0.2, {{2, 1}}});
  const Circuit global = qprep::embed(local, 5, 3);
  CHECK(std::get<RotY>(global.gates()[0]).target == 4);
  CHECK(std::get<CNot>(global.gates()[1]).control == 5);
  CHECK(std::get<CNot>(global.gates()[1]).target == 4);
  CHECK(std::get<PatternRot>(global.gates()[2]).controls[0].qubit == 5);
  CHECK_THROWS_AS(qprep::embed(local, 3, 2), std::invalid_argument);
}

TEST_CASE("text serialization round-trips bit for bit") {
  Circuit circuit = qprep::build_full(triangular_angles(3));
  circuit.append(PauliX{2});
  circuit.append(CNot{3, 1});
  const std::string text = qprep::to_text(circuit, {"example", "second comment line"});
  CHECK(qprep::circuit_from_text(text) == circuit);
  CHECK(text.find("# example\n") != std::string::npos);
  CHECK(text.find("qubits 3\n") != std::string::npos);

  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const Circuit c = qprep::build_full(qprep::compute_angles(qprep::build_mass_tree(
        qprep::DistributionSpec::discrete_pmf(n, test_helpers::random_pmf(rng, n)))));
    CHECK(qprep::circuit_from_text(qprep::to_text(c)) == c);
  }
}

TEST_CASE("text parsing rejects malformed input") {
  CHECK_THROWS_AS(qprep::circuit_from_text(""), std::invalid_argument);
  CHECK_THROWS_AS(qprep::circuit_from_text("RY 1 0.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(qprep::circuit_from_text("qubits 2\nRZ 1 0.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(qprep::circuit_from_text("qubits 2\nRY 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(qprep::circuit_from_text("qubits 2\nRY 1 abc\n"), std::invalid_argument);
  CHECK_THROWS_AS(qprep::circuit_from_text("qubits 2\nPRY 1 0.5 2-1\n"), std::invalid_argument);
  CHECK_THROWS_AS(qprep::circuit_from_text("qubits 2\nCX 3 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(qprep::circuit_from_text("qubits 2\nPRY 1 0.5 2:0 2:1\n"),
                  std::invalid_argument);
  CHECK_NOTHROW(qprep::circuit_from_text("# comment\n\nqubits 1\nRY 1 0.25\n"));
}

TEST_CASE("qasm export covers the elementary gates and refuses patterns") {
  Circuit circuit(3);
  circuit.append(RotY{3, 1.5});
  circuit.append(PauliX{1});
  circuit.append(CNot{3, 2});
  const std::string qasm = qprep::to_qasm(circuit);
  CHECK(qasm.find("OPENQASM 2.0;") != std::string::npos);
  CHECK(qasm.find("qreg q[3];") != std::string::npos);
  CHECK(qasm.find("ry(1.5) q[2];") != std::string::npos);
  CHECK(qasm.find("x q[0];") != std::string::npos);
  CHECK(qasm.find("cx q[2],q[1];") != std::string::npos);

  Circuit withPattern(2);
  withPattern.append(PatternRot{1, 0.5, {{2, 1}}});
  CHECK_THROWS_WITH(qprep::to_qasm(withPattern), Catch::Matchers::ContainsSubstring("transpile"));
}
