// Loads a pmf JSON file (or a built-in example if no path is given),
// transpiles the preparation circuit to {ry, cx}, and prints the per-stage
// cost/accuracy report alongside the OPENQASM export.

#include <cstdio>

#include "qprep/qprep.hpp"

int main(int argc, char** argv) {
  qprep::DistributionSpec spec =
      argc > 1 ? qprep::load_pmf_file(argv[1])
               : qprep::DistributionSpec::discrete_pmf(2, {0.1, 0.2, 0.3, 0.4});

  const qprep::MassTree masses = qprep::build_mass_tree(spec);
  const qprep::AngleTree angles = qprep::compute_angles(masses);
  const qprep::Circuit circuit = qprep::transpile_full(angles);

  std::printf("stage  controls  ry  cx(closed)  cx(open)  dev(closed)  dev(open)\n");
  for (const auto& r : qprep::compare_ladder_variants(angles))
    std::printf("%5d  %8d  %2zu  %10zu  %8zu  %11.2e  %9.2e\n", r.stage, r.control_count,
                r.ry_count, r.cx_count_closed, r.cx_count_open, r.deviation_closed,
                r.deviation_open);

  std::printf("\n%s", qprep::to_qasm(circuit).c_str());
  return 0;
}
