// End-to-end walkthrough on the triangular density with a 3-qubit register:
// mass tree -> angles -> circuit -> simulation -> sampling.

#include <cstdio>

#include "qprep/qprep.hpp"

int main() {
  const auto spec = qprep::DistributionSpec::triangular(3);
  const qprep::MassTree masses = qprep::build_mass_tree(spec);
  const qprep::AngleTree angles = qprep::compute_angles(masses);

  std::printf("angle table (word, mass, angle):\n%s\n",
              qprep::angle_table_text(masses, angles).c_str());

  const qprep::Circuit circuit = qprep::build_full(angles);
  std::printf("circuit:\n%s\n", qprep::to_text(circuit).c_str());

  const qprep::StateVector sv = qprep::run(circuit);
  const auto probs = qprep::born_probabilities(sv);
  std::printf("measurement law vs target:\n");
  for (std::size_t k = 0; k < probs.size(); ++k)
    std::printf("  k=%zu  p=%.6f  target=%.6f\n", k, probs[k], masses.leaves()[k]);

  const qprep::Histogram hist = qprep::sample(sv, 2048, 7);
  std::printf("\n2048 shots, seed 7:\n%s", qprep::histogram_csv(hist).c_str());
  return 0;
}
