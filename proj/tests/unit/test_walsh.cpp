#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "../helpers.hpp"
#include "qprep/walsh.hpp"

using qprep::walsh_hadamard;
using qprep::walsh_hadamard_inverse;

TEST_CASE("two-point transform") {
  const auto alpha = walsh_hadamard({0.8, 0.2});
  CHECK(alpha[0] == Catch::Approx(0.5).margin(1e-15));
  CHECK(alpha[1] == Catch::Approx(0.3).margin(1e-15));
}

TEST_CASE("constant lists concentrate on the zero word") {
  const auto alpha = walsh_hadamard(std::vector<double>(16, 0.7));
  CHECK(alpha[0] == Catch::Approx(0.7).margin(1e-15));
  for (std::size_t v = 1; v < 16; ++v) CHECK(alpha[v] == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("single-entry list is fixed") {
  CHECK(walsh_hadamard({1.25}) == std::vector<double>{1.25});
  CHECK(walsh_hadamard_inverse({1.25}) == std::vector<double>{1.25});
}

TEST_CASE("forward then unnormalized inverse recovers the input") {
  std::mt19937_64 rng(121);
  for (int m = 1; m <= 8; ++m)
    for (int trial = 0; trial < 100; ++trial) {
      const auto phi = test_helpers::random_angles(rng, std::size_t{1} << m, 0.0, 3.14);
      const auto back = walsh_hadamard_inverse(walsh_hadamard(phi));
      for (std::size_t w = 0; w < phi.size(); ++w)
        CHECK(back[w] == Catch::Approx(phi[w]).margin(1e-12));
    }
}

TEST_CASE("butterfly agrees with the direct double-sum definition") {
  std::mt19937_64 rng(131);
  for (int m = 1; m <= 10; ++m)
    for (int trial = 0; trial < 3; ++trial) {
      const auto phi = test_helpers::random_angles(rng, std::size_t{1} << m, -2.0, 2.0);
      const auto fast = walsh_hadamard(phi);
      const auto direct = test_helpers::walsh_direct(phi);
      for (std::size_t v = 0; v < phi.size(); ++v)
        CHECK(fast[v] == Catch::Approx(direct[v]).margin(1e-12));
    }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(walsh_hadamard({}), std::invalid_argument);
  CHECK_THROWS_AS(walsh_hadamard({1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(walsh_hadamard({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(walsh_hadamard_inverse({1.0, 2.0, 3.0, 4.0, 5.0}), std::invalid_argument);
}
