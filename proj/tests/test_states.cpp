#include "doctest.h"

#include <cmath>

#include "entrocert/rng.hpp"
#include "entrocert/states.hpp"
#include "oracles.hpp"

using namespace entrocert;

TEST_CASE("bell_state") {
  const DensityMatrix bell = bell_state();
  CHECK(std::abs(bell.matrix().trace() - Complex(1.0)) < 1e-15);
  CHECK(bell.matrix()(0, 0).real() == testutil::near(0.5, 1e-15));
  CHECK(bell.matrix()(0, 3).real() == testutil::near(0.5, 1e-15));
  const auto eig = hermitian_eig(bell.matrix()).eigenvalues;
  CHECK(eig[0] == testutil::near(0.0, 1e-12));
  CHECK(eig[2] == testutil::near(0.0, 1e-12));
  CHECK(eig[3] == testutil::near(1.0, 1e-12));
}

TEST_CASE("max_entangled") {
  CHECK(max_entangled(2).matrix().approx_equal(bell_state().matrix(), 1e-15));

  const DensityMatrix d3 = max_entangled(3);
  CHECK(std::abs(d3.matrix().trace() - Complex(1.0)) < 1e-12);
  CHECK(trace_product(d3.matrix(), d3.matrix()).real() == testutil::near(1.0, 1e-12));

  SUBCASE("partial traces of the qubit case are maximally mixed") {
    const ComplexMatrix rho = max_entangled(2).matrix();
    for (int side : {0, 1}) {
      const ComplexMatrix red = testutil::partial_trace(rho, 2, 2, side);
      CHECK(red.approx_equal(Complex(0.5) * ComplexMatrix::identity(2), 1e-12));
    }
  }

  CHECK_THROWS_AS(max_entangled(1), std::invalid_argument);
}

TEST_CASE("werner family") {
  CHECK(werner(0.0).matrix().approx_equal(Complex(0.25) * ComplexMatrix::identity(4), 1e-15));
  CHECK(werner(1.0).matrix().approx_equal(bell_state().matrix(), 1e-15));

  ComplexMatrix mix = Complex(0.66 / 4.0) * ComplexMatrix::identity(4);
  mix += Complex(0.34) * bell_state().matrix();
  CHECK(werner(0.34).matrix().approx_equal(mix, 1e-15));

  SUBCASE("spectrum across the parameter range") {
    for (double z : {-1.0 / 3.0, -0.1, 0.0, 0.34, 0.62, 1.0}) {
      const auto eig = hermitian_eig(werner(z).matrix()).eigenvalues;
      CHECK(eig[0] == testutil::near(std::min((1.0 - z) / 4.0, (1.0 + 3.0 * z) / 4.0), 1e-10));
      CHECK(eig[3] == testutil::near(std::max((1.0 - z) / 4.0, (1.0 + 3.0 * z) / 4.0), 1e-10));
      int low = 0;
      for (double v : eig)
        if (std::abs(v - (1.0 - z) / 4.0) < 1e-10) ++low;
      CHECK(low >= 3);
    }
  }

  CHECK_THROWS_AS(werner(1.0 + 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(werner(-1.0 / 3.0 - 1e-6), std::invalid_argument);
}

TEST_CASE("DensityMatrix validation") {
  ComplexMatrix not_hermitian(2);
  not_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(DensityMatrix::validated(not_hermitian), std::invalid_argument);

  CHECK_THROWS_AS(DensityMatrix::validated(ComplexMatrix::identity(2)), std::invalid_argument);

  const ComplexMatrix indefinite(2, {1.5, 0.0, 0.0, -0.5});
  CHECK_THROWS_AS(DensityMatrix::validated(indefinite), std::invalid_argument);
}

TEST_CASE("tetrahedral ensemble") {
  const InputEnsemble tetra = tetrahedral_ensemble();
  ComplexMatrix sum(2);
  for (int s = 0; s < 4; ++s) {
    const ComplexMatrix& m = tetra.state(s).matrix();
    CHECK(std::abs(m.trace() - Complex(1.0)) < 1e-12);
    CHECK(trace_product(m, m).real() == testutil::near(1.0, 1e-12));
    sum += m;
  }
  CHECK(sum.approx_equal(Complex(2.0) * ComplexMatrix::identity(2), 1e-12));

  CHECK(trace_product(tetra.state(0).matrix(), tetra.state(1).matrix()).real() ==
        testutil::near(1.0 / 3.0, 1e-12));

  CHECK(tetra.gram_determinant() > 1e-3);
  CHECK(tetra.is_complete());

  CHECK_THROWS_AS(InputEnsemble::from_bloch({BlochVector{1, 1, 1}, BlochVector{0, 0, 1},
                                             BlochVector{0, 1, 0}, BlochVector{1, 0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("pauli coefficient expansion") {
  SUBCASE("maximally mixed state") {
    const auto c = pauli_coefficients(DensityMatrix::validated(Complex(0.25) * ComplexMatrix::identity(4)));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(c.c[i][j] == testutil::near(i == 0 && j == 0 ? 0.25 : 0.0, 1e-15));
    CHECK(coefficient_sum(c) == testutil::near(0.0, 1e-15));
  }

  SUBCASE("bell state") {
    const auto c = pauli_coefficients(bell_state());
    CHECK(c.c[0][0] == testutil::near(0.25, 1e-15));
    CHECK(c.c[1][1] == testutil::near(0.25, 1e-12));
    CHECK(c.c[2][2] == testutil::near(-0.25, 1e-12));
    CHECK(c.c[3][3] == testutil::near(0.25, 1e-12));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) CHECK(c.c[i][j] == testutil::near(0.0, 1e-12));
    CHECK(coefficient_sum(c) == testutil::near(0.25, 1e-12));
  }

  SUBCASE("|00><00| exceeds the quarter range") {
    ComplexMatrix proj(4);
    proj(0, 0) = 1.0;
    const auto c = pauli_coefficients(DensityMatrix::validated(proj));
    CHECK(c.c[3][0] == testutil::near(0.25, 1e-12));
    CHECK(c.c[0][3] == testutil::near(0.25, 1e-12));
    CHECK(c.c[3][3] == testutil::near(0.25, 1e-12));
    // The documented +-1/4 window for this sum does not hold on product
    // states; this value is the standing counterexample.
    CHECK(coefficient_sum(c) == testutil::near(0.75, 1e-12));
  }

  SUBCASE("reconstruction is the identity on random states") {
    SplitMix64 rng(314);
    for (int rep = 0; rep < 10; ++rep) {
      const DensityMatrix rho = testutil::random_density(4, rng);
      const auto c = pauli_coefficients(rho);
      CHECK(c.c[0][0] == testutil::near(0.25, 1e-14));
      CHECK(reconstruct(c).max_abs_diff(rho.matrix()) < 1e-10);
    }
  }

  SUBCASE("wrong dimension is rejected") {
    const DensityMatrix qubit =
        DensityMatrix::validated(Complex(0.5) * ComplexMatrix::identity(2));
    CHECK_THROWS_AS(pauli_coefficients(qubit), std::invalid_argument);
  }
}
