#pragma once

#include <cstdint>

#include "entrocert/protocol.hpp"

namespace entrocert {

// Hermitian block-positive operator: nonnegative expectation on every product
// state, negative on some entangled state.
struct Witness {
  ComplexMatrix matrix;

  static Witness from_matrix(ComplexMatrix m);
};

// I/2 - |Phi+><Phi+|, the witness for the isotropic family.
Witness werner_witness();

// Coefficients beta[s][t] with W = sum_{s,t} beta[s][t] tau_s^T (x) omega_t^T
// up to the reported max-entry residual.
struct WitnessDecomposition {
  std::array<std::array<double, 4>, 4> beta{};
  double residual = 0.0;
};

// Solves the 16x16 Hilbert-Schmidt normal equations of the product basis
// {tau_s^T (x) omega_t^T}. Throws "incomplete ensemble" when either family is
// not a complete operator basis.
WitnessDecomposition decompose_witness(const Witness& w, const InputEnsemble& alice,
                                       const InputEnsemble& bob);

// Tr[W rho] / (da * db).
double bell_like_value_direct(const Witness& w, const DensityMatrix& rho, int da, int db);

// sum_{s,t} beta[s][t] P(1,1 | s,t). Agrees with the direct route for any
// state when the decomposition residual is negligible.
double bell_like_value_from_correlations(const WitnessDecomposition& decomposition,
                                         const CorrelationTable& table);

// Smallest sampled expectation Tr[W (rho_A (x) rho_B)] over `samples`
// pseudo-random pure product states plus a deterministic angle grid with step
// pi/24. A valid witness never goes below -1e-9 here.
double min_separable_expectation(const Witness& w, int samples, std::uint64_t seed);

}  // namespace entrocert
