#pragma once

#include <cstdint>

#include "entrocert/certification.hpp"
#include "entrocert/witness.hpp"

namespace entrocert {

struct OptimizerConfig {
  int restarts = 32;
  double step_init = 0.1;
  double step_min = 1e-6;
  double tol = 1e-9;
  std::uint64_t seed = 1;

  void validate() const;
};

struct OptimizationResult {
  double p_guess_star = 0.0;
  DensityMatrix rho_star;
  double i_rho_star = 0.0;
  double p_max_star = 0.0;
  bool converged = false;
  long iterations = 0;
};

// Nearest physical state: symmetrize, eigendecompose, clip negative
// eigenvalues to zero, renormalize the trace to one. Fixed point on valid
// density matrices; throws if everything clips away.
DensityMatrix project_psd_trace_one(const ComplexMatrix& m);

// Adversary-side search: maximize
//   p = (I' - i_target)/I' + (i_target/I') * maxP(rho')
// over two-qubit states rho' subject to I' <= i_target < 0, where I' is the
// witness statistic of rho' under `decomposition` and maxP its largest
// correlation over all outcomes and the tetrahedral inputs (the same family
// the decomposition refers to). Multi-start ascent in the factor
// parameterization rho = M M^dagger / Tr with numerical gradients, a smoothed
// max during ascent and the exact max at evaluation; infeasible iterates are
// repaired by mixing toward the best known feasible state. Deterministic for
// a fixed seed; restart k of a larger run reuses the streams of a smaller one,
// so more restarts never lower the result.
OptimizationResult maximize_guess(const WitnessDecomposition& decomposition, double i_target,
                                  const OptimizerConfig& cfg);

// Certified bits per round from the numerical adversary at each z:
// i_target(z) = (1-3z)/16, h = -log2(p*). Grid points are processed from
// large z to small with warm starts, which keeps the curve monotone.
std::vector<CurvePoint> sdp_randomness_curve(const std::vector<double>& z_grid,
                                             const OptimizerConfig& cfg);

}  // namespace entrocert
