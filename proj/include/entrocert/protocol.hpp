#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "entrocert/states.hpp"

namespace entrocert {

// Two-outcome joint measurements: the "1" effect on each side projects onto
// the maximally entangled state of input register and state register, the "0"
// effect is its complement.
struct JointPovm {
  ComplexMatrix p0, p1;  // Alice, dim da^2
  ComplexMatrix q0, q1;  // Bob, dim db^2
  int da = 0;
  int db = 0;
};

JointPovm build_povms(int da, int db);

// P(a,b | input pair (s,t)) for outcome bits a,b and input labels s,t in 0..3.
struct CorrelationTable {
  std::array<std::array<std::array<std::array<double, 4>, 4>, 2>, 2> p{};

  double at(int a, int b, int s, int t) const { return p[a][b][s][t]; }
  double& at(int a, int b, int s, int t) { return p[a][b][s][t]; }
  double max_entry() const;

  // Per-(s,t) normalization within 1e-9 and no entry below -1e-12.
  void validate() const;
};

// Effect P_a (x) Q_b re-expressed on the canonical factor order
// (input_A, state_A, state_B, input_B); Q_b natively acts on (input_B, state_B),
// so its two factors are swapped into place.
ComplexMatrix embedded_effect(const JointPovm& povm, int a, int b);

// Tr[(P_a (x) Q_b) (tau (x) middle (x) omega)] for an arbitrary operator in the
// middle slot. Complex-valued so it can be evaluated on matrix units.
Complex correlation_trace(const ComplexMatrix& middle, const ComplexMatrix& tau,
                          const ComplexMatrix& omega, const JointPovm& povm, int a, int b);

// Born-rule probability of outcome (a,b) with shared state rho and inputs
// tau, omega. Values below -1e-12 are an error; round-off above that floor is
// clamped into [0, 1].
double correlation(const DensityMatrix& rho, const DensityMatrix& tau, const DensityMatrix& omega,
                   const JointPovm& povm, int a, int b);

CorrelationTable correlation_table(const DensityMatrix& rho, const InputEnsemble& alice,
                                   const InputEnsemble& bob, const JointPovm& povm);

// Closed form for the isotropic family:
//   P_z(a,b) = (3-2a)(3-2b)/16 + z (1-2a)(1-2b)/48,
// exact for the aligned input pairs (see closed_form_mismatches).
double werner_closed_form(double z, int a, int b);

// max over (a,b) of the closed form = (27+z)/48.
double werner_closed_form_max(double z);

// Input pairs (s,t) whose correlation column deviates from the closed form by
// more than `tolerance` at the given z.
std::vector<std::pair<int, int>> closed_form_mismatches(double z, double tolerance = 1e-10);

// Basis correlation Tr[(P_a (x) Q_b)(tau_s (x) sigma_i (x) sigma_j (x) omega_t)]
// over the tetrahedral ensembles; may be negative.
double pauli_basis_correlation(int i, int j, int s, int t, int a, int b, const JointPovm& povm);

// (9 + sqrt(3)) / 16, the analytic ceiling used by certification.
double analytic_max_correlation();

// Effective 4x4 measurement operator on the shared state for fixed inputs and
// outcomes: Tr[rho * K] equals correlation_trace with rho in the middle slot.
ComplexMatrix reduced_effect(const JointPovm& povm, const DensityMatrix& tau,
                             const DensityMatrix& omega, int a, int b);

struct MaxCorrelationResult {
  double value = 0.0;
  DensityMatrix argmax;
  int a = 0, b = 0, s = 0, t = 0;
};

// Independent search for the largest correlation any two-qubit shared state
// can produce: multi-start ascent over rho = M M^dagger / Tr, numerical
// gradient, step halving from 0.1 down to 1e-6. Deterministic for fixed seed.
MaxCorrelationResult brute_force_max_correlation(int restarts, std::uint64_t seed);

}  // namespace entrocert
