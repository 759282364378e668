#pragma once

#include <array>
#include <cmath>

#include "entrocert/matrix.hpp"

namespace entrocert {

// Pauli basis element, k in {0,1,2,3} = {I, X, Y, Z}.
const ComplexMatrix& pauli(int k);

// Hermitian, positive semidefinite, trace-one operator. Construction always
// goes through validated(), so a DensityMatrix is a physical state by
// invariant (hermiticity 1e-10, trace 1e-10, smallest eigenvalue >= -1e-10).
class DensityMatrix {
 public:
  static DensityMatrix validated(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

// |Phi+><Phi+| with |Phi+> = (|00> + |11>)/sqrt(2).
DensityMatrix bell_state();

// Projector onto sum_i |i>|i> / sqrt(d) on a d^2-dimensional space, d >= 2.
DensityMatrix max_entangled(int d);

// Isotropic family (1-z)/4 * I + z |Phi+><Phi+|; physical for z in [-1/3, 1].
DensityMatrix werner(double z);

using BlochVector = std::array<double, 3>;

// Ordered family of four single-qubit states (I + v.sigma)/2 with unit Bloch
// vectors. Completeness (linear independence over Hermitian 2x2 matrices) is
// a property of the family, exposed via gram_determinant(); families that are
// not complete can still be constructed so downstream code can reject them.
class InputEnsemble {
 public:
  static InputEnsemble from_bloch(const std::array<BlochVector, 4>& vectors);

  const DensityMatrix& state(int s) const { return states_[s]; }
  const BlochVector& bloch(int s) const { return bloch_[s]; }

  // Determinant of the 4x4 Hilbert-Schmidt Gram matrix Tr[tau_s tau_s'].
  double gram_determinant() const;
  bool is_complete() const { return std::abs(gram_determinant()) > 1e-9; }

 private:
  InputEnsemble(std::array<DensityMatrix, 4> states, std::array<BlochVector, 4> bloch)
      : states_(std::move(states)), bloch_(bloch) {}
  std::array<DensityMatrix, 4> states_;
  std::array<BlochVector, 4> bloch_;
};

// The four tetrahedral directions (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1)
// scaled to unit length, in that order.
InputEnsemble tetrahedral_ensemble();

// Expansion of a two-qubit operator over sigma_i (x) sigma_j:
// rho = sum_{ij} c[i][j] sigma_i (x) sigma_j with c[i][j] = Tr[rho sigma_i(x)sigma_j]/4.
struct PauliCoefficients {
  std::array<std::array<double, 4>, 4> c;
};

PauliCoefficients pauli_coefficients(const DensityMatrix& rho);
ComplexMatrix reconstruct(const PauliCoefficients& coeffs);

// Sum of all coefficients except c[0][0].
double coefficient_sum(const PauliCoefficients& coeffs);

}  // namespace entrocert
