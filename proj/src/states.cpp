#include "entrocert/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entrocert {

const ComplexMatrix& pauli(int k) {
  static const std::array<ComplexMatrix, 4> basis = {
      ComplexMatrix(2, {1.0, 0.0, 0.0, 1.0}),
      ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}),
      ComplexMatrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}),
      ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}),
  };
  if (k < 0 || k > 3) throw std::invalid_argument("pauli: index out of range");
  return basis[k];
}

DensityMatrix DensityMatrix::validated(ComplexMatrix m) {
  if (!m.is_hermitian(tol::hermitian))
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol::trace_one)
    throw std::invalid_argument("DensityMatrix: trace differs from one");
  const EigenDecomposition eig = hermitian_eig(m);
  if (eig.eigenvalues.front() < -tol::psd)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(eig.eigenvalues.front()));
  return DensityMatrix(std::move(m));
}

DensityMatrix bell_state() { return max_entangled(2); }

DensityMatrix max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled: dimension must be at least 2");
  ComplexMatrix m(d * d);
  const double amp = 1.0 / d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i * d + i, j * d + j) = amp;
  return DensityMatrix::validated(std::move(m));
}

DensityMatrix werner(double z) {
  if (z < -1.0 / 3.0 - 1e-12 || z > 1.0 + 1e-12)
    throw std::invalid_argument("werner: z outside [-1/3, 1]");
  ComplexMatrix m = Complex((1.0 - z) / 4.0) * ComplexMatrix::identity(4);
  m += Complex(z) * bell_state().matrix();
  return DensityMatrix::validated(std::move(m));
}

namespace {

DensityMatrix bloch_state(const BlochVector& v) {
  ComplexMatrix m = Complex(0.5) * ComplexMatrix::identity(2);
  for (int k = 0; k < 3; ++k) m += Complex(0.5 * v[k]) * pauli(k + 1);
  return DensityMatrix::validated(std::move(m));
}

}  // namespace

InputEnsemble InputEnsemble::from_bloch(const std::array<BlochVector, 4>& vectors) {
  for (const auto& v : vectors) {
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::abs(norm - 1.0) > 1e-9)
      throw std::invalid_argument("InputEnsemble: Bloch vector is not unit length");
  }
  return InputEnsemble({bloch_state(vectors[0]), bloch_state(vectors[1]),
                        bloch_state(vectors[2]), bloch_state(vectors[3])},
                       vectors);
}

double InputEnsemble::gram_determinant() const {
  double g[4][4];
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      g[s][t] = trace_product(states_[s].matrix(), states_[t].matrix()).real();
  // 4x4 determinant by elimination with partial pivoting.
  double det = 1.0;
  for (int col = 0; col < 4; ++col) {
    int best = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(g[r][col]) > std::abs(g[best][col])) best = r;
    if (best != col) {
      for (int j = 0; j < 4; ++j) std::swap(g[col][j], g[best][j]);
      det = -det;
    }
    if (g[col][col] == 0.0) return 0.0;
    det *= g[col][col];
    for (int r = col + 1; r < 4; ++r) {
      const double f = g[r][col] / g[col][col];
      for (int j = col; j < 4; ++j) g[r][j] -= f * g[col][j];
    }
  }
  return det;
}

InputEnsemble tetrahedral_ensemble() {
  const double r = std::sqrt(1.0 / 3.0);
  return InputEnsemble::from_bloch({BlochVector{r, r, r}, BlochVector{r, -r, -r},
                                    BlochVector{-r, r, -r}, BlochVector{-r, -r, r}});
}

PauliCoefficients pauli_coefficients(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("pauli_coefficients: state is not two qubits");
  PauliCoefficients out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Complex t = trace_product(rho.matrix(), kron(pauli(i), pauli(j)));
      out.c[i][j] = t.real() / 4.0;
    }
  return out;
}

ComplexMatrix reconstruct(const PauliCoefficients& coeffs) {
  ComplexMatrix m(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (coeffs.c[i][j] == 0.0) continue;
      m += Complex(coeffs.c[i][j]) * kron(pauli(i), pauli(j));
    }
  return m;
}

double coefficient_sum(const PauliCoefficients& coeffs) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != 0 || j != 0) s += coeffs.c[i][j];
  return s;
}

}  // namespace entrocert
