#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace entrocert {

using Complex = std::complex<double>;

// Central numerical tolerances. Structural checks (hermiticity, positivity,
// trace) use 1e-10; elimination pivots and Jacobi convergence use 1e-12.
namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double trace_one = 1e-10;
inline constexpr double pivot = 1e-12;
inline constexpr double jacobi_offdiag = 1e-12;
inline constexpr double probability_floor = -1e-12;
inline constexpr double solve_residual = 1e-9;
}  // namespace tol

// Dense square complex matrix, row-major. Sized for operators on a few
// qubits (4-qubit joint space = 16x16); nothing here is tuned for large n.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim);
  ComplexMatrix(int dim, std::initializer_list<Complex> entries);

  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }

  Complex& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }
  const Complex& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * dim_ + j];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  double max_abs_diff(const ComplexMatrix& other) const;

  // Equality is always tolerance-based; there is no operator==.
  bool approx_equal(const ComplexMatrix& other, double tolerance) const;
  bool is_hermitian(double tolerance) const;

  std::vector<Complex> apply(const std::vector<Complex>& v) const;

 private:
  int dim_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);

// Tr[a * b] without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product: entry ((i*db + k), (j*db + l)) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Reorders the tensor factorization of an operator. `dims` are the subsystem
// dimensions of the input (their product must equal m.dim()); output factor p
// is input factor perm[p]. Applying a permutation and then its inverse
// reproduces the input exactly (entries are only copied, never recomputed).
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const std::vector<int>& dims,
                                 const std::vector<int>& perm);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k belongs to eigenvalues[k]
};

// Cyclic Jacobi for Hermitian matrices: complex plane rotations sweep the
// strict upper triangle until the off-diagonal Frobenius norm drops below
// tol::jacobi_offdiag; throws after 100 sweeps without convergence.
EigenDecomposition hermitian_eig(const ComplexMatrix& m);

// Dense real solve by Gaussian elimination with partial pivoting, n <= 256.
// a is row-major n*n, b has length n. A pivot below tol::pivot reports the
// failing index; the returned x satisfies ||a*x - b||_inf <= 1e-9 * ||b||_inf.
std::vector<double> solve_real_linear(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace entrocert
