#pragma once

// Test-only oracles and helpers, independent of the library paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "entrocert/matrix.hpp"
#include "entrocert/rng.hpp"
#include "entrocert/states.hpp"

namespace testutil {

// doctest::Approx with an absolute tolerance; tol = 0 behaves as equality.
inline doctest::Approx near(double value, double tol = 1e-12) {
  return doctest::Approx(value).epsilon(std::max(tol, 1e-300) / 1e12).scale(1e12);
}

using entrocert::Complex;
using entrocert::ComplexMatrix;

// Partial trace over one side of a d x d bipartition (side 0 = first factor).
inline ComplexMatrix partial_trace(const ComplexMatrix& m, int d_first, int d_second, int side) {
  if (m.dim() != d_first * d_second) throw std::invalid_argument("partial_trace: bad dims");
  const int keep = side == 0 ? d_second : d_first;
  ComplexMatrix out(keep);
  for (int i = 0; i < keep; ++i)
    for (int j = 0; j < keep; ++j) {
      Complex acc = 0.0;
      if (side == 0) {
        for (int k = 0; k < d_first; ++k) acc += m(k * d_second + i, k * d_second + j);
      } else {
        for (int k = 0; k < d_second; ++k) acc += m(i * d_second + k, j * d_second + k);
      }
      out(i, j) = acc;
    }
  return out;
}

// Characteristic polynomial x^4 + c[3] x^3 + c[2] x^2 + c[1] x + c[0] of a
// 4x4 matrix, with coefficients obtained from power-sum traces via Newton's
// identities. No shared code with hermitian_eig.
inline std::array<double, 4> char_poly_coeffs_4x4(const ComplexMatrix& m) {
  if (m.dim() != 4) throw std::invalid_argument("char_poly_coeffs_4x4: need 4x4");
  const ComplexMatrix m2 = m * m;
  const ComplexMatrix m3 = m2 * m;
  const ComplexMatrix m4 = m3 * m;
  const double p1 = m.trace().real();
  const double p2 = m2.trace().real();
  const double p3 = m3.trace().real();
  const double p4 = m4.trace().real();

  const double c3 = -p1;
  const double c2 = -(p2 + c3 * p1) / 2.0;
  const double c1 = -(p3 + c3 * p2 + c2 * p1) / 3.0;
  const double c0 = -(p4 + c3 * p3 + c2 * p2 + c1 * p1) / 4.0;
  return {c0, c1, c2, c3};
}

inline double char_poly_eval_4x4(const std::array<double, 4>& c, double x) {
  return (((x + c[3]) * x + c[2]) * x + c[1]) * x + c[0];
}

// Roots of the characteristic polynomial by Durand-Kerner iteration. Repeated
// eigenvalues are intrinsically ill-conditioned here (error ~ eps^(1/k) for a
// k-fold root), so comparisons against these roots need loose tolerances.
inline std::vector<double> char_poly_eigenvalues_4x4(const ComplexMatrix& m) {
  const std::array<double, 4> c = char_poly_coeffs_4x4(m);
  const double c0 = c[0], c1 = c[1], c2 = c[2], c3 = c[3];

  std::vector<Complex> roots = {Complex(0.4, 0.9), Complex(-0.66, 0.56), Complex(0.2, -1.1),
                                Complex(-0.8, -0.3)};
  auto poly = [&](Complex x) { return (((x + c3) * x + c2) * x + c1) * x + c0; };
  for (int it = 0; it < 200; ++it) {
    double shift = 0.0;
    for (int i = 0; i < 4; ++i) {
      Complex denom = 1.0;
      for (int j = 0; j < 4; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      const Complex delta = poly(roots[i]) / denom;
      roots[i] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < 1e-14) break;
  }

  std::vector<double> out;
  for (const Complex& r : roots) out.push_back(r.real());
  std::sort(out.begin(), out.end());
  return out;
}

inline ComplexMatrix random_hermitian(int dim, entrocert::SplitMix64& rng, double scale = 1.0) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = scale * rng.next_gaussian();
    for (int j = i + 1; j < dim; ++j) {
      const Complex v(scale * rng.next_gaussian(), scale * rng.next_gaussian());
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

inline entrocert::DensityMatrix random_density(int dim, entrocert::SplitMix64& rng) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  ComplexMatrix rho = m * m.adjoint();
  rho *= Complex(1.0 / rho.trace().real());
  return entrocert::DensityMatrix::validated(std::move(rho));
}

inline entrocert::DensityMatrix random_pure_qubit(entrocert::SplitMix64& rng) {
  std::vector<Complex> v(2);
  double norm_sq = 0.0;
  for (auto& c : v) {
    c = Complex(rng.next_gaussian(), rng.next_gaussian());
    norm_sq += std::norm(c);
  }
  ComplexMatrix rho(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) rho(i, j) = v[i] * std::conj(v[j]) / norm_sq;
  return entrocert::DensityMatrix::validated(std::move(rho));
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

}  // namespace testutil
