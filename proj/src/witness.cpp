#include "entrocert/witness.hpp"

#include <cmath>
#include <stdexcept>

#include "entrocert/rng.hpp"

namespace entrocert {

Witness Witness::from_matrix(ComplexMatrix m) {
  if (!m.is_hermitian(tol::hermitian)) throw std::invalid_argument("Witness: not Hermitian");
  return Witness{std::move(m)};
}

Witness werner_witness() {
  ComplexMatrix m = Complex(0.5) * ComplexMatrix::identity(4);
  m -= bell_state().matrix();
  return Witness::from_matrix(std::move(m));
}

WitnessDecomposition decompose_witness(const Witness& w, const InputEnsemble& alice,
                                       const InputEnsemble& bob) {
  if (!alice.is_complete() || !bob.is_complete())
    throw std::invalid_argument("decompose_witness: incomplete ensemble");
  if (w.matrix.dim() != 4) throw std::invalid_argument("decompose_witness: witness must be 4x4");

  std::array<ComplexMatrix, 16> basis;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      basis[s * 4 + t] =
          kron(alice.state(s).matrix().transpose(), bob.state(t).matrix().transpose());

  // Gram system in the Hilbert-Schmidt inner product; all entries are real
  // because every basis element and W are Hermitian.
  std::vector<double> gram(16 * 16);
  std::vector<double> rhs(16);
  for (int row = 0; row < 16; ++row) {
    for (int col = 0; col < 16; ++col)
      gram[row * 16 + col] = trace_product(basis[row], basis[col]).real();
    rhs[row] = trace_product(basis[row], w.matrix).real();
  }

  std::vector<double> beta_flat;
  try {
    beta_flat = solve_real_linear(gram, rhs);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("decompose_witness: incomplete ensemble");
  }

  WitnessDecomposition out;
  ComplexMatrix rebuilt(4);
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) {
      out.beta[s][t] = beta_flat[s * 4 + t];
      rebuilt += Complex(out.beta[s][t]) * basis[s * 4 + t];
    }
  out.residual = rebuilt.max_abs_diff(w.matrix);
  return out;
}

double bell_like_value_direct(const Witness& w, const DensityMatrix& rho, int da, int db) {
  if (da < 2 || db < 2) throw std::invalid_argument("bell_like_value_direct: bad dimensions");
  if (rho.dim() != da * db || w.matrix.dim() != rho.dim())
    throw std::invalid_argument("bell_like_value_direct: dimension mismatch");
  return trace_product(w.matrix, rho.matrix()).real() / (da * db);
}

double bell_like_value_from_correlations(const WitnessDecomposition& decomposition,
                                         const CorrelationTable& table) {
  double value = 0.0;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) value += decomposition.beta[s][t] * table.at(1, 1, s, t);
  return value;
}

namespace {

std::array<Complex, 2> bloch_angles_ket(double theta, double phi) {
  return {Complex(std::cos(theta / 2.0), 0.0),
          Complex(std::cos(phi), std::sin(phi)) * std::sin(theta / 2.0)};
}

double product_expectation(const Witness& w, const std::array<Complex, 2>& a,
                           const std::array<Complex, 2>& b) {
  std::vector<Complex> v(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v[i * 2 + j] = a[i] * b[j];
  const std::vector<Complex> wv = w.matrix.apply(v);
  Complex e = 0.0;
  for (int k = 0; k < 4; ++k) e += std::conj(v[k]) * wv[k];
  return e.real();
}

std::array<Complex, 2> random_ket(SplitMix64& rng) {
  std::array<Complex, 2> v;
  double norm_sq = 0.0;
  for (auto& c : v) {
    c = Complex(rng.next_gaussian(), rng.next_gaussian());
    norm_sq += std::norm(c);
  }
  const double inv = 1.0 / std::sqrt(std::max(norm_sq, 1e-300));
  for (auto& c : v) c *= inv;
  return v;
}

}  // namespace

double min_separable_expectation(const Witness& w, int samples, std::uint64_t seed) {
  if (w.matrix.dim() != 4)
    throw std::invalid_argument("min_separable_expectation: witness must be 4x4");
  double min_value = 1e300;

  // Deterministic sweep over pure product states, step pi/24 in each angle.
  const double step = M_PI / 24.0;
  std::vector<std::array<Complex, 2>> grid;
  for (int it = 0; it <= 24; ++it)
    for (int ip = 0; ip < 48; ++ip) grid.push_back(bloch_angles_ket(it * step, ip * step));
  for (const auto& a : grid)
    for (const auto& b : grid) min_value = std::min(min_value, product_expectation(w, a, b));

  SplitMix64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    const auto a = random_ket(rng);
    const auto b = random_ket(rng);
    min_value = std::min(min_value, product_expectation(w, a, b));
  }
  return min_value;
}

}  // namespace entrocert
