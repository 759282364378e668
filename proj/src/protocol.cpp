#include "entrocert/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "entrocert/rng.hpp"

namespace entrocert {

JointPovm build_povms(int da, int db) {
  if (da < 2 || db < 2) throw std::invalid_argument("build_povms: dimensions must be at least 2");
  JointPovm povm;
  povm.da = da;
  povm.db = db;
  povm.p1 = max_entangled(da).matrix();
  povm.p0 = ComplexMatrix::identity(da * da) - povm.p1;
  povm.q1 = max_entangled(db).matrix();
  povm.q0 = ComplexMatrix::identity(db * db) - povm.q1;
  return povm;
}

double CorrelationTable::max_entry() const {
  double m = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) m = std::max(m, p[a][b][s][t]);
  return m;
}

void CorrelationTable::validate() const {
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) {
      double sum = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double v = p[a][b][s][t];
          if (v < tol::probability_floor)
            throw std::runtime_error("CorrelationTable: negative probability");
          sum += v;
        }
      if (std::abs(sum - 1.0) > 1e-9)
        throw std::runtime_error("CorrelationTable: column (" + std::to_string(s) + "," +
                                 std::to_string(t) + ") does not sum to one");
    }
}

ComplexMatrix embedded_effect(const JointPovm& povm, int a, int b) {
  if (a < 0 || a > 1 || b < 0 || b > 1)
    throw std::invalid_argument("embedded_effect: outcome bits must be 0 or 1");
  const ComplexMatrix& pa = a ? povm.p1 : povm.p0;
  const ComplexMatrix& qb = b ? povm.q1 : povm.q0;
  // kron(pa, qb) lives on (input_A, state_A, input_B, state_B); swap the last
  // two factors to match the canonical state order built by correlation_trace.
  return permute_subsystems(kron(pa, qb), {povm.da, povm.da, povm.db, povm.db}, {0, 1, 3, 2});
}

Complex correlation_trace(const ComplexMatrix& middle, const ComplexMatrix& tau,
                          const ComplexMatrix& omega, const JointPovm& povm, int a, int b) {
  if (tau.dim() != povm.da || omega.dim() != povm.db)
    throw std::invalid_argument("correlation_trace: input dimensions do not match the POVM");
  if (middle.dim() != povm.da * povm.db)
    throw std::invalid_argument("correlation_trace: shared-state dimension mismatch");
  const ComplexMatrix effect = embedded_effect(povm, a, b);
  const ComplexMatrix state = kron(kron(tau, middle), omega);
  return trace_product(effect, state);
}

namespace {

double real_probability(Complex value, const char* what) {
  if (std::abs(value.imag()) > 1e-9)
    throw std::runtime_error(std::string(what) + ": non-real probability");
  double r = value.real();
  if (r < tol::probability_floor)
    throw std::runtime_error(std::string(what) + ": negative probability " + std::to_string(r));
  return std::clamp(r, 0.0, 1.0);
}

}  // namespace

double correlation(const DensityMatrix& rho, const DensityMatrix& tau, const DensityMatrix& omega,
                   const JointPovm& povm, int a, int b) {
  return real_probability(correlation_trace(rho.matrix(), tau.matrix(), omega.matrix(), povm, a, b),
                          "correlation");
}

CorrelationTable correlation_table(const DensityMatrix& rho, const InputEnsemble& alice,
                                   const InputEnsemble& bob, const JointPovm& povm) {
  ComplexMatrix effects[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) effects[a][b] = embedded_effect(povm, a, b);

  CorrelationTable table;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) {
      const ComplexMatrix state =
          kron(kron(alice.state(s).matrix(), rho.matrix()), bob.state(t).matrix());
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          table.at(a, b, s, t) =
              real_probability(trace_product(effects[a][b], state), "correlation_table");
    }
  table.validate();
  return table;
}

double werner_closed_form(double z, int a, int b) {
  if (z < -1.0 / 3.0 - 1e-12 || z > 1.0 + 1e-12)
    throw std::invalid_argument("werner_closed_form: z outside [-1/3, 1]");
  return (3.0 - 2.0 * a) * (3.0 - 2.0 * b) / 16.0 + z * (1.0 - 2.0 * a) * (1.0 - 2.0 * b) / 48.0;
}

double werner_closed_form_max(double z) { return (27.0 + z) / 48.0; }

std::vector<std::pair<int, int>> closed_form_mismatches(double z, double tolerance) {
  const InputEnsemble tetra = tetrahedral_ensemble();
  const CorrelationTable table = correlation_table(werner(z), tetra, tetra, build_povms(2, 2));
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) {
      bool mismatch = false;
      for (int a = 0; a < 2 && !mismatch; ++a)
        for (int b = 0; b < 2 && !mismatch; ++b)
          if (std::abs(table.at(a, b, s, t) - werner_closed_form(z, a, b)) > tolerance)
            mismatch = true;
      if (mismatch) out.emplace_back(s, t);
    }
  return out;
}

double pauli_basis_correlation(int i, int j, int s, int t, int a, int b, const JointPovm& povm) {
  if (i < 0 || i > 3 || j < 0 || j > 3)
    throw std::invalid_argument("pauli_basis_correlation: basis index out of range");
  if (s < 0 || s > 3 || t < 0 || t > 3)
    throw std::invalid_argument("pauli_basis_correlation: input label out of range");
  static const InputEnsemble tetra = tetrahedral_ensemble();
  const Complex v = correlation_trace(kron(pauli(i), pauli(j)), tetra.state(s).matrix(),
                                      tetra.state(t).matrix(), povm, a, b);
  if (std::abs(v.imag()) > 1e-9)
    throw std::runtime_error("pauli_basis_correlation: non-real value");
  return v.real();
}

double analytic_max_correlation() { return (9.0 + std::sqrt(3.0)) / 16.0; }

ComplexMatrix reduced_effect(const JointPovm& povm, const DensityMatrix& tau,
                             const DensityMatrix& omega, int a, int b) {
  const int d = povm.da * povm.db;
  ComplexMatrix k(d);
  ComplexMatrix unit(d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      unit(m, n) = 1.0;
      k(n, m) = correlation_trace(unit, tau.matrix(), omega.matrix(), povm, a, b);
      unit(m, n) = 0.0;
    }
  return k;
}

namespace {

// Shared state of the correlation-maximization landscape: rho is parameterized
// as M M^dagger / Tr(M M^dagger) over the 32 real components of M.
struct CorrelationObjective {
  std::vector<ComplexMatrix> effects;  // 64 reduced effects, ordered by idx()

  static int idx(int a, int b, int s, int t) { return ((a * 2 + b) * 4 + s) * 4 + t; }

  static ComplexMatrix to_state(const std::array<double, 32>& x) {
    ComplexMatrix m(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = Complex(x[(i * 4 + j) * 2], x[(i * 4 + j) * 2 + 1]);
    ComplexMatrix rho = m * m.adjoint();
    const double tr = rho.trace().real();
    if (tr < 1e-30) throw std::runtime_error("degenerate factor parameterization");
    rho *= Complex(1.0 / tr);
    return rho;
  }

  double value(const ComplexMatrix& rho, int* best_index = nullptr) const {
    double best = -1.0;
    for (int k = 0; k < 64; ++k) {
      const double v = trace_product(rho, effects[k]).real();
      if (v > best) {
        best = v;
        if (best_index) *best_index = k;
      }
    }
    return best;
  }

  double operator()(const std::array<double, 32>& x) const { return value(to_state(x)); }
};

}  // namespace

MaxCorrelationResult brute_force_max_correlation(int restarts, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("brute_force_max_correlation: restarts must be >= 1");

  const InputEnsemble tetra = tetrahedral_ensemble();
  const JointPovm povm = build_povms(2, 2);
  CorrelationObjective obj;
  obj.effects.reserve(64);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t)
          obj.effects.push_back(reduced_effect(povm, tetra.state(s), tetra.state(t), a, b));

  constexpr double step_init = 0.1;
  constexpr double step_min = 1e-6;
  constexpr double rel_tol = 1e-9;
  constexpr int max_iterations = 400;

  std::array<double, 32> best_x{};
  double best_value = -1.0;

  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(stream_seed(seed, static_cast<std::uint64_t>(r)));
    std::array<double, 32> x;
    for (double& xi : x) xi = rng.next_gaussian();

    double f = obj(x);
    double alpha = step_init;
    for (int it = 0; it < max_iterations; ++it) {
      std::array<double, 32> grad;
      const double h = 1e-6;
      double gnorm_sq = 0.0;
      for (int i = 0; i < 32; ++i) {
        std::array<double, 32> xh = x;
        xh[i] += h;
        grad[i] = (obj(xh) - f) / h;
        gnorm_sq += grad[i] * grad[i];
      }
      const double gnorm = std::sqrt(gnorm_sq);
      if (gnorm < 1e-14) break;

      bool improved = false;
      double rel = 0.0;
      while (alpha >= step_min) {
        std::array<double, 32> cand = x;
        for (int i = 0; i < 32; ++i) cand[i] += alpha * grad[i] / gnorm;
        const double fc = obj(cand);
        if (fc > f) {
          rel = (fc - f) / std::max(std::abs(f), 1e-30);
          x = cand;
          f = fc;
          improved = true;
          alpha = std::min(alpha * 2.0, step_init);
          break;
        }
        alpha *= 0.5;
      }
      if (!improved || rel < rel_tol) break;
    }

    if (f > best_value) {
      best_value = f;
      best_x = x;
    }
  }

  const ComplexMatrix rho = CorrelationObjective::to_state(best_x);
  int best_index = 0;
  const double value = obj.value(rho, &best_index);
  const int t = best_index % 4;
  const int s = (best_index / 4) % 4;
  const int b = (best_index / 16) % 2;
  const int a = best_index / 32;
  return MaxCorrelationResult{value, DensityMatrix::validated(rho), a, b, s, t};
}

}  // namespace entrocert
