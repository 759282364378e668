#include "entrocert/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "entrocert/rng.hpp"

namespace entrocert {

void OptimizerConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
  if (step_init <= 0.0 || step_min <= 0.0 || tol <= 0.0)
    throw std::invalid_argument("OptimizerConfig: step sizes and tolerance must be positive");
  if (step_min >= step_init)
    throw std::invalid_argument("OptimizerConfig: step_min must be below step_init");
}

DensityMatrix project_psd_trace_one(const ComplexMatrix& m) {
  const int n = m.dim();
  ComplexMatrix herm(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) herm(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  const EigenDecomposition eig = hermitian_eig(herm);
  double total = 0.0;
  std::vector<double> clipped(eig.eigenvalues.size());
  for (std::size_t k = 0; k < clipped.size(); ++k) {
    clipped[k] = std::max(0.0, eig.eigenvalues[k]);
    total += clipped[k];
  }
  if (total < 1e-14) throw std::runtime_error("project_psd_trace_one: zero matrix after clipping");

  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += eig.eigenvectors(i, k) * (clipped[k] / total) * std::conj(eig.eigenvectors(j, k));
      out(i, j) = acc;
    }
  return DensityMatrix::validated(std::move(out));
}

namespace {

using Params = std::array<double, 32>;

ComplexMatrix params_to_state(const Params& x) {
  ComplexMatrix m(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(x[(i * 4 + j) * 2], x[(i * 4 + j) * 2 + 1]);
  ComplexMatrix rho = m * m.adjoint();
  const double tr = rho.trace().real();
  if (tr < 1e-30) throw std::runtime_error("maximize_guess: degenerate factor");
  rho *= Complex(1.0 / tr);
  return rho;
}

Params state_to_params(const ComplexMatrix& rho) {
  const EigenDecomposition eig = hermitian_eig(rho);
  Params x{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double scale = std::sqrt(std::max(0.0, eig.eigenvalues[j]));
      const Complex entry = eig.eigenvectors(i, j) * scale;
      x[(i * 4 + j) * 2] = entry.real();
      x[(i * 4 + j) * 2 + 1] = entry.imag();
    }
  return x;
}

struct GuessLandscape {
  std::array<ComplexMatrix, 64> effects;  // index ((a*2+b)*4+s)*4+t
  ComplexMatrix witness_op;               // I(rho) = Tr[rho * witness_op]
  double i_target = 0.0;
  double temperature = 1e-3;

  double i_value(const ComplexMatrix& rho) const {
    return trace_product(rho, witness_op).real();
  }

  double max_p_exact(const ComplexMatrix& rho) const {
    double best = -1.0;
    for (const ComplexMatrix& k : effects) best = std::max(best, trace_product(rho, k).real());
    return best;
  }

  double max_p_smooth(const ComplexMatrix& rho) const {
    std::array<double, 64> p;
    double m = -1.0;
    for (int k = 0; k < 64; ++k) {
      p[k] = trace_product(rho, effects[k]).real();
      m = std::max(m, p[k]);
    }
    double acc = 0.0;
    for (double v : p) acc += std::exp((v - m) / temperature);
    return m + temperature * std::log(acc);
  }

  double p_formula(double i_value, double max_p) const {
    return (i_value - i_target) / i_value + (i_target / i_value) * max_p;
  }

  // Pull an iterate back into {I(rho) <= i_target} by mixing toward a
  // feasible anchor; the statistic is affine, so the mixing weight is exact.
  ComplexMatrix repair(const ComplexMatrix& rho, const ComplexMatrix& anchor,
                       double i_anchor) const {
    const double i_rho = i_value(rho);
    if (i_rho <= i_target) return rho;
    const double lambda = (i_target - i_anchor) / (i_rho - i_anchor) * (1.0 - 1e-12);
    ComplexMatrix mixed = Complex(lambda) * rho;
    mixed += Complex(1.0 - lambda) * anchor;
    return mixed;
  }
};

struct RestartOutcome {
  double p_exact = -1.0;
  ComplexMatrix rho;
  long iterations = 0;
  bool converged = false;
};

RestartOutcome run_restart(const GuessLandscape& land, Params x, const ComplexMatrix& anchor0,
                           double i_anchor0, const OptimizerConfig& cfg) {
  constexpr int max_iterations = 300;

  ComplexMatrix anchor = anchor0;
  double i_anchor = i_anchor0;
  double anchor_p = land.p_formula(i_anchor, land.max_p_exact(anchor));

  auto phi = [&](const Params& params) {
    const ComplexMatrix rho = land.repair(params_to_state(params), anchor, i_anchor);
    return land.p_formula(land.i_value(rho), land.max_p_smooth(rho));
  };

  double f = phi(x);
  double alpha = cfg.step_init;
  long it = 0;
  bool converged = false;

  for (; it < max_iterations; ++it) {
    Params grad;
    const double h = 1e-6;
    double gnorm_sq = 0.0;
    for (int i = 0; i < 32; ++i) {
      Params xh = x;
      xh[i] += h;
      grad[i] = (phi(xh) - f) / h;
      gnorm_sq += grad[i] * grad[i];
    }
    const double gnorm = std::sqrt(gnorm_sq);
    if (gnorm < 1e-14) {
      converged = true;
      break;
    }

    bool improved = false;
    double rel = 0.0;
    while (alpha >= cfg.step_min) {
      Params cand = x;
      for (int i = 0; i < 32; ++i) cand[i] += alpha * grad[i] / gnorm;
      const double fc = phi(cand);
      if (fc > f) {
        rel = (fc - f) / std::max(std::abs(f), 1e-30);
        x = cand;
        f = fc;
        improved = true;
        alpha = std::min(alpha * 2.0, cfg.step_init);
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) {
      converged = true;
      break;
    }

    // Keep the repair anchored at the best feasible point seen so far.
    const ComplexMatrix repaired = land.repair(params_to_state(x), anchor, i_anchor);
    const double p_here = land.p_formula(land.i_value(repaired), land.max_p_exact(repaired));
    if (p_here > anchor_p) {
      anchor = repaired;
      i_anchor = land.i_value(anchor);
      anchor_p = p_here;
      f = phi(x);
    }

    if (rel < cfg.tol) {
      converged = true;
      break;
    }
  }

  RestartOutcome out;
  out.rho = land.repair(params_to_state(x), anchor, i_anchor);
  double p_final = land.p_formula(land.i_value(out.rho), land.max_p_exact(out.rho));
  if (anchor_p > p_final) {
    out.rho = anchor;
    p_final = anchor_p;
  }
  out.p_exact = p_final;
  out.iterations = it;
  out.converged = converged;
  return out;
}

OptimizationResult maximize_guess_impl(const WitnessDecomposition& decomposition, double i_target,
                                       const OptimizerConfig& cfg,
                                       const std::vector<ComplexMatrix>& warm_starts) {
  cfg.validate();
  if (i_target >= 0.0) throw std::invalid_argument("maximize_guess: i_target must be negative");

  const InputEnsemble tetra = tetrahedral_ensemble();
  const JointPovm povm = build_povms(2, 2);
  GuessLandscape land;
  land.i_target = i_target;
  land.witness_op = ComplexMatrix(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) {
          ComplexMatrix k = reduced_effect(povm, tetra.state(s), tetra.state(t), a, b);
          if (a == 1 && b == 1)
            land.witness_op += Complex(decomposition.beta[s][t]) * k;
          land.effects[((a * 2 + b) * 4 + s) * 4 + t] = std::move(k);
        }

  const EigenDecomposition bound = hermitian_eig(land.witness_op);
  if (i_target < bound.eigenvalues.front() - 1e-9)
    throw std::runtime_error("maximize_guess: no feasible state reaches the target value");

  // The minimum-statistic eigenstate is feasible for every admissible target.
  ComplexMatrix anchor(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      anchor(i, j) = bound.eigenvectors(i, 0) * std::conj(bound.eigenvectors(j, 0));
  const double i_anchor = land.i_value(anchor);

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= cfg.restarts) return;
      Params x;
      if (r == 0) {
        x = state_to_params(anchor);
      } else if (r - 1 < static_cast<int>(warm_starts.size())) {
        x = state_to_params(warm_starts[static_cast<std::size_t>(r - 1)]);
      } else {
        SplitMix64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        for (double& xi : x) xi = rng.next_gaussian();
      }
      outcomes[static_cast<std::size_t>(r)] = run_restart(land, x, anchor, i_anchor, cfg);
    }
  };

  const int thread_count =
      std::max(1, std::min<int>(cfg.restarts, static_cast<int>(std::thread::hardware_concurrency())));
  if (thread_count > 1) {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  } else {
    worker();
  }

  int best = 0;
  for (int r = 1; r < cfg.restarts; ++r)
    if (outcomes[static_cast<std::size_t>(r)].p_exact > outcomes[static_cast<std::size_t>(best)].p_exact)
      best = r;
  const RestartOutcome& win = outcomes[static_cast<std::size_t>(best)];

  OptimizationResult result{win.p_exact, project_psd_trace_one(win.rho), 0.0, 0.0, win.converged,
                            win.iterations};
  result.i_rho_star = land.i_value(result.rho_star.matrix());
  result.p_max_star = land.max_p_exact(result.rho_star.matrix());
  result.p_guess_star = land.p_formula(result.i_rho_star, result.p_max_star);
  return result;
}

}  // namespace

OptimizationResult maximize_guess(const WitnessDecomposition& decomposition, double i_target,
                                  const OptimizerConfig& cfg) {
  return maximize_guess_impl(decomposition, i_target, cfg, {});
}

std::vector<CurvePoint> sdp_randomness_curve(const std::vector<double>& z_grid,
                                             const OptimizerConfig& cfg) {
  cfg.validate();
  for (double z : z_grid)
    if (z <= 1.0 / 3.0 || z > 1.0 + 1e-12)
      throw std::invalid_argument("sdp_randomness_curve: z outside (1/3, 1]");

  const InputEnsemble tetra = tetrahedral_ensemble();
  const WitnessDecomposition decomposition = decompose_witness(werner_witness(), tetra, tetra);

  std::vector<std::size_t> order(z_grid.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return z_grid[i] > z_grid[j]; });

  std::vector<CurvePoint> out(z_grid.size());
  std::vector<ComplexMatrix> warm;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const std::size_t idx = order[rank];
    const double z = z_grid[idx];
    OptimizerConfig point_cfg = cfg;
    point_cfg.seed = stream_seed(cfg.seed, idx);
    const OptimizationResult res =
        maximize_guess_impl(decomposition, (1.0 - 3.0 * z) / 16.0, point_cfg, warm);
    out[idx] = CurvePoint{z, min_entropy(res.p_guess_star), true};
    warm.assign(1, res.rho_star.matrix());
  }
  return out;
}

}  // namespace entrocert
