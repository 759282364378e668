#pragma once

#include <cstdint>
#include <vector>

namespace entrocert {

// Outcome of certifying one run (analytic or estimated from trial records).
struct CertificateReport {
  double bell_like_value = 0.0;  // clamped into [i_optimal, +inf)
  double i_optimal = 0.0;
  double p_max = 0.0;
  double p_guess_bound = 1.0;
  double min_entropy_bits = 0.0;
  double std_error = 0.0;  // binomial propagation through the estimator
  std::int64_t rounds = 0;
  double certified_bits_total = 0.0;
};

// Affine guessing-probability bound
//   p <= (i_optimal - i_target)/i_optimal + (i_target/i_optimal) * p_max,
// clamped into [p_max, 1]. Requires i_optimal <= i_target < 0.
double guessing_probability_bound(double i_target, double i_optimal, double p_max);

// -log2(p) for p in (0, 1].
double min_entropy(double p);

struct CurvePoint {
  double z = 0.0;
  double h_bits = 0.0;
  bool certifiable = false;  // false at and below the separability boundary
};

// Analytic bits-per-round lower bound for the isotropic family:
//   h(z) = -log2(1 - (7 - sqrt(3))/16 * (3z - 1)/2)  for z > 1/3,
// and a flagged zero at or below the boundary.
std::vector<CurvePoint> werner_randomness_curve(const std::vector<double>& z_grid);

// CHSH-based comparison curve: h = 1 - log2(1 + sqrt(2 - I^2/4)) with
// I = 2*sqrt(2)*z, clamped at zero below the violation threshold z = 1/sqrt(2).
std::vector<CurvePoint> chsh_randomness_curve(const std::vector<double>& z_grid);

}  // namespace entrocert
