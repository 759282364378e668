#include "entrocert/certification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entrocert {

double guessing_probability_bound(double i_target, double i_optimal, double p_max) {
  if (p_max < 0.0 || p_max > 1.0)
    throw std::invalid_argument("guessing_probability_bound: p_max outside [0, 1]");
  if (i_optimal >= 0.0)
    throw std::invalid_argument("guessing_probability_bound: i_optimal must be negative");
  if (i_target >= 0.0)
    throw std::invalid_argument("guessing_probability_bound: no certification possible");
  if (i_target < i_optimal - 1e-12)
    throw std::invalid_argument("guessing_probability_bound: target exceeds quantum optimum");
  const double value = (i_optimal - i_target) / i_optimal + (i_target / i_optimal) * p_max;
  return std::clamp(value, p_max, 1.0);
}

double min_entropy(double p) {
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("min_entropy: p outside (0, 1]");
  return -std::log2(p);
}

std::vector<CurvePoint> werner_randomness_curve(const std::vector<double>& z_grid) {
  std::vector<CurvePoint> out;
  out.reserve(z_grid.size());
  const double slope = (7.0 - std::sqrt(3.0)) / 16.0;
  for (double z : z_grid) {
    if (z < -1.0 / 3.0 - 1e-12 || z > 1.0 + 1e-12)
      throw std::invalid_argument("werner_randomness_curve: z outside [-1/3, 1]");
    if (z <= 1.0 / 3.0 + 1e-15) {
      out.push_back({z, 0.0, false});
      continue;
    }
    const double p = 1.0 - slope * (3.0 * z - 1.0) / 2.0;
    out.push_back({z, -std::log2(p), true});
  }
  return out;
}

std::vector<CurvePoint> chsh_randomness_curve(const std::vector<double>& z_grid) {
  std::vector<CurvePoint> out;
  out.reserve(z_grid.size());
  for (double z : z_grid) {
    if (z < 0.0 || z > 1.0 + 1e-12)
      throw std::invalid_argument("chsh_randomness_curve: z outside [0, 1]");
    const double bell_value = 2.0 * std::sqrt(2.0) * z;
    const double raw = 1.0 - std::log2(1.0 + std::sqrt(std::max(0.0, 2.0 - bell_value * bell_value / 4.0)));
    out.push_back({z, std::max(0.0, raw), raw > 0.0});
  }
  return out;
}

}  // namespace entrocert
