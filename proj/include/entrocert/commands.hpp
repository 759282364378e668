#pragma once

#include <cstdint>
#include <string>

namespace entrocert {

// Parsed command line. Flags override config-file values, which override the
// defaults; the seed falls back to the ENTROCERT_SEED environment variable.
struct RunConfig {
  std::string command;

  double z_min = 0.34;
  double z_max = 1.0;
  int steps = 67;
  double z = 0.34;
  long long trials = 1000000;
  std::uint64_t seed = 1;
  int restarts = 0;  // 0 = command default (curves/optimize 32, maxcorr 64)
  double fake_fraction = -1.0;  // negative = choose the optimal fraction
  std::string out_path = "-";
  std::string format;  // empty = command default; "csv" forces machine output
  std::string witness = "werner";  // decompose target: "werner" or "identity"
  bool no_optimize = false;
  bool reproducible = false;
  bool debug = false;
  bool bernoulli = false;
};

// Exit codes: 0 success, 1 usage or configuration error, 2 I/O error,
// 3 numerical failure.
int cmd_curves(const RunConfig& cfg);
int cmd_simulate(const RunConfig& cfg);
int cmd_attack(const RunConfig& cfg);
int cmd_optimize(const RunConfig& cfg);
int cmd_decompose(const RunConfig& cfg);
int cmd_maxcorr(const RunConfig& cfg);

// Fixed-point decimal/scientific rendering with 12 significant digits,
// locale-independent.
std::string format_double(double v);

int run_cli(int argc, const char* const* argv);

}  // namespace entrocert
