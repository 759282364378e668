// Acceptance suite: one check per release criterion, one PASS/FAIL line each.
// Build target `acceptance_tests`; the CLI binary path comes from the
// ENTROCERT_CLI environment variable (set by ctest).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "entrocert/adversary.hpp"
#include "entrocert/commands.hpp"
#include "entrocert/optimizer.hpp"
#include "entrocert/rng.hpp"

using namespace entrocert;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Criterion {
  int number;
  std::string name;
  std::function<void(std::ostringstream&)> run;  // throws on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

const InputEnsemble& tetra() {
  static const InputEnsemble e = tetrahedral_ensemble();
  return e;
}

const WitnessDecomposition& werner_beta() {
  static const WitnessDecomposition d = decompose_witness(werner_witness(), tetra(), tetra());
  return d;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- criterion 1: both witness-value routes reproduce (1-3z)/16 ------------

void criterion_bell_like_exactness(std::ostringstream& info) {
  const auto start = std::chrono::steady_clock::now();
  const Witness w = werner_witness();
  const JointPovm povm = build_povms(2, 2);
  for (double z : linspace(-1.0 / 3.0, 1.0, 100)) {
    const double expected = (1.0 - 3.0 * z) / 16.0;
    const double direct = bell_like_value_direct(w, werner(z), 2, 2);
    require(std::abs(direct - expected) <= 1e-12,
            "direct value off at z=" + std::to_string(z));
    const CorrelationTable table = correlation_table(werner(z), tetra(), tetra(), povm);
    const double via_corr = bell_like_value_from_correlations(werner_beta(), table);
    require(std::abs(via_corr - direct) <= 1e-9,
            "correlation route off at z=" + std::to_string(z));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(secs < 5.0, "runtime " + std::to_string(secs) + " s exceeds 5 s");
  info << "100-point grid, both routes, " << secs << " s";
}

// ---- criterion 2: bell-state correlation maximum ----------------------------

void criterion_bell_max(std::ostringstream& info) {
  const double max = correlation_table(bell_state(), tetra(), tetra(), build_povms(2, 2)).max_entry();
  require(std::abs(max - 7.0 / 12.0) <= 1e-10, "max is " + std::to_string(max));
  info << "max = " << format_double(max);
}

// ---- criterion 3: analytic curve through the curves command ----------------

void criterion_analytic_curve(std::ostringstream& info) {
  const auto path = std::filesystem::temp_directory_path() / "entrocert_accept_curves.csv";
  RunConfig cfg;
  cfg.command = "curves";
  cfg.z_min = 0.34;
  cfg.z_max = 1.0;
  cfg.steps = 67;
  cfg.no_optimize = true;
  cfg.reproducible = true;
  cfg.out_path = path.string();
  require(cmd_curves(cfg) == 0, "curves command failed");

  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  require(line == "z,h_analytic,h_numeric,h_chsh", "unexpected header: " + line);
  const double slope = (7.0 - std::sqrt(3.0)) / 16.0;
  double h_at_one = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string zs, hs;
    std::getline(ls, zs, ',');
    std::getline(ls, hs, ',');
    const double z = std::stod(zs);
    const double h = std::stod(hs);
    const double expected = -std::log2(1.0 - slope * (3.0 * z - 1.0) / 2.0);
    require(std::abs(h - expected) <= 1e-12, "pointwise mismatch at z=" + zs);
    require(z <= 1.0 / 3.0 + 1e-9 || h > 0.0, "curve not strictly positive at z=" + zs);
    if (std::abs(z - 1.0) < 1e-15) h_at_one = h;
    ++rows;
  }
  std::filesystem::remove(path);
  require(rows == 67, "expected 67 rows");
  const double expected_at_one = -std::log2((9.0 + std::sqrt(3.0)) / 16.0);
  require(h_at_one >= 0.0, "z=1 row missing");
  require(std::abs(h_at_one - expected_at_one) <= 1e-5,
          "endpoint value " + std::to_string(h_at_one));
  info << "h(1) = " << format_double(h_at_one) << " (= -log2((9+sqrt3)/16))";
}

// ---- criterion 4: memory-stick attack reproduction -------------------------

void criterion_attack(std::ostringstream& info) {
  const auto start = std::chrono::steady_clock::now();

  const double fraction = optimal_fake_fraction(-0.00125, -0.125);
  require(fraction == 0.99, "optimal fraction is not exactly 0.99");

  const double p_attack = attack_guessing_probability(0.99, 7.0 / 12.0);
  require(std::abs(p_attack - 0.995833333333333) <= 1e-9,
          "attack guess probability " + std::to_string(p_attack));

  const double h_attack = min_entropy(p_attack);
  require(std::abs(h_attack - 0.006025) <= 1e-5, "attack entropy " + std::to_string(h_attack));

  const AttackStrategy strategy = AttackStrategy::make(fraction, bell_state());
  const std::int64_t n = 1000000;
  const auto records = simulate_attack(strategy, n, kSeed);
  const CertificateReport report =
      estimate_and_certify(records, werner_beta(), -0.125, analytic_max_correlation());
  require(std::abs(report.bell_like_value - (-1.0 / 800.0)) <= 3.0 * report.std_error,
          "estimate " + std::to_string(report.bell_like_value) + " not within 3 sigma of -1/800");

  const double rate = empirical_guess_rate(records, strategy.resource_table);
  const double sigma = std::sqrt(rate * (1.0 - rate) / static_cast<double>(n));
  require(std::abs(rate - 0.9958) <= 3.0 * sigma,
          "true guess rate " + std::to_string(rate) + " not within 3 sigma of 0.9958");

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(secs < 30.0, "runtime " + std::to_string(secs) + " s exceeds 30 s");
  info << "I_hat = " << format_double(report.bell_like_value) << ", rate = " << format_double(rate)
       << ", h = " << format_double(h_attack) << ", " << secs << " s";
}

// ---- criterion 5: CHSH comparison curve -------------------------------------

void criterion_chsh(std::ostringstream& info) {
  const double root_half = 1.0 / std::sqrt(2.0);
  const auto at_one = chsh_randomness_curve({1.0});
  require(std::abs(at_one[0].h_bits - 1.0) <= 1e-12, "h_chsh(1) != 1");

  for (double z : linspace(0.0, root_half, 25))
    require(chsh_randomness_curve({z})[0].h_bits == 0.0,
            "h_chsh nonzero below the threshold at z=" + std::to_string(z));

  const auto grid = linspace(1.0 / 3.0 + 1e-9, root_half, 40);
  const auto ours = werner_randomness_curve(grid);
  const auto chsh = chsh_randomness_curve(grid);
  for (std::size_t k = 0; k < grid.size(); ++k)
    require(ours[k].h_bits > chsh[k].h_bits,
            "witness curve does not dominate at z=" + std::to_string(grid[k]));
  info << "h_chsh(1) = 1, zero through z = 1/sqrt(2), dominated on (1/3, 1/sqrt(2)]";
}

// ---- criterion 6: bound never undershoots its own attack -------------------

void criterion_soundness(std::ostringstream& info) {
  const auto start = std::chrono::steady_clock::now();
  SplitMix64 rng(stream_seed(kSeed, 600));
  const std::int64_t n = 100000;
  double worst_margin = 1e9;
  for (int k = 0; k < 20; ++k) {
    const double z = 0.35 + 0.65 * rng.next_double();
    const double fraction = 0.99 * rng.next_double();
    const AttackStrategy strategy = AttackStrategy::make(fraction, werner(z));
    const auto records = simulate_attack(strategy, n, stream_seed(kSeed, 700 + k));

    const double expected_estimate = (1.0 - fraction) * (1.0 - 3.0 * z) / 16.0;
    const double bound =
        guessing_probability_bound(expected_estimate, -0.125, analytic_max_correlation());
    const double rate = empirical_guess_rate(records, strategy.resource_table);
    const double sigma = std::sqrt(rate * (1.0 - rate) / static_cast<double>(n));
    require(bound >= rate - 3.0 * sigma,
            "bound " + std::to_string(bound) + " undershoots rate " + std::to_string(rate) +
                " at z=" + std::to_string(z) + ", f=" + std::to_string(fraction));
    worst_margin = std::min(worst_margin, bound - rate);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(secs < 120.0, "runtime " + std::to_string(secs) + " s exceeds 2 min");
  info << "20 configurations, worst margin " << format_double(worst_margin) << ", " << secs << " s";
}

// ---- criterion 7: numerical adversary curve ---------------------------------

void criterion_optimizer(std::ostringstream& info) {
  const auto start = std::chrono::steady_clock::now();

  const MaxCorrelationResult oracle = brute_force_max_correlation(64, kSeed);
  const bool confirmed = oracle.value <= analytic_max_correlation() + 1e-9;

  OptimizerConfig cfg;
  cfg.restarts = 32;
  cfg.seed = kSeed;
  const auto grid = linspace(0.34, 1.0, 67);
  const auto curve = sdp_randomness_curve(grid, cfg);
  const auto analytic = werner_randomness_curve(grid);

  int below_analytic = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double i_target = (1.0 - 3.0 * grid[k]) / 16.0;
    const double p_star = std::exp2(-curve[k].h_bits);
    if (confirmed) {
      require(curve[k].h_bits >= analytic[k].h_bits - 1e-6,
              "numerical curve below the analytic one at z=" + std::to_string(grid[k]));
    } else {
      // The analytic ceiling is refuted by the oracle, so the comparison runs
      // against the oracle value instead.
      const double adapted =
          guessing_probability_bound(i_target, -0.125, std::min(1.0, oracle.value));
      require(p_star <= adapted + 1e-6,
              "p* exceeds the oracle-adapted bound at z=" + std::to_string(grid[k]));
      if (curve[k].h_bits < analytic[k].h_bits - 1e-6) ++below_analytic;
    }
  }

  for (std::size_t k = 1; k < curve.size(); ++k)
    require(curve[k].h_bits >= curve[k - 1].h_bits - 1e-4,
            "curve not monotone at z=" + std::to_string(grid[k]));

  OptimizerConfig boundary_cfg = cfg;
  boundary_cfg.restarts = 4;
  const auto boundary = sdp_randomness_curve({1.0 / 3.0 + 1e-6}, boundary_cfg);
  require(boundary[0].h_bits <= 1e-4,
          "curve does not vanish at the boundary: " + std::to_string(boundary[0].h_bits));

  const double p_star_at_target = std::exp2(-curve[0].h_bits);  // z = 0.34
  require(p_star_at_target >= 0.99583 - 1e-4,
          "p* at -1/800 is " + std::to_string(p_star_at_target));

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(secs < 300.0, "runtime " + std::to_string(secs) + " s exceeds 5 min");
  info << "oracle " << format_double(oracle.value)
       << (confirmed ? " (analytic ceiling confirmed)" : " (analytic ceiling refuted)")
       << ", p*(0.34) = " << format_double(p_star_at_target);
  if (!confirmed)
    info << ", " << below_analytic << "/67 points below the analytic curve";
  info << ", " << secs << " s";
}

// ---- criterion 8: oracle report ---------------------------------------------

void criterion_oracle_report(std::ostringstream& info) {
  const MaxCorrelationResult oracle = brute_force_max_correlation(64, kSeed);
  require(oracle.value >= 7.0 / 12.0 - 1e-6, "oracle below the bell-state value");
  const bool within = oracle.value <= analytic_max_correlation() + 1e-9;
  // The verdict is informative output, not a gate.
  info << "oracle = " << format_double(oracle.value) << " vs analytic "
       << format_double(analytic_max_correlation()) << " -> verdict "
       << (within ? "PASS" : "VIOLATION") << " at (a,b,s,t)=(" << oracle.a << ',' << oracle.b
       << ',' << oracle.s << ',' << oracle.t << ')';
}

// ---- criterion 9: byte-identical reruns through the CLI --------------------

void criterion_determinism(std::ostringstream& info) {
  const char* cli = std::getenv("ENTROCERT_CLI");
  require(cli != nullptr, "ENTROCERT_CLI is not set");
  const std::filesystem::path dir = std::filesystem::temp_directory_path();

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"curves-analytic", "curves --z-min 0.34 --z-max 1.0 --steps 5 --no-optimize --seed 3"},
      {"curves-numeric", "curves --z-min 0.4 --z-max 1.0 --steps 3 --restarts 2 --seed 3"},
      {"simulate", "simulate --z 0.5 --trials 20000 --seed 9"},
      {"attack", "attack --trials 20000 --seed 9"},
      {"optimize", "optimize --z-min 0.4 --z-max 1.0 --steps 3 --restarts 2 --seed 5"},
      {"decompose", "decompose --format csv"},
      {"maxcorr", "maxcorr --restarts 8 --seed 11"},
  };

  for (const auto& [label, args] : commands) {
    std::string bodies[2];
    for (int run = 0; run < 2; ++run) {
      const auto out = dir / ("entrocert_det_" + label + ".csv");
      const auto log = dir / ("entrocert_det_" + label + ".log");
      const std::string command = std::string("\"") + cli + "\" " + args +
                                  " --reproducible --out \"" + out.string() + "\" > \"" +
                                  log.string() + "\" 2>&1";
      require(std::system(command.c_str()) == 0, label + " exited nonzero");
      bodies[run] = slurp(out) + "\n---\n" + slurp(log);
      std::filesystem::remove(out);
      std::filesystem::remove(log);
    }
    require(bodies[0] == bodies[1], label + " output differs between runs");
    require(!bodies[0].empty(), label + " produced no output");
  }
  info << commands.size() << " commands, each byte-identical across reruns";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "bell-like value exactness on the isotropic grid", criterion_bell_like_exactness},
      {2, "bell-state correlation maximum 7/12", criterion_bell_max},
      {3, "analytic randomness curve reproduction", criterion_analytic_curve},
      {4, "memory-stick attack reproduction", criterion_attack},
      {5, "CHSH comparison curve", criterion_chsh},
      {6, "bound soundness against sampled attacks", criterion_soundness},
      {7, "numerical adversary curve properties", criterion_optimizer},
      {8, "max-correlation oracle report", criterion_oracle_report},
      {9, "seeded CLI determinism", criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::ostringstream detail;
    try {
      c.run(detail);
      std::cout << "[PASS] " << c.number << ". " << c.name;
      if (!detail.str().empty()) std::cout << " — " << detail.str();
      std::cout << std::endl;
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "[FAIL] " << c.number << ". " << c.name << " — " << e.what() << std::endl;
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
