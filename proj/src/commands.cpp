#include "entrocert/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "entrocert/adversary.hpp"
#include "entrocert/optimizer.hpp"

namespace entrocert {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  out.back() = hi;
  return out;
}

void emit_generated_line(std::ostream& os, const RunConfig& cfg) {
  if (cfg.reproducible) return;
  char stamp[64];
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  os << "# generated: " << stamp << "\n";
}

// Runs `body` against the configured output (path or stdout). Returns 2 when
// the path cannot be opened or written.
int with_output(const RunConfig& cfg, const std::function<void(std::ostream&)>& body) {
  if (cfg.out_path == "-") {
    body(std::cout);
    return std::cout ? 0 : 2;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output path '" << cfg.out_path << "'\n";
    return 2;
  }
  body(file);
  file.flush();
  if (!file) {
    std::cerr << "error: write failed for '" << cfg.out_path << "'\n";
    return 2;
  }
  return 0;
}

void check_grid(const RunConfig& cfg, double lo_limit) {
  if (cfg.steps < 2) throw std::invalid_argument("steps must be at least 2");
  if (!(cfg.z_min < cfg.z_max)) throw std::invalid_argument("z-min must be below z-max");
  if (cfg.z_min < lo_limit || cfg.z_max > 1.0 + 1e-12)
    throw std::invalid_argument("z range outside the supported interval");
}

int default_restarts(const RunConfig& cfg, int fallback) {
  return cfg.restarts > 0 ? cfg.restarts : fallback;
}

CertificateReport certify_records(const std::vector<TrialRecord>& records) {
  const InputEnsemble tetra = tetrahedral_ensemble();
  const WitnessDecomposition decomposition = decompose_witness(werner_witness(), tetra, tetra);
  return estimate_and_certify(records, decomposition, -0.125, analytic_max_correlation());
}

void print_certificate(const CertificateReport& report) {
  std::cout << "I_hat=" << format_double(report.bell_like_value) << "\n";
  std::cout << "I_stderr=" << format_double(report.std_error) << "\n";
  std::cout << "p_guess_bound=" << format_double(report.p_guess_bound) << "\n";
  std::cout << "h_certified_per_round=" << format_double(report.min_entropy_bits) << "\n";
  std::cout << "certified_bits_total=" << format_double(report.certified_bits_total) << "\n";
}

}  // namespace

int cmd_curves(const RunConfig& cfg) {
  check_grid(cfg, 0.0);
  const std::vector<double> grid = linspace(cfg.z_min, cfg.z_max, cfg.steps);
  const std::vector<CurvePoint> analytic = werner_randomness_curve(grid);
  const std::vector<CurvePoint> chsh = chsh_randomness_curve(grid);

  std::vector<double> numeric(grid.size(), 0.0);
  if (!cfg.no_optimize) {
    std::vector<double> entangled;
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (grid[i] > 1.0 / 3.0 + 1e-12) {
        entangled.push_back(grid[i]);
        positions.push_back(i);
      }
    OptimizerConfig ocfg;
    ocfg.restarts = default_restarts(cfg, 32);
    ocfg.seed = cfg.seed;
    const std::vector<CurvePoint> points = sdp_randomness_curve(entangled, ocfg);
    for (std::size_t k = 0; k < positions.size(); ++k) numeric[positions[k]] = points[k].h_bits;
  }

  return with_output(cfg, [&](std::ostream& os) {
    emit_generated_line(os, cfg);
    os << "z,h_analytic,h_numeric,h_chsh\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      os << format_double(grid[i]) << ',' << format_double(analytic[i].h_bits) << ',';
      if (!cfg.no_optimize) os << format_double(numeric[i]);
      os << ',' << format_double(chsh[i].h_bits) << "\n";
    }
  });
}

int cmd_simulate(const RunConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  const std::vector<TrialRecord> records = simulate_honest(werner(cfg.z), cfg.trials, cfg.seed);
  const int rc = with_output(cfg, [&](std::ostream& os) {
    emit_generated_line(os, cfg);
    write_records_csv(os, records, cfg.debug);
  });
  if (rc != 0) return rc;
  print_certificate(certify_records(records));
  return 0;
}

int cmd_attack(const RunConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (cfg.fake_fraction >= 1.0) throw std::invalid_argument("fake-fraction must be below 1");
  const double i_target = (1.0 - 3.0 * cfg.z) / 16.0;
  if (i_target >= 0.0) throw std::invalid_argument("attack target must be entangled (z > 1/3)");

  const double fraction =
      cfg.fake_fraction >= 0.0 ? cfg.fake_fraction : optimal_fake_fraction(i_target, -0.125);

  std::vector<TrialRecord> records;
  CorrelationTable honest_table;
  if (fraction == 0.0) {
    // No faking requested: the devices just run the protocol on the target
    // state itself.
    records = simulate_honest(werner(cfg.z), cfg.trials, cfg.seed);
    const InputEnsemble tetra = tetrahedral_ensemble();
    honest_table = correlation_table(werner(cfg.z), tetra, tetra, build_povms(2, 2));
  } else {
    const AttackStrategy strategy = AttackStrategy::make(
        fraction, bell_state(), 0, 0,
        cfg.bernoulli ? Interleaving::kBernoulli : Interleaving::kDeterministic);
    records = simulate_attack(strategy, cfg.trials, cfg.seed);
    honest_table = strategy.resource_table;
  }

  const int rc = with_output(cfg, [&](std::ostream& os) {
    emit_generated_line(os, cfg);
    write_records_csv(os, records, cfg.debug);
  });
  if (rc != 0) return rc;

  std::cout << "z=" << format_double(cfg.z) << "\n";
  std::cout << "fake_fraction=" << format_double(fraction) << "\n";
  std::cout << "I_expected=" << format_double(i_target) << "\n";
  print_certificate(certify_records(records));
  std::cout << "p_guess_true=" << format_double(empirical_guess_rate(records, honest_table))
            << "\n";
  return 0;
}

int cmd_optimize(const RunConfig& cfg) {
  check_grid(cfg, 1.0 / 3.0 + 1e-9);
  OptimizerConfig ocfg;
  ocfg.restarts = default_restarts(cfg, 32);
  ocfg.seed = cfg.seed;
  const std::vector<double> grid = linspace(cfg.z_min, cfg.z_max, cfg.steps);
  const std::vector<CurvePoint> points = sdp_randomness_curve(grid, ocfg);
  return with_output(cfg, [&](std::ostream& os) {
    emit_generated_line(os, cfg);
    os << "z,p_guess,h_numeric\n";
    for (const CurvePoint& pt : points)
      os << format_double(pt.z) << ',' << format_double(std::exp2(-pt.h_bits)) << ','
         << format_double(pt.h_bits) << "\n";
  });
}

int cmd_decompose(const RunConfig& cfg) {
  const InputEnsemble tetra = tetrahedral_ensemble();
  Witness w = werner_witness();
  if (cfg.witness == "identity")
    w = Witness::from_matrix(ComplexMatrix::identity(4));
  else if (cfg.witness != "werner")
    throw std::invalid_argument("unknown witness: " + cfg.witness);
  const WitnessDecomposition decomposition = decompose_witness(w, tetra, tetra);

  const DensityMatrix mixed =
      DensityMatrix::validated(Complex(0.25) * ComplexMatrix::identity(4));
  const double direct = bell_like_value_direct(w, mixed, 2, 2);
  const CorrelationTable table = correlation_table(mixed, tetra, tetra, build_povms(2, 2));
  const double via_beta = bell_like_value_from_correlations(decomposition, table);

  return with_output(cfg, [&](std::ostream& os) {
    if (cfg.format == "csv") {
      emit_generated_line(os, cfg);
      os << "s,t,beta\n";
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t)
          os << s << ',' << t << ',' << format_double(decomposition.beta[s][t]) << "\n";
      os << "# residual=" << format_double(decomposition.residual) << "\n";
      os << "# I_mixed_direct=" << format_double(direct) << "\n";
      os << "# I_mixed_beta=" << format_double(via_beta) << "\n";
      return;
    }
    os << "beta[s][t] (rows s = Alice label, columns t = Bob label):\n";
    for (int s = 0; s < 4; ++s) {
      os << "  ";
      for (int t = 0; t < 4; ++t) os << format_double(decomposition.beta[s][t]) << (t == 3 ? "" : "\t");
      os << "\n";
    }
    os << "residual=" << format_double(decomposition.residual) << "\n";
    os << "I_mixed_direct=" << format_double(direct) << "\n";
    os << "I_mixed_beta=" << format_double(via_beta) << "\n";
  });
}

int cmd_maxcorr(const RunConfig& cfg) {
  const int restarts = default_restarts(cfg, 64);
  const MaxCorrelationResult result = brute_force_max_correlation(restarts, cfg.seed);
  const double analytic = analytic_max_correlation();
  const bool within = result.value <= analytic + 1e-9;
  return with_output(cfg, [&](std::ostream& os) {
    os << "analytic=" << format_double(analytic) << "\n";
    os << "oracle=" << format_double(result.value) << "\n";
    os << "oracle_outcome=(" << result.a << ',' << result.b << ")\n";
    os << "oracle_inputs=(" << result.s << ',' << result.t << ")\n";
    os << "verdict=" << (within ? "PASS" : "VIOLATION") << "\n";
  });
}

namespace {

struct OptionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

bool apply_option(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto to_double = [&](const std::string& v) {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw OptionError("invalid number for --" + key + ": " + v);
    return d;
  };
  auto to_ll = [&](const std::string& v) {
    std::size_t pos = 0;
    const long long n = std::stoll(v, &pos);
    if (pos != v.size()) throw OptionError("invalid integer for --" + key + ": " + v);
    return n;
  };

  if (key == "z-min") cfg.z_min = to_double(value);
  else if (key == "z-max") cfg.z_max = to_double(value);
  else if (key == "steps") cfg.steps = static_cast<int>(to_ll(value));
  else if (key == "z") cfg.z = to_double(value);
  else if (key == "trials") cfg.trials = to_ll(value);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_ll(value));
  else if (key == "restarts") cfg.restarts = static_cast<int>(to_ll(value));
  else if (key == "fake-fraction") cfg.fake_fraction = to_double(value);
  else if (key == "out") cfg.out_path = value;
  else if (key == "format") cfg.format = value;
  else if (key == "witness") cfg.witness = value;
  else return false;
  return true;
}

bool apply_flag(RunConfig& cfg, const std::string& key) {
  if (key == "no-optimize") cfg.no_optimize = true;
  else if (key == "reproducible") cfg.reproducible = true;
  else if (key == "debug") cfg.debug = true;
  else if (key == "bernoulli") cfg.bernoulli = true;
  else return false;
  return true;
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream file(path);
  if (!file) throw OptionError("cannot read config file: " + path);
  std::string line;
  while (std::getline(file, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw OptionError("config line is not key=value: " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (!apply_option(cfg, key, value) && !(value == "true" && apply_flag(cfg, key)))
      throw OptionError("unknown config key: " + key);
  }
}

void print_usage(std::ostream& os) {
  os << "usage: entrocert <command> [options]\n"
        "\n"
        "commands:\n"
        "  curves     write the certified-randomness curves as CSV (z,h_analytic,h_numeric,h_chsh)\n"
        "  simulate   run the honest protocol on an isotropic state, write trial records\n"
        "  attack     run the memory-stick attack against a target state, write trial records\n"
        "  optimize   numerical adversary bound per z, written as CSV\n"
        "  decompose  print the witness coefficients over the tetrahedral inputs\n"
        "  maxcorr    report the brute-force maximum correlation against the analytic constant\n"
        "\n"
        "common options:\n"
        "  --seed N           master seed (default: ENTROCERT_SEED or 1)\n"
        "  --out PATH         output file, '-' for stdout (default '-')\n"
        "  --config FILE      key=value defaults, overridden by flags\n"
        "  --reproducible     suppress the '# generated:' comment line\n"
        "\n"
        "command options:\n"
        "  curves/optimize:   --z-min --z-max --steps --restarts --no-optimize (curves only)\n"
        "  simulate/attack:   --z --trials --debug; attack also --fake-fraction --bernoulli\n"
        "  decompose:         --format csv --witness {werner|identity}\n"
        "  maxcorr:           --restarts\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    print_usage(args.empty() ? std::cerr : std::cout);
    return args.empty() ? 1 : 0;
  }

  RunConfig cfg;
  cfg.command = args[0];
  try {
    if (const char* env_seed = std::getenv("ENTROCERT_SEED")) {
      try {
        cfg.seed = static_cast<std::uint64_t>(std::stoll(env_seed));
      } catch (const std::exception&) {
        throw OptionError("ENTROCERT_SEED is not an integer");
      }
    }

    // Config file first, then flags in order.
    for (std::size_t i = 1; i < args.size(); ++i)
      if (args[i] == "--config") {
        if (i + 1 >= args.size()) throw OptionError("--config needs a path");
        load_config_file(cfg, args[i + 1]);
      }

    for (std::size_t i = 1; i < args.size(); ++i) {
      const std::string& arg = args[i];
      if (arg == "--help" || arg == "-h") {
        print_usage(std::cout);
        return 0;
      }
      if (arg.rfind("--", 0) != 0) throw OptionError("unexpected argument: " + arg);
      const std::string key = arg.substr(2);
      if (key == "config") {
        ++i;  // already handled
        continue;
      }
      if (apply_flag(cfg, key)) continue;
      if (i + 1 >= args.size()) throw OptionError("--" + key + " needs a value");
      if (!apply_option(cfg, key, args[i + 1])) throw OptionError("unknown option: " + arg);
      ++i;
    }

    if (!cfg.format.empty() && cfg.format != "csv")
      throw OptionError("unsupported format: " + cfg.format);

    if (cfg.command == "curves") return cmd_curves(cfg);
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "attack") return cmd_attack(cfg);
    if (cfg.command == "optimize") return cmd_optimize(cfg);
    if (cfg.command == "decompose") return cmd_decompose(cfg);
    if (cfg.command == "maxcorr") return cmd_maxcorr(cfg);
    throw OptionError("unknown command: " + cfg.command);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace entrocert
