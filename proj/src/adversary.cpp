#include "entrocert/adversary.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "entrocert/rng.hpp"

namespace entrocert {

AttackStrategy AttackStrategy::make(double fake_fraction, DensityMatrix resource, int fake_a,
                                    int fake_b, Interleaving interleaving) {
  if (fake_fraction < 0.0 || fake_fraction >= 1.0)
    throw std::invalid_argument("AttackStrategy: fake fraction must lie in [0, 1)");
  if (fake_a < 0 || fake_a > 1 || fake_b < 0 || fake_b > 1)
    throw std::invalid_argument("AttackStrategy: fake outcome bits must be 0 or 1");
  if (fake_a == 1 && fake_b == 1)
    throw std::invalid_argument(
        "AttackStrategy: fake outcome (1,1) would contribute to the witness statistic");
  const InputEnsemble tetra = tetrahedral_ensemble();
  CorrelationTable table = correlation_table(resource, tetra, tetra, build_povms(2, 2));
  return AttackStrategy{fake_fraction, fake_a, fake_b, interleaving, std::move(resource),
                        std::move(table)};
}

double optimal_fake_fraction(double i_target, double i_resource) {
  if (i_target >= 0.0) throw std::invalid_argument("optimal_fake_fraction: i_target must be negative");
  if (i_resource > i_target)
    throw std::invalid_argument("optimal_fake_fraction: resource must reach the target value");
  return 1.0 - i_target / i_resource;
}

double attack_guessing_probability(double fake_fraction, double p_max_resource) {
  if (fake_fraction < 0.0 || fake_fraction > 1.0 || p_max_resource < 0.0 || p_max_resource > 1.0)
    throw std::invalid_argument("attack_guessing_probability: arguments must be probabilities");
  return fake_fraction + (1.0 - fake_fraction) * p_max_resource;
}

namespace {

void draw_inputs(SplitMix64& rng, int& s, int& t) {
  const int idx = static_cast<int>(rng.next_double() * 16.0);
  const int clamped = idx > 15 ? 15 : idx;
  s = clamped / 4;
  t = clamped % 4;
}

void draw_outcome(SplitMix64& rng, const CorrelationTable& table, int s, int t, int& a, int& b) {
  const double u = rng.next_double();
  double cum = 0.0;
  for (int k = 0; k < 4; ++k) {
    cum += table.at(k >> 1, k & 1, s, t);
    if (u < cum || k == 3) {
      a = k >> 1;
      b = k & 1;
      return;
    }
  }
}

}  // namespace

std::vector<TrialRecord> simulate_honest(const DensityMatrix& rho, std::int64_t rounds,
                                         std::uint64_t seed) {
  if (rounds < 1) throw std::invalid_argument("simulate_honest: need at least one round");
  const InputEnsemble tetra = tetrahedral_ensemble();
  const CorrelationTable table = correlation_table(rho, tetra, tetra, build_povms(2, 2));

  std::vector<TrialRecord> records(static_cast<std::size_t>(rounds));
  for (std::int64_t r = 0; r < rounds; ++r) {
    SplitMix64 rng(stream_seed(seed, static_cast<std::uint64_t>(r)));
    TrialRecord& rec = records[static_cast<std::size_t>(r)];
    draw_inputs(rng, rec.s, rec.t);
    draw_outcome(rng, table, rec.s, rec.t, rec.a, rec.b);
    rec.faked = false;
  }
  return records;
}

std::vector<TrialRecord> simulate_attack(const AttackStrategy& strategy, std::int64_t rounds,
                                         std::uint64_t seed) {
  if (rounds < 1) throw std::invalid_argument("simulate_attack: need at least one round");
  const std::int64_t honest_rounds =
      std::llround((1.0 - strategy.fake_fraction) * static_cast<double>(rounds));

  std::vector<TrialRecord> records(static_cast<std::size_t>(rounds));
  std::int64_t acc = 0;
  for (std::int64_t r = 0; r < rounds; ++r) {
    SplitMix64 rng(stream_seed(seed, static_cast<std::uint64_t>(r)));
    TrialRecord& rec = records[static_cast<std::size_t>(r)];

    bool honest;
    if (strategy.interleaving == Interleaving::kDeterministic) {
      acc += honest_rounds;  // Bresenham spacing: exactly honest_rounds of them
      honest = acc >= rounds;
      if (honest) acc -= rounds;
    } else {
      honest = rng.next_double() < 1.0 - strategy.fake_fraction;
    }

    draw_inputs(rng, rec.s, rec.t);
    if (honest) {
      draw_outcome(rng, strategy.resource_table, rec.s, rec.t, rec.a, rec.b);
      rec.faked = false;
    } else {
      rec.a = strategy.fake_a;
      rec.b = strategy.fake_b;
      rec.faked = true;
    }
  }
  return records;
}

CertificateReport estimate_and_certify(const std::vector<TrialRecord>& records,
                                       const WitnessDecomposition& decomposition, double i_optimal,
                                       double p_max) {
  if (records.empty()) throw std::invalid_argument("estimate_and_certify: no records");

  std::int64_t count[4][4] = {};
  std::int64_t hits[4][4] = {};
  for (const TrialRecord& rec : records) {
    if (rec.s < 0 || rec.s > 3 || rec.t < 0 || rec.t > 3 || rec.a < 0 || rec.a > 1 || rec.b < 0 ||
        rec.b > 1)
      throw std::invalid_argument("estimate_and_certify: record index out of range");
    ++count[rec.s][rec.t];
    if (rec.a == 1 && rec.b == 1) ++hits[rec.s][rec.t];
  }

  double i_hat = 0.0;
  double variance = 0.0;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) {
      if (count[s][t] == 0) continue;
      const double n_st = static_cast<double>(count[s][t]);
      const double p_hat = static_cast<double>(hits[s][t]) / n_st;
      const double beta = decomposition.beta[s][t];
      i_hat += beta * p_hat;
      variance += beta * beta * p_hat * (1.0 - p_hat) / n_st;
    }

  CertificateReport report;
  report.i_optimal = i_optimal;
  report.p_max = p_max;
  report.std_error = std::sqrt(variance);
  report.rounds = static_cast<std::int64_t>(records.size());

  if (i_hat >= 0.0) {
    report.bell_like_value = i_hat;
    report.p_guess_bound = 1.0;
    report.min_entropy_bits = 0.0;
    report.certified_bits_total = 0.0;
    return report;
  }

  const double i_target = std::max(i_hat, i_optimal);
  report.bell_like_value = i_target;
  report.p_guess_bound = guessing_probability_bound(i_target, i_optimal, p_max);
  report.min_entropy_bits = min_entropy(report.p_guess_bound);
  report.certified_bits_total = static_cast<double>(report.rounds) * report.min_entropy_bits;
  return report;
}

double empirical_guess_rate(const std::vector<TrialRecord>& records,
                            const CorrelationTable& honest_table) {
  if (records.empty()) throw std::invalid_argument("empirical_guess_rate: no records");
  int pred_a[4][4];
  int pred_b[4][4];
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) {
      double best = -1.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if (honest_table.at(a, b, s, t) > best) {
            best = honest_table.at(a, b, s, t);
            pred_a[s][t] = a;
            pred_b[s][t] = b;
          }
    }

  std::int64_t correct = 0;
  for (const TrialRecord& rec : records) {
    if (rec.faked || (rec.a == pred_a[rec.s][rec.t] && rec.b == pred_b[rec.s][rec.t])) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(records.size());
}

void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records,
                       bool include_faked) {
  os << (include_faked ? "round,s,t,a,b,faked\n" : "round,s,t,a,b\n");
  for (std::size_t r = 0; r < records.size(); ++r) {
    const TrialRecord& rec = records[r];
    os << r << ',' << rec.s << ',' << rec.t << ',' << rec.a << ',' << rec.b;
    if (include_faked) os << ',' << (rec.faked ? 1 : 0);
    os << '\n';
  }
}

}  // namespace entrocert
