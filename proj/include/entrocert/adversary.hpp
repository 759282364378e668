#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "entrocert/certification.hpp"
#include "entrocert/witness.hpp"

namespace entrocert {

// One protocol round: input labels, outcome bits, and a ground-truth flag
// that the estimator never sees.
struct TrialRecord {
  int s = 0;
  int t = 0;
  int a = 0;
  int b = 0;
  bool faked = false;
};

enum class Interleaving { kDeterministic, kBernoulli };

// Memory-stick strategy: a fraction of rounds replays a stored outcome whose
// value never contributes to P(1,1|s,t); the rest measure a built-in resource
// state honestly, so the average witness statistic stays on target.
struct AttackStrategy {
  double fake_fraction = 0.0;
  int fake_a = 0;
  int fake_b = 0;
  Interleaving interleaving = Interleaving::kDeterministic;
  DensityMatrix resource_state;
  CorrelationTable resource_table;

  static AttackStrategy make(double fake_fraction, DensityMatrix resource, int fake_a = 0,
                             int fake_b = 0,
                             Interleaving interleaving = Interleaving::kDeterministic);
};

// Fraction of rounds the devices can replay while the expected statistic still
// matches i_target: solves 0*f + i_resource*(1-f) = i_target.
double optimal_fake_fraction(double i_target, double i_resource);

// f * 1 + (1-f) * p_max_resource.
double attack_guessing_probability(double fake_fraction, double p_max_resource);

// Honest protocol run: every round draws (s,t) uniformly and samples (a,b)
// from the Born-rule table of rho. Per-round streams derive from the seed by
// counter hashing, so records are reproducible and order-independent.
std::vector<TrialRecord> simulate_honest(const DensityMatrix& rho, std::int64_t rounds,
                                         std::uint64_t seed);

// Attack run. Deterministic interleaving places round(n*(1-fake_fraction))
// honest rounds evenly by round index, hitting the fraction exactly up to
// rounding; Bernoulli mode draws the honest/fake decision per round.
std::vector<TrialRecord> simulate_attack(const AttackStrategy& strategy, std::int64_t rounds,
                                         std::uint64_t seed);

// Column estimator P(1,1|s,t) -> empirical witness statistic -> certificate.
// A nonnegative estimate certifies zero bits; otherwise the affine bound is
// evaluated at the estimate (clamped to i_optimal from below).
CertificateReport estimate_and_certify(const std::vector<TrialRecord>& records,
                                       const WitnessDecomposition& decomposition, double i_optimal,
                                       double p_max);

// Ground-truth guess rate of the best per-round predictor: faked rounds are
// predicted exactly, honest rounds by the most likely outcome of honest_table
// given that round's (s,t).
double empirical_guess_rate(const std::vector<TrialRecord>& records,
                            const CorrelationTable& honest_table);

// CSV lines `round,s,t,a,b`; the debug variant appends the hidden flag.
void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records,
                       bool include_faked = false);

}  // namespace entrocert
