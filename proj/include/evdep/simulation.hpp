#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "evdep/core.hpp"
#include "evdep/estimation.hpp"
#include "evdep/inference.hpp"
#include "evdep/measures.hpp"

namespace evdep {

// iid draws from the four-cell multinomial (r, p-r, q-r, 1-p-q+r) by
// inverse CDF on a counter-based stream. A fixed seed yields a
// byte-identical sample on every run.
PairedBinarySample sample_joint(const JointBinaryDistribution& d,
                                std::size_t n, std::uint64_t seed);

// Stationary Markov chain with the same joint distribution: each step
// repeats the previous pair with probability persistence, otherwise draws
// fresh from d. Autocovariances decay like persistence^lag, so the
// long-run covariance of W is the iid one times
// (1 + persistence) / (1 - persistence). Mode is time_series.
PairedBinarySample sample_markov_joint(const JointBinaryDistribution& d,
                                       std::size_t n, double persistence,
                                       std::uint64_t seed);

// Design of a coverage experiment. The defaults reproduce the reference
// design: five marginal pairs, 39 joint probabilities per pair spread over
// the Frechet-Hoeffding interval with an inset of 1/20 of its width on
// each side, sample sizes {100, 500, 2000}, M = 1000 replications at
// level 0.90.
struct CoverageConfig {
  std::vector<std::pair<double, double>> marginal_pairs = {
      {0.05, 0.5}, {0.1, 0.9}, {0.2, 0.2}, {0.3, 0.7}, {0.4, 0.8}};
  int r_count = 39;
  double r_inset_fraction = 0.05;
  std::vector<std::uint64_t> sample_sizes = {100, 500, 2000};
  std::uint64_t replications = 1000;
  double level = 0.90;
  std::vector<Method> methods = {Method::standard, Method::fisher};
  std::vector<MeasureKind> measures = {MeasureKind::cole, MeasureKind::yule_q,
                                       MeasureKind::phi};
  std::vector<CiStrategy> strategies = {CiStrategy::full};
  std::uint64_t seed = 1;
  // Monte Carlo draws per replication for the degenerate Cole laws. Kept
  // below the single-shot default because a coverage run repeats the
  // simulation M times per cell.
  std::size_t n_mc = 10000;
  double grid_step = 0.001;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct CoverageCell {
  double p = 0, q = 0, r = 0;
  std::uint64_t n = 0;
  MeasureKind measure = MeasureKind::cole;
  Method method = Method::standard;
  CiStrategy strategy = CiStrategy::full;  // meaningful for cole only
  double true_value = 0;
  std::uint64_t total = 0;     // configured replications
  std::uint64_t retained = 0;  // replications with interior moments
  double coverage = 0;         // fractions of retained runs
  double below_rate = 0;
  double above_rate = 0;
  double mean_length = 0;

  double retained_fraction() const {
    return total == 0 ? 0.0
                      : static_cast<double>(retained) /
                            static_cast<double>(total);
  }
};

// Runs the experiment; results are deterministic for a fixed seed and
// independent of the worker count (per-replication seeds are derived from
// (seed, cell index, replication index)).
std::vector<CoverageCell> run_coverage(const CoverageConfig& cfg);

// Sampling distribution of the Cole estimator at one configuration,
// together with its asymptotic law evaluated at the population triple.
struct LimitLawResult {
  double p = 0, q = 0, c_true = 0, r_true = 0;
  std::uint64_t n = 0, replications = 0, dropped = 0;
  std::vector<double> estimates;  // retained estimates, replication order
  AsymptoticLaw law{GaussianLaw{1.0}, 1};
};

// Maps (p, q, C) to the joint probability r = pq + C m (the matching-sign
// bound m); throws std::domain_error when that r leaves the domain.
LimitLawResult replicate_limit_law(double p, double q, double c_true,
                                   std::uint64_t n, std::uint64_t replications,
                                   std::uint64_t seed,
                                   std::size_t n_mc = kDefaultMonteCarloDraws);

struct SurfaceRow {
  double p, q, r;
  double yule_q_value, phi_value, cole_value;
};

// For every marginal grid point (i/(grid+1), j/(grid+1)) inverts the fixed
// measure to r and reports all three comparison measures. Cells whose
// inversion leaves the domain are skipped. Supported fixed kinds: cole,
// yule_q, phi.
std::vector<SurfaceRow> comparison_surface(MeasureKind fixed_kind,
                                           double fixed_value, int grid);

}  // namespace evdep
