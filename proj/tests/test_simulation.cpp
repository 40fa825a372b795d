#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <evdep/measures.hpp>
#include <evdep/rng.hpp>
#include <evdep/simulation.hpp>
#include <stdexcept>

#include "test_util.hpp"

using namespace evdep;

TEST_CASE("sample_joint determinism and degenerate support") {
  const JointBinaryDistribution d(0.3, 0.7, 0.18);
  const auto s1 = sample_joint(d, 5000, 42);
  const auto s2 = sample_joint(d, 5000, 42);
  CHECK(s1.x == s2.x);
  CHECK(s1.y == s2.y);
  const auto s3 = sample_joint(d, 5000, 43);
  CHECK(s1.x != s3.x);

  // perfect positive dependence: the smaller event implies the larger
  const auto sb = sample_joint({0.3, 0.7, 0.3}, 2000, 7);
  for (std::size_t i = 0; i < sb.n(); ++i)
    if (sb.x[i] == 1) CHECK(sb.y[i] == 1);
}

TEST_CASE("sample_joint satisfies a CLT sanity bound") {
  // each empirical coordinate within 3 sd of its target for ~99% of seeds
  const JointBinaryDistribution d(0.4, 0.8, 0.36);
  const std::size_t n = 4000;
  int violations = 0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    const auto s = sample_joint(d, n, derive_seed(1000, t));
    const MomentEstimates m = estimate_moments(s);
    auto within = [&](double est, double truth) {
      const double sd = std::sqrt(truth * (1 - truth) / n);
      return std::fabs(est - truth) <= 3.0 * sd;
    };
    if (!within(m.p_hat, d.p()) || !within(m.q_hat, d.q()) ||
        !within(m.r_hat, d.r()))
      ++violations;
  }
  CHECK(violations <= trials / 20);
}

TEST_CASE("markov sampler keeps the joint distribution") {
  const JointBinaryDistribution d(0.4, 0.6, 0.3);
  const auto s = sample_markov_joint(d, 100000, 0.5, 17);
  CHECK(s.mode == SampleMode::time_series);
  const MomentEstimates m = estimate_moments(s);
  // persistence triples the effective variance; 5 sd tolerance on n=1e5
  CHECK(std::fabs(m.p_hat - 0.4) < 5.0 * std::sqrt(3.0 * 0.24 / 100000.0));
  CHECK(std::fabs(m.r_hat - 0.3) < 5.0 * std::sqrt(3.0 * 0.21 / 100000.0));
  CHECK_THROWS_AS(sample_markov_joint(d, 100, 1.0, 1), std::domain_error);
}

TEST_CASE("run_coverage with one replication reproduces direct calls") {
  CoverageConfig cfg;
  cfg.marginal_pairs = {{0.3, 0.7}};
  cfg.r_count = 3;
  cfg.sample_sizes = {400};
  cfg.replications = 1;
  cfg.methods = {Method::fisher};
  cfg.measures = {MeasureKind::yule_q, MeasureKind::cole};
  cfg.seed = 2024;
  cfg.n_mc = 4000;
  cfg.threads = 1;
  const auto cells = run_coverage(cfg);
  REQUIRE(cells.size() == 6);  // 3 r-values x 2 measures

  for (std::size_t scen = 0; scen < 3; ++scen) {
    // mirror the documented seed derivation
    const std::uint64_t rep_seed = derive_seed(cfg.seed, scen, 0);
    const FrechetBounds b = fh_bounds(0.3, 0.7);
    const double w = b.upper - b.lower;
    const double lo = b.lower + cfg.r_inset_fraction * w;
    const double hi = b.upper - cfg.r_inset_fraction * w;
    const double r = lo + (hi - lo) * static_cast<double>(scen) / 2.0;
    const JointBinaryDistribution d(0.3, 0.7, r);
    const auto s = sample_joint(d, 400, derive_seed(rep_seed, 1));
    const MomentEstimates m = estimate_moments(s);
    REQUIRE_FALSE(m.any_boundary());
    const LongRunCovariance omega = omega_iid(m);

    const auto cell_q = cells[scen * 2];
    CHECK(cell_q.measure == MeasureKind::yule_q);
    const auto direct_q = ci(CiMeasure::yule_q, m, omega, cfg.level,
                             Method::fisher);
    CHECK(cell_q.mean_length == direct_q.length());
    CHECK(cell_q.coverage == (direct_q.contains(yule_q(d)) ? 1.0 : 0.0));

    const auto cell_c = cells[scen * 2 + 1];
    CHECK(cell_c.measure == MeasureKind::cole);
    const auto direct_c =
        ci_c(m, omega, cfg.level, Method::fisher, cfg.grid_step,
             CiStrategy::full, cfg.n_mc, derive_seed(rep_seed, 2));
    CHECK(cell_c.mean_length == direct_c.length());
    CHECK(cell_c.coverage == (direct_c.contains(cole(d)) ? 1.0 : 0.0));
  }
}

TEST_CASE("coverage rates partition and are worker-count invariant") {
  CoverageConfig cfg;
  cfg.marginal_pairs = {{0.3, 0.7}, {0.2, 0.2}};
  cfg.r_count = 2;
  cfg.sample_sizes = {150};
  cfg.replications = 60;
  cfg.methods = {Method::standard, Method::fisher};
  cfg.measures = {MeasureKind::yule_q, MeasureKind::phi, MeasureKind::cole};
  cfg.strategies = {CiStrategy::full, CiStrategy::basic};
  cfg.seed = 99;
  cfg.n_mc = 2000;
  cfg.grid_step = 0.005;
  cfg.threads = 1;
  const auto serial = run_coverage(cfg);
  cfg.threads = 2;
  const auto parallel = run_coverage(cfg);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].coverage == parallel[i].coverage);
    CHECK(serial[i].below_rate == parallel[i].below_rate);
    CHECK(serial[i].above_rate == parallel[i].above_rate);
    CHECK(serial[i].mean_length == parallel[i].mean_length);
    CHECK(serial[i].retained == parallel[i].retained);
    // coverage + below + above == 1 over retained runs
    if (serial[i].retained > 0) {
      CHECK(std::fabs(serial[i].coverage + serial[i].below_rate +
                      serial[i].above_rate - 1.0) <= 1e-12);
    }
    CHECK(serial[i].retained_fraction() <= 1.0);
  }
}

TEST_CASE("coverage is roughly nominal for Q on an easy cell") {
  CoverageConfig cfg;
  cfg.marginal_pairs = {{0.3, 0.7}};
  cfg.r_count = 1;  // midpoint of the inset interval
  cfg.sample_sizes = {500};
  cfg.replications = 400;
  cfg.methods = {Method::fisher};
  cfg.measures = {MeasureKind::yule_q};
  cfg.seed = 5;
  cfg.threads = 2;
  const auto cells = run_coverage(cfg);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].coverage > 0.84);
  CHECK(cells[0].coverage < 0.96);
  CHECK(cells[0].retained == 400);
}

TEST_CASE("limit law replication detects the degenerate-case bias") {
  // p = q with C > 0: min(p_hat, q_hat) biases the normalization m+
  // downward, so C_hat = sigma_hat / m_hat+ overshoots: the median bias
  // points away from zero. Mirrored for C < 0 at p = 1 - q.
  auto res = replicate_limit_law(0.4, 0.4, 0.5, 2000, 3000, 31, 20000);
  REQUIRE(res.estimates.size() > 2500);
  std::vector<double> est = res.estimates;
  std::nth_element(est.begin(), est.begin() + est.size() / 2, est.end());
  const double median = est[est.size() / 2];
  CHECK(median > 0.5);
  CHECK(std::get_if<MonteCarloLaw>(&res.law.dist) != nullptr);

  auto resn = replicate_limit_law(0.3, 0.7, -0.5, 2000, 3000, 37, 20000);
  std::vector<double> estn = resn.estimates;
  std::nth_element(estn.begin(), estn.begin() + estn.size() / 2, estn.end());
  CHECK(estn[estn.size() / 2] < -0.5);
  CHECK(std::get_if<MonteCarloLaw>(&resn.law.dist) != nullptr);

  // sigma = 0: the two half-normal branches split the sign evenly
  auto zero = replicate_limit_law(0.3, 0.7, 0.0, 2000, 3000, 32, 1000);
  int positive = 0;
  for (double v : zero.estimates) positive += v > 0.0 ? 1 : 0;
  const double frac = static_cast<double>(positive) / zero.estimates.size();
  CHECK(frac > 0.46);
  CHECK(frac < 0.54);
  CHECK(std::get_if<HalfNormalMixLaw>(&zero.law.dist) != nullptr);

  // regular case gets the gaussian law
  auto reg = replicate_limit_law(0.3, 0.7, 0.5, 500, 10, 33, 1000);
  CHECK(std::get_if<GaussianLaw>(&reg.law.dist) != nullptr);

  CHECK_THROWS_AS(replicate_limit_law(0.3, 0.7, 1.2, 100, 10, 1),
                  std::domain_error);
  CHECK_THROWS_AS(replicate_limit_law(0.0, 0.7, 0.5, 100, 10, 1),
                  std::domain_error);
  // the matching-sign inversion always stays inside the domain
  auto ok = replicate_limit_law(0.2, 0.2, -0.5, 200, 10, 2, 1000);
  CHECK(ok.r_true > 0.0);
  CHECK(ok.r_true < 0.04);
}

TEST_CASE("comparison surface inverts the fixed measure") {
  for (auto [kind, value] : {std::pair{MeasureKind::cole, 0.7},
                             {MeasureKind::yule_q, -0.4},
                             {MeasureKind::phi, 0.3}}) {
    const auto rows = comparison_surface(kind, value, 19);
    CHECK(rows.size() > 100);
    for (const auto& row : rows) {
      const JointBinaryDistribution d(row.p, row.q, row.r);
      double got = 0;
      switch (kind) {
        case MeasureKind::cole: got = cole(d); break;
        case MeasureKind::yule_q: got = yule_q(d); break;
        default: got = phi(d); break;
      }
      CHECK(std::fabs(got - value) <= 1e-10);
    }
  }
}

TEST_CASE("surface along the diagonal: C = 0.7") {
  const auto rows = comparison_surface(MeasureKind::cole, 0.7, 199);
  double q_at_small_diag = 0.0, phi_at_center = 0.0;
  bool c_le_q_on_diag = true;
  double min_diag_p = 1.0;
  for (const auto& row : rows) {
    if (row.p == row.q) {
      if (row.cole_value > row.yule_q_value + 1e-9) c_le_q_on_diag = false;
      if (row.p < min_diag_p) {
        min_diag_p = row.p;
        q_at_small_diag = row.yule_q_value;
      }
      if (row.p == 0.5) phi_at_center = row.phi_value;
    }
  }
  CHECK(c_le_q_on_diag);
  CHECK(q_at_small_diag > 0.95);  // Q pushes to 1 at extreme equal margins
  CHECK(phi_at_center == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("surface symmetry: negating C mirrors q to 1-q") {
  const int grid = 39;
  const auto pos = comparison_surface(MeasureKind::cole, 0.7, grid);
  const auto neg = comparison_surface(MeasureKind::cole, -0.7, grid);
  REQUIRE(pos.size() == neg.size());
  // index the negative rows by (p, q) for the mirrored lookup
  auto key = [&](double p, double q) {
    return std::lround(p * (grid + 1)) * 1000 + std::lround(q * (grid + 1));
  };
  std::vector<std::pair<long, SurfaceRow>> lookup;
  for (const auto& row : neg) lookup.push_back({key(row.p, row.q), row});
  std::sort(lookup.begin(), lookup.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& row : pos) {
    const long want = key(row.p, 1.0 - row.q);
    const auto it = std::lower_bound(
        lookup.begin(), lookup.end(), want,
        [](const auto& a, long k) { return a.first < k; });
    REQUIRE(it != lookup.end());
    REQUIRE(it->first == want);
    CHECK(it->second.cole_value == doctest::Approx(-row.cole_value).epsilon(1e-9));
    CHECK(it->second.yule_q_value ==
          doctest::Approx(-row.yule_q_value).epsilon(1e-9));
    CHECK(it->second.phi_value == doctest::Approx(-row.phi_value).epsilon(1e-9));
  }
}
