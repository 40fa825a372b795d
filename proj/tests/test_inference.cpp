#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <evdep/bvn.hpp>
#include <evdep/inference.hpp>
#include <evdep/measures.hpp>
#include <evdep/normal.hpp>
#include <evdep/report.hpp>
#include <evdep/rng.hpp>
#include <evdep/simulation.hpp>
#include <stdexcept>
#include <vector>

#include "test_util.hpp"

using namespace evdep;

namespace {
const ContingencyTable kSmallpox{197, 2, 139, 19};

MomentEstimates smallpox_moments() { return moments_from_table(kSmallpox); }

PairedBinarySample swapped(const PairedBinarySample& s) {
  PairedBinarySample t = s;
  std::swap(t.x, t.y);
  return t;
}
}  // namespace

TEST_CASE("fisher transformation") {
  CHECK(fisher(0.0) == 0.0);
  CHECK(fisher_inv(fisher(0.86)) == doctest::Approx(0.86).epsilon(1e-14));
  CHECK(fisher_inv(fisher(-0.999)) == doctest::Approx(-0.999).epsilon(1e-13));
  CHECK_THROWS_AS(fisher(1.0), std::domain_error);
  CHECK_THROWS_AS(fisher(-1.2), std::domain_error);

  // Z(Q) = log(OR) / 2
  const MomentEstimates m = smallpox_moments();
  const JointBinaryDistribution d = m.to_distribution();
  CHECK(fisher(yule_q(d)) ==
        doctest::Approx(0.5 * odds_ratio(d).log_value()).epsilon(1e-12));
}

TEST_CASE("gaussian law basics for Q and phi") {
  const MomentEstimates m = smallpox_moments();
  const LongRunCovariance lr = omega_iid(m);

  const auto q_law = law_q(m, lr);
  const double var_q = std::get<GaussianLaw>(q_law.dist).variance;
  CHECK(var_q > 0.0);
  // cross-checked against an independent implementation of the formulas
  CHECK(std::sqrt(var_q) == doctest::Approx(0.096742).epsilon(2e-5));
  CHECK(std::sqrt(std::get<GaussianLaw>(law_zq(m, lr).dist).variance) ==
        doctest::Approx(0.375800).epsilon(2e-5));
  CHECK(std::sqrt(std::get<GaussianLaw>(law_phi(m, lr).dist).variance) ==
        doctest::Approx(0.040311).epsilon(2e-5));

  // quadrupling n halves the standard deviation
  MomentEstimates m4 = m;
  m4.n = 4 * m.n;
  CHECK(std::get<GaussianLaw>(law_q(m4, lr).dist).variance ==
        doctest::Approx(var_q / 4.0).epsilon(1e-12));

  // swapping the roles of X and Y leaves the variance unchanged
  MomentEstimates ms = m;
  std::swap(ms.p_hat, ms.q_hat);
  const LongRunCovariance lrs = omega_iid(ms);
  CHECK(std::get<GaussianLaw>(law_q(ms, lrs).dist).variance ==
        doctest::Approx(var_q).epsilon(1e-12));
  CHECK(std::get<GaussianLaw>(law_phi(ms, lrs).dist).variance ==
        doctest::Approx(std::get<GaussianLaw>(law_phi(m, lr).dist).variance)
            .epsilon(1e-12));
}

TEST_CASE("asymptotic sd of Q matches Monte Carlo resampling") {
  const JointBinaryDistribution d(0.3, 0.7, 0.18);
  const std::uint64_t n = 2000;
  const MomentEstimates pop = MomentEstimates::from_population(d, n);
  const double asy_sd = std::sqrt(
      std::get<GaussianLaw>(law_q(pop, omega_iid(pop)).dist).variance);

  const int reps = 10000;
  std::vector<double> qs;
  qs.reserve(reps);
  for (int i = 0; i < reps; ++i) {
    const auto s = sample_joint(d, n, derive_seed(404, i));
    const MomentEstimates m = estimate_moments(s);
    if (m.any_boundary()) continue;
    qs.push_back(yule_q(m.to_distribution()));
  }
  double mean = 0.0;
  for (double v : qs) mean += v;
  mean /= static_cast<double>(qs.size());
  double var = 0.0;
  for (double v : qs) var += (v - mean) * (v - mean);
  var /= static_cast<double>(qs.size() - 1);
  const double ratio = std::sqrt(var) / asy_sd;
  CHECK(ratio > 0.95);
  CHECK(ratio < 1.05);
}

TEST_CASE("phi law at the symmetric point") {
  // p = q = 1/2, r = 1/4: the correction term of the phi Jacobian drops out
  MomentEstimates m;
  m.p_hat = m.q_hat = 0.5;
  m.r_hat = 0.25;
  m.sigma_hat = 0.0;
  m.m_plus = m.m_minus = 0.25;
  m.n = 500;
  const LongRunCovariance lr = omega_iid(m);
  const JacobianSet js = jacobians(m);
  const double expect =
      (js.delta.transpose() * lr.omega * js.delta)(0, 0) / (0.25 * 0.25) /
      static_cast<double>(m.n);
  CHECK(std::get<GaussianLaw>(law_phi(m, lr).dist).variance ==
        doctest::Approx(expect).epsilon(1e-12));
  // at phi = 0 the Fisher factor is 1
  CHECK(std::get<GaussianLaw>(law_zphi(m, lr).dist).variance ==
        doctest::Approx(std::get<GaussianLaw>(law_phi(m, lr).dist).variance)
            .epsilon(1e-12));
}

TEST_CASE("half-normal mix law is balanced at zero") {
  MomentEstimates m;
  m.p_hat = 0.3;
  m.q_hat = 0.7;
  m.r_hat = 0.21;
  m.sigma_hat = 0.0;
  m.m_plus = std::min(m.p_hat, m.q_hat) - 0.21;
  m.m_minus = 0.21;
  m.n = 2000;
  const auto law = law_c(m, omega_iid(m), SigmaSign::zero);
  const auto* mix = std::get_if<HalfNormalMixLaw>(&law.dist);
  REQUIRE(mix != nullptr);
  CHECK(law.cdf(0.0) == 0.5);  // P(limit > 0) = 1/2
  CHECK(mix->scale_plus == doctest::Approx(1.0 / m.m_plus));
  CHECK(mix->scale_minus == doctest::Approx(1.0 / m.m_minus));
  // distinct branch scales: the mix is asymmetric in spread
  CHECK(law.cdf(0.05) + law.cdf(-0.05) != doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("degenerate Cole laws against the closed-form oracle") {
  // The simulated limit S = l1 V4 + l2 (min(V1,V2) - V3) (positive case)
  // splits over {V1 <= V2} into two linear forms, so its CDF is a sum of
  // two bivariate-normal rectangle probabilities.
  const JointBinaryDistribution d(0.4, 0.4, 0.232);  // C = 0.5, p = q
  const std::uint64_t n = 2000;
  const MomentEstimates m = MomentEstimates::from_population(d, n);
  const LongRunCovariance lr = omega_iid(m);
  const JacobianSet js = jacobians(m);
  const std::size_t n_mc = 200000;
  const auto law =
      law_c(m, lr, SigmaSign::positive, MarginalCase::equal, n_mc, 991);
  REQUIRE(std::get_if<MonteCarloLaw>(&law.dist) != nullptr);

  const Eigen::Matrix4d sigma_v = js.j_f * lr.omega * js.j_f.transpose();
  const double a = js.lambda_plus(0), b = js.lambda_plus(1);
  auto rect = [&](const Eigen::Matrix4d& sv, const Eigen::Vector4d& lcoef,
                  const Eigen::Vector4d& dcoef, double t) {
    const double var_l = lcoef.transpose() * sv * lcoef;
    const double var_d = dcoef.transpose() * sv * dcoef;
    const double cov = lcoef.transpose() * sv * dcoef;
    const double rho = cov / std::sqrt(var_l * var_d);
    return bvn_cdf(t / std::sqrt(var_l), 0.0, rho);
  };
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  for (double t : {-0.08, -0.03, -0.01, 0.0, 0.01, 0.04, 0.09}) {
    const double tn = t * sqrt_n;  // draws are on the (C_hat - C) scale
    const Eigen::Vector4d l1(b, 0, -b, a), d1(1, -1, 0, 0);
    const Eigen::Vector4d l2(0, b, -b, a), d2(-1, 1, 0, 0);
    const double expect = rect(sigma_v, l1, d1, tn) + rect(sigma_v, l2, d2, tn);
    CHECK(law.cdf(t) == doctest::Approx(expect).scale(1).epsilon(0.005));
  }

  // negative branch: S = l1 V4 + l2 (V3 - (V1+V2) 1{V1+V2 > 0})
  const JointBinaryDistribution dn(0.3, 0.7, 0.105);  // C = -0.5, p = 1-q
  const MomentEstimates mn = MomentEstimates::from_population(dn, n);
  const LongRunCovariance lrn = omega_iid(mn);
  const JacobianSet jsn = jacobians(mn);
  const auto lawn =
      law_c(mn, lrn, SigmaSign::negative, MarginalCase::complementary, n_mc, 992);
  const Eigen::Matrix4d sv = jsn.j_f * lrn.omega * jsn.j_f.transpose();
  const double an = jsn.lambda_minus(0), bn = jsn.lambda_minus(1);
  for (double t : {-0.09, -0.02, 0.0, 0.03, 0.08}) {
    const double tn = t * sqrt_n;
    const Eigen::Vector4d l1(0, 0, bn, an), d1(1, 1, 0, 0);        // V1+V2 <= 0
    const Eigen::Vector4d l2(-bn, -bn, bn, an), d2(-1, -1, 0, 0);  // V1+V2 > 0
    const double expect = rect(sv, l1, d1, tn) + rect(sv, l2, d2, tn);
    CHECK(lawn.cdf(t) == doctest::Approx(expect).scale(1).epsilon(0.005));
  }
}

TEST_CASE("sigma sign test") {
  const MomentEstimates m = smallpox_moments();
  const LongRunCovariance lr = omega_iid(m);
  const TestResult geq = test_sigma_sign(m, lr, SigmaDirection::nonnegative);
  const TestResult leq = test_sigma_sign(m, lr, SigmaDirection::nonpositive);
  const TestResult two = test_sigma_sign(m, lr, SigmaDirection::zero);
  CHECK(leq.p_value < 0.01);  // the data are clearly positively dependent
  CHECK(geq.p_value > 0.99);
  CHECK(two.p_value == doctest::Approx(2.0 * std::min(geq.p_value, leq.p_value))
                           .epsilon(1e-12));

  // sigma_hat = 0 gives one-sided p exactly 1/2
  MomentEstimates mz;
  mz.p_hat = mz.q_hat = 0.5;
  mz.r_hat = 0.25;
  mz.sigma_hat = 0.0;
  mz.m_plus = mz.m_minus = 0.25;
  mz.n = 100;
  CHECK(test_sigma_sign(mz, omega_iid(mz), SigmaDirection::nonnegative)
            .p_value == 0.5);
}

TEST_CASE("marginal tests") {
  const MomentEstimates m = smallpox_moments();
  const LongRunCovariance lr = omega_iid(m);
  CHECK(test_pq(m, lr, MarginalHypothesis::equal).p_value < 1e-6);

  // contrast variance is the (1,1) - 2(1,2) + (2,2) combination
  const TestResult eq = test_pq(m, lr, MarginalHypothesis::equal);
  const double var = (lr.omega(0, 0) - 2 * lr.omega(0, 1) + lr.omega(1, 1)) /
                     static_cast<double>(m.n);
  CHECK(eq.statistic ==
        doctest::Approx((m.p_hat - m.q_hat) / std::sqrt(var)).epsilon(1e-12));

  MomentEstimates msym;
  msym.p_hat = msym.q_hat = 0.4;
  msym.r_hat = 0.2;
  msym.sigma_hat = 0.04;
  msym.m_plus = 0.24;
  msym.m_minus = 0.16;
  msym.n = 50;
  CHECK(test_pq(msym, omega_iid(msym), MarginalHypothesis::equal).p_value ==
        1.0);
}

TEST_CASE("smallpox confidence intervals") {
  const MomentEstimates m = smallpox_moments();
  const LongRunCovariance lr = omega_iid(m);

  const auto q_std = ci(CiMeasure::yule_q, m, lr, 0.90, Method::standard);
  CHECK(q_std.point == doctest::Approx(0.861726).epsilon(1e-5));
  CHECK(q_std.lower == doctest::Approx(0.7026).scale(1).epsilon(3e-4));
  CHECK(q_std.upper == doctest::Approx(1.0209).scale(1).epsilon(3e-4));

  const auto q_fis = ci(CiMeasure::yule_q, m, lr, 0.90, Method::fisher);
  CHECK(q_fis.lower == doctest::Approx(0.5927).scale(1).epsilon(3e-4));
  CHECK(q_fis.upper == doctest::Approx(0.9578).scale(1).epsilon(3e-4));

  const auto p_std = ci(CiMeasure::phi, m, lr, 0.90, Method::standard);
  CHECK(p_std.point == doctest::Approx(0.232632).epsilon(1e-5));
  CHECK(p_std.lower == doctest::Approx(0.1663).scale(1).epsilon(3e-4));
  CHECK(p_std.upper == doctest::Approx(0.2989).scale(1).epsilon(3e-4));

  const auto p_fis = ci(CiMeasure::phi, m, lr, 0.90, Method::fisher);
  CHECK(p_fis.lower == doctest::Approx(0.1653).scale(1).epsilon(3e-4));
  CHECK(p_fis.upper == doctest::Approx(0.2978).scale(1).epsilon(3e-4));

  const auto c_std = ci_c(m, lr, 0.90, Method::standard, 0.001,
                          CiStrategy::full, 20000, 7);
  CHECK(c_std.point == doctest::Approx(0.829146).epsilon(1e-5));
  CHECK(c_std.lower == doctest::Approx(0.606).scale(1).epsilon(0.0021));
  CHECK(c_std.upper == doctest::Approx(0.999).scale(1).epsilon(0.0021));

  const auto c_fis = ci_c(m, lr, 0.90, Method::fisher, 0.001,
                          CiStrategy::full, 20000, 7);
  CHECK(c_fis.lower == doctest::Approx(0.439).scale(1).epsilon(0.0021));
  CHECK(c_fis.upper == doctest::Approx(0.956).scale(1).epsilon(0.0021));
  CHECK_FALSE(c_fis.non_interval_flag);
  CHECK_FALSE(c_fis.empty_acceptance);
}

TEST_CASE("test_c at the point estimate and monotone power") {
  const MomentEstimates m = smallpox_moments();
  const LongRunCovariance lr = omega_iid(m);
  const ColeTestContext ctx(m, lr, Method::standard, 20000, 13);

  // at c0 = C_hat the distinct-branch statistic vanishes
  const double c_hat = ctx.point();
  const auto comp = ctx.components(c_hat);
  CHECK(comp.p_distinct == 1.0);
  const double p_at_point = ctx.p_value(c_hat, CiStrategy::full);
  CHECK(p_at_point >= std::min(1.0, 2.0 * comp.p_sigma) - 1e-12);

  // p-values fall away monotonically from the estimate within each sign
  // branch (the construction switches hypotheses when c crosses zero)
  double prev = ctx.p_value(std::min(0.999, c_hat + 0.05), CiStrategy::full);
  for (int k = 1; k <= 20; ++k) {
    const double c0 = c_hat + 0.05 + k * (0.99 - c_hat - 0.05) / 20.0;
    if (c0 >= 1.0) break;
    const double cur = ctx.p_value(c0, CiStrategy::full);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
  prev = ctx.p_value(c_hat - 0.05, CiStrategy::full);
  for (int k = 1; k <= 20; ++k) {
    const double c0 = c_hat - 0.05 - k * (c_hat - 0.05 - 0.001) / 20.0;
    const double cur = ctx.p_value(c0, CiStrategy::full);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
  prev = ctx.p_value(-0.01, CiStrategy::full);
  for (int k = 1; k <= 20; ++k) {
    const double c0 = -0.01 - k * 0.98 / 20.0;
    const double cur = ctx.p_value(c0, CiStrategy::full);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }

  const TestResult tr =
      test_c(m, lr, 0.5, Method::fisher, CiStrategy::full, 5000, 2);
  CHECK(tr.p_equal.has_value());
  CHECK(tr.p_distinct.has_value());
  CHECK(tr.p_marginal.has_value());
  CHECK(tr.p_sigma.has_value());
  CHECK(tr.p_value >= 0.0);
  CHECK(tr.p_value <= 1.0);
  CHECK_THROWS_AS(test_c(m, lr, 1.0, Method::standard), std::domain_error);
}

TEST_CASE("wald duality between tests and intervals") {
  SplitMix64 gen(55);
  for (int i = 0; i < 200; ++i) {
    const auto d = testutil::random_triple(gen, 0.1, 0.15);
    const auto s = sample_joint(d, 500, gen());
    const MomentEstimates m = estimate_moments(s);
    if (m.any_boundary()) continue;
    const LongRunCovariance lr = omega_iid(m);
    for (const Method method : {Method::standard, Method::fisher}) {
      const double level = 0.8 + 0.15 * uniform01(gen);
      const auto e_q = ci(CiMeasure::yule_q, m, lr, level, method);
      const auto law =
          method == Method::standard ? law_q(m, lr) : law_zq(m, lr);
      const double c0 = -0.95 + 1.9 * uniform01(gen);
      const double dev = method == Method::standard
                             ? e_q.point - c0
                             : fisher(e_q.point) - fisher(c0);
      const double pv = law.two_sided_p(dev);
      const bool outside = c0 < e_q.lower || c0 > e_q.upper;
      if (std::fabs(pv - (1.0 - level)) > 1e-12) {
        CHECK((pv <= 1.0 - level) == outside);
      }
    }
  }
}

TEST_CASE("fisher and standard intervals agree near the center") {
  SplitMix64 gen(59);
  int checked = 0;
  while (checked < 60) {
    const auto d = testutil::random_triple(gen, 0.2, 0.2);
    if (std::fabs(yule_q(d)) > 0.25) continue;
    const auto s = sample_joint(d, 2500, gen());
    const MomentEstimates m = estimate_moments(s);
    if (m.any_boundary()) continue;
    if (std::fabs(yule_q(m.to_distribution())) > 0.3) continue;
    ++checked;
    const LongRunCovariance lr = omega_iid(m);
    const auto std_ci = ci(CiMeasure::yule_q, m, lr, 0.90, Method::standard);
    const auto fis_ci = ci(CiMeasure::yule_q, m, lr, 0.90, Method::fisher);
    CHECK(std::fabs(std_ci.lower - fis_ci.lower) <= 0.01);
    CHECK(std::fabs(std_ci.upper - fis_ci.upper) <= 0.01);
    if (std::fabs(phi(m.to_distribution())) <= 0.3) {
      const auto ps = ci(CiMeasure::phi, m, lr, 0.90, Method::standard);
      const auto pf = ci(CiMeasure::phi, m, lr, 0.90, Method::fisher);
      CHECK(std::fabs(ps.lower - pf.lower) <= 0.01);
      CHECK(std::fabs(ps.upper - pf.upper) <= 0.01);
    }
  }
}

TEST_CASE("combined p-values are invariant to swapping X and Y") {
  // every deterministic component is exactly symmetric; the Monte Carlo
  // p_= component is symmetric in distribution
  const JointBinaryDistribution d(0.35, 0.75, 0.30);
  const auto s = sample_joint(d, 800, 321);
  const MomentEstimates m1 = estimate_moments(s);
  const MomentEstimates m2 = estimate_moments(swapped(s));
  const LongRunCovariance lr1 = omega_iid(m1);
  const LongRunCovariance lr2 = omega_iid(m2);
  const ColeTestContext ctx1(m1, lr1, Method::standard, 50000, 5);
  const ColeTestContext ctx2(m2, lr2, Method::standard, 50000, 5);
  for (double c0 : {-0.6, -0.2, 0.3, 0.5, 0.8}) {
    const auto a = ctx1.components(c0);
    const auto b = ctx2.components(c0);
    CHECK(a.p_distinct == doctest::Approx(b.p_distinct).epsilon(1e-12));
    CHECK(a.p_marginal == doctest::Approx(b.p_marginal).epsilon(1e-12));
    CHECK(a.p_sigma == doctest::Approx(b.p_sigma).epsilon(1e-12));
    CHECK(a.p_equal == doctest::Approx(b.p_equal).scale(1).epsilon(0.02));
  }
  // with the marginals far apart the p_= component never binds, so the
  // combined p-value is exactly symmetric here
  for (double c0 : {-0.6, -0.2, 0.3, 0.5, 0.8}) {
    CHECK(ctx1.p_value(c0, CiStrategy::full) ==
          doctest::Approx(ctx2.p_value(c0, CiStrategy::full)).epsilon(1e-10));
  }
}

TEST_CASE("monte carlo p-values are reproducible under a fixed seed") {
  const MomentEstimates m = smallpox_moments();
  const LongRunCovariance lr = omega_iid(m);
  const ColeTestContext a(m, lr, Method::fisher, 30000, 77);
  const ColeTestContext b(m, lr, Method::fisher, 30000, 77);
  for (double c0 = -0.9; c0 < 0.95; c0 += 0.1) {
    CHECK(a.p_value(c0, CiStrategy::basic) ==
          b.p_value(c0, CiStrategy::basic));
    const auto ca = a.components(c0);
    const auto cb = b.components(c0);
    CHECK(ca.p_equal == cb.p_equal);
  }
}

TEST_CASE("grid bookkeeping: hull, interior rejections, emptiness") {
  SplitMix64 gen(654);
  for (int i = 0; i < 40; ++i) {
    const auto d = testutil::random_triple(gen, 0.15, 0.1);
    const auto s = sample_joint(d, 60, gen());
    const MomentEstimates m = estimate_moments(s);
    if (m.any_boundary()) continue;
    const LongRunCovariance lr = omega_iid(m);
    const std::uint64_t seed = gen();
    const auto e = ci_c(m, lr, 0.90, Method::standard, 0.01, CiStrategy::full,
                        5000, seed);
    const ColeTestContext ctx(m, lr, Method::standard, 5000, seed);
    bool any_interior_rejected = false;
    bool any_accepted = false;
    double lo = 2.0, hi = -2.0;
    for (int k = -99; k <= 99; ++k) {
      const double c0 = k * 0.01;
      if (ctx.p_value(c0, CiStrategy::full) > 0.10) {
        any_accepted = true;
        lo = std::min(lo, c0);
        hi = std::max(hi, c0);
      }
    }
    for (int k = -99; k <= 99; ++k) {
      const double c0 = k * 0.01;
      if (c0 > lo && c0 < hi && ctx.p_value(c0, CiStrategy::full) <= 0.10)
        any_interior_rejected = true;
    }
    CHECK(e.empty_acceptance == !any_accepted);
    if (any_accepted) {
      CHECK(e.lower == doctest::Approx(lo).epsilon(1e-12));
      CHECK(e.upper == doctest::Approx(hi).epsilon(1e-12));
      CHECK(e.non_interval_flag == any_interior_rejected);
    }
    CHECK(e.lower <= e.upper);
  }

  // an absurdly precise sample rejects every grid value between the nodes
  MomentEstimates huge;
  huge.p_hat = 0.44;
  huge.q_hat = 0.52;
  huge.r_hat = 0.26 + 0.00037;
  huge.sigma_hat = huge.r_hat - huge.p_hat * huge.q_hat;
  huge.m_plus = 0.44 - huge.p_hat * huge.q_hat;
  huge.m_minus = huge.p_hat * huge.q_hat;
  huge.n = 4000000000ull;
  const auto degenerate = ci_c(huge, omega_iid(huge), 0.90, Method::standard,
                               0.01, CiStrategy::full, 2000, 3);
  CHECK(degenerate.empty_acceptance);
  CHECK(degenerate.lower == degenerate.upper);
}

TEST_CASE("interval and test json round trip") {
  const MomentEstimates m = smallpox_moments();
  const LongRunCovariance lr = omega_iid(m);
  const auto e =
      ci_c(m, lr, 0.90, Method::fisher, 0.002, CiStrategy::full, 5000, 11);
  const auto back = interval_from_json(interval_to_json(e));
  CHECK(back.point == e.point);
  CHECK(back.lower == e.lower);
  CHECK(back.upper == e.upper);
  CHECK(back.level == e.level);
  CHECK(back.method == e.method);
  CHECK(back.grid_step == e.grid_step);
  CHECK(back.mc_draws == e.mc_draws);
  CHECK(back.non_interval_flag == e.non_interval_flag);

  TestResult t;
  t.statistic = 1.25;
  t.p_value = 0.04;
  t.hypothesis = "C = 0.25";
  t.p_equal = 0.5;
  t.p_sigma = 0.9;
  const auto tb = test_from_json(test_to_json(t));
  CHECK(tb.statistic == t.statistic);
  CHECK(tb.p_value == t.p_value);
  CHECK(tb.hypothesis == t.hypothesis);
  CHECK(tb.p_equal == t.p_equal);
  CHECK(tb.p_distinct == t.p_distinct);
  CHECK(tb.p_sigma == t.p_sigma);
}
