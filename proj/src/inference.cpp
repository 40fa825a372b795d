#include "evdep/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evdep/measures.hpp"
#include "evdep/normal.hpp"
#include "evdep/rng.hpp"

namespace evdep {

double fisher(double z) {
  if (!(std::fabs(z) < 1.0))
    throw std::domain_error("fisher: argument must lie in (-1, 1)");
  return std::atanh(z);
}

double fisher_inv(double z) { return std::tanh(z); }

double AsymptoticLaw::cdf(double t) const {
  if (const auto* g = std::get_if<GaussianLaw>(&dist)) {
    const double sd = std::sqrt(g->variance);
    if (sd == 0.0) return t < 0.0 ? 0.0 : 1.0;
    return norm_cdf(t / sd);
  }
  if (const auto* mix = std::get_if<HalfNormalMixLaw>(&dist)) {
    const double scale = t >= 0.0 ? mix->scale_plus : mix->scale_minus;
    return norm_cdf(t / (mix->base_sd * scale));
  }
  const auto& draws = *std::get<MonteCarloLaw>(dist).draws;
  const auto it = std::upper_bound(draws.begin(), draws.end(), t);
  return static_cast<double>(it - draws.begin()) /
         static_cast<double>(draws.size());
}

double AsymptoticLaw::two_sided_p(double t) const {
  const double f = cdf(t);
  return std::min(1.0, 2.0 * std::min(f, 1.0 - f));
}

AsymptoticLaw AsymptoticLaw::scaled(double factor) const {
  if (!(factor > 0.0))
    throw std::domain_error("AsymptoticLaw::scaled: factor must be positive");
  AsymptoticLaw out = *this;
  if (auto* g = std::get_if<GaussianLaw>(&out.dist)) {
    g->variance *= factor * factor;
  } else if (auto* mix = std::get_if<HalfNormalMixLaw>(&out.dist)) {
    mix->base_sd *= factor;
  } else {
    const auto& src = *std::get<MonteCarloLaw>(dist).draws;
    auto scaled_draws = std::make_shared<std::vector<double>>(src);
    for (double& v : *scaled_draws) v *= factor;
    out.dist = MonteCarloLaw{std::move(scaled_draws)};
  }
  return out;
}

namespace {

double quad_form(const Eigen::RowVector3d& j, const Eigen::Matrix3d& omega) {
  return (j * omega * j.transpose())(0, 0);
}

double phi_at(const MomentEstimates& m) {
  return m.sigma_hat / std::sqrt(m.p_hat * (1 - m.p_hat) * m.q_hat *
                                 (1 - m.q_hat));
}

double cole_at(const MomentEstimates& m) {
  return m.sigma_hat >= 0.0 ? m.sigma_hat / m.m_plus
                            : m.sigma_hat / m.m_minus;
}

double yule_q_at(const MomentEstimates& m) {
  const JointBinaryDistribution d = m.to_distribution();
  return (d.cell11() * d.cell00() - d.cell10() * d.cell01()) /
         (d.cell11() * d.cell00() + d.cell10() * d.cell01());
}

// Variances of the two gaussian Cole branches on the (C_hat - C) scale.
void cole_branch_variances(const JacobianSet& js, const Eigen::Matrix3d& omega,
                           std::uint64_t n, double* var_pos, double* var_neg) {
  const Eigen::Matrix2d cov_pos = js.j_h_plus * omega * js.j_h_plus.transpose();
  const Eigen::Matrix2d cov_neg =
      js.j_h_minus * omega * js.j_h_minus.transpose();
  *var_pos = (js.lambda_plus * cov_pos * js.lambda_plus.transpose())(0, 0) /
             static_cast<double>(n);
  *var_neg = (js.lambda_minus * cov_neg * js.lambda_minus.transpose())(0, 0) /
             static_cast<double>(n);
}

// Draws of the degenerate-marginal limit functionals, one Z stream feeding
// both the p = q and the p = 1 - q variants; scaled to (C_hat - C).
void simulate_degenerate_draws(const JacobianSet& js,
                               const LongRunCovariance& lr, std::uint64_t n,
                               std::size_t n_mc, std::uint64_t seed,
                               std::vector<double>* pos,
                               std::vector<double>* neg) {
  const Eigen::Matrix3d root = lr.sqrt_psd();
  const Eigen::Matrix<double, 4, 3> map = js.j_f * root;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  pos->resize(n_mc);
  neg->resize(n_mc);
  NormalStream normals(seed);
  for (std::size_t i = 0; i < n_mc; ++i) {
    Eigen::Vector3d z;
    z << normals.next(), normals.next(), normals.next();
    const Eigen::Vector4d v = map * z;
    const double minp = (v[0] - v[2]) -
                        (v[0] > v[1] ? v[0] - v[1] : 0.0);
    const double minm = v[2] - (v[0] > -v[1] ? v[0] + v[1] : 0.0);
    (*pos)[i] = (js.lambda_plus[0] * v[3] + js.lambda_plus[1] * minp) *
                inv_sqrt_n;
    (*neg)[i] = (js.lambda_minus[0] * v[3] + js.lambda_minus[1] * minm) *
                inv_sqrt_n;
  }
  std::sort(pos->begin(), pos->end());
  std::sort(neg->begin(), neg->end());
}

}  // namespace

AsymptoticLaw law_q(const MomentEstimates& m, const LongRunCovariance& lr) {
  const JacobianSet js = jacobians(m);
  return {GaussianLaw{quad_form(js.j_g, lr.omega) / static_cast<double>(m.n)},
          m.n};
}

AsymptoticLaw law_zq(const MomentEstimates& m, const LongRunCovariance& lr) {
  const JacobianSet js = jacobians(m);
  return {GaussianLaw{quad_form(js.j_h, lr.omega) / static_cast<double>(m.n)},
          m.n};
}

AsymptoticLaw law_phi(const MomentEstimates& m, const LongRunCovariance& lr) {
  const JacobianSet js = jacobians(m);
  return {GaussianLaw{quad_form(js.j_l, lr.omega) / static_cast<double>(m.n)},
          m.n};
}

AsymptoticLaw law_zphi(const MomentEstimates& m, const LongRunCovariance& lr) {
  const double ph = phi_at(m);
  const double gamma = 1.0 / (1.0 - ph * ph);
  return law_phi(m, lr).scaled(gamma);
}

AsymptoticLaw law_c(const MomentEstimates& m, const LongRunCovariance& lr,
                    SigmaSign sign_hint, MarginalCase marginal_hint,
                    std::size_t n_mc, std::uint64_t seed) {
  const JacobianSet js = jacobians(m);
  const auto n = m.n;

  SigmaSign sign = sign_hint;
  if (sign == SigmaSign::auto_detect) {
    sign = m.sigma_hat == 0.0  ? SigmaSign::zero
           : m.sigma_hat > 0.0 ? SigmaSign::positive
                               : SigmaSign::negative;
  }
  MarginalCase marginal = marginal_hint;
  if (marginal == MarginalCase::auto_detect) {
    if (std::fabs(m.p_hat - m.q_hat) <= 1e-12)
      marginal = MarginalCase::equal;
    else if (std::fabs(m.p_hat + m.q_hat - 1.0) <= 1e-12)
      marginal = MarginalCase::complementary;
    else
      marginal = MarginalCase::distinct;
  }

  if (sign == SigmaSign::zero) {
    const double base_sd =
        std::sqrt((js.delta.transpose() * lr.omega * js.delta)(0, 0) /
                  static_cast<double>(n));
    return {HalfNormalMixLaw{base_sd, 1.0 / m.m_plus, 1.0 / m.m_minus}, n};
  }

  double var_pos, var_neg;
  cole_branch_variances(js, lr.omega, n, &var_pos, &var_neg);

  const bool degenerate =
      (sign == SigmaSign::positive && marginal == MarginalCase::equal) ||
      (sign == SigmaSign::negative && marginal == MarginalCase::complementary);
  if (!degenerate) {
    return {GaussianLaw{sign == SigmaSign::positive ? var_pos : var_neg}, n};
  }

  std::vector<double> pos, neg;
  simulate_degenerate_draws(js, lr, n, n_mc, seed, &pos, &neg);
  auto draws = std::make_shared<std::vector<double>>(
      sign == SigmaSign::positive ? std::move(pos) : std::move(neg));
  return {MonteCarloLaw{std::move(draws)}, n};
}

TestResult test_sigma_sign(const MomentEstimates& m,
                           const LongRunCovariance& lr, SigmaDirection dir) {
  const JacobianSet js = jacobians(m);
  const double sd =
      std::sqrt((js.delta.transpose() * lr.omega * js.delta)(0, 0) /
                static_cast<double>(m.n));
  const double z = m.sigma_hat / sd;
  TestResult out;
  out.statistic = z;
  switch (dir) {
    case SigmaDirection::nonnegative:
      out.hypothesis = "sigma >= 0";
      out.p_value = norm_cdf(z);
      break;
    case SigmaDirection::nonpositive:
      out.hypothesis = "sigma <= 0";
      out.p_value = norm_sf(z);
      break;
    case SigmaDirection::zero:
      out.hypothesis = "sigma = 0";
      out.p_value = std::min(1.0, 2.0 * norm_sf(std::fabs(z)));
      break;
  }
  return out;
}

TestResult test_pq(const MomentEstimates& m, const LongRunCovariance& lr,
                   MarginalHypothesis variant) {
  const Eigen::Matrix3d& om = lr.omega;
  TestResult out;
  double contrast, var;
  if (variant == MarginalHypothesis::equal) {
    contrast = m.p_hat - m.q_hat;
    var = (om(0, 0) - 2.0 * om(0, 1) + om(1, 1)) / static_cast<double>(m.n);
    out.hypothesis = "p = q";
  } else {
    contrast = m.p_hat + m.q_hat - 1.0;
    var = (om(0, 0) + 2.0 * om(0, 1) + om(1, 1)) / static_cast<double>(m.n);
    out.hypothesis = "p = 1 - q";
  }
  if (var <= 0.0) {
    // A zero contrast variance can only happen on a degenerate sample;
    // the contrast itself then decides.
    out.statistic = contrast == 0.0 ? 0.0 : std::copysign(1e300, contrast);
    out.p_value = contrast == 0.0 ? 1.0 : 0.0;
    return out;
  }
  out.statistic = contrast / std::sqrt(var);
  out.p_value = std::min(1.0, 2.0 * norm_sf(std::fabs(out.statistic)));
  return out;
}

std::string to_string(Method method) {
  return method == Method::standard ? "standard" : "fisher";
}

std::string to_string(CiStrategy strategy) {
  switch (strategy) {
    case CiStrategy::full: return "full";
    case CiStrategy::no_sigma_test: return "no-sigma-test";
    case CiStrategy::no_pq_test: return "no-pq-test";
    case CiStrategy::basic: return "basic";
  }
  return "?";
}

ColeTestContext::ColeTestContext(const MomentEstimates& m,
                                 const LongRunCovariance& lr, Method method,
                                 std::size_t n_mc, std::uint64_t seed)
    : method_(method), n_(m.n), n_mc_(n_mc) {
  const JacobianSet js = jacobians(m);
  c_hat_ = cole_at(m);
  if (method_ == Method::fisher) {
    z_hat_ = fisher(c_hat_);
    gamma_ = 1.0 / (1.0 - c_hat_ * c_hat_);
  }

  double var_pos, var_neg;
  cole_branch_variances(js, lr.omega, n_, &var_pos, &var_neg);
  sd_pos_ = std::sqrt(var_pos);
  sd_neg_ = std::sqrt(var_neg);

  sd_sigma_ = std::sqrt((js.delta.transpose() * lr.omega * js.delta)(0, 0) /
                        static_cast<double>(n_));
  z_sigma_ = m.sigma_hat / sd_sigma_;
  m_plus_ = m.m_plus;
  m_minus_ = m.m_minus;

  p_pq_equal_ = test_pq(m, lr, MarginalHypothesis::equal).p_value;
  p_pq_complement_ = test_pq(m, lr, MarginalHypothesis::complement).p_value;

  simulate_degenerate_draws(js, lr, n_, n_mc, seed, &draws_pos_, &draws_neg_);
}

double ColeTestContext::deviation(double c0) const {
  if (method_ == Method::fisher) return z_hat_ - fisher(c0);
  return c_hat_ - c0;
}

namespace {
double empirical_two_sided(const std::vector<double>& sorted, double t) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
  const double f = static_cast<double>(it - sorted.begin()) /
                   static_cast<double>(sorted.size());
  return std::min(1.0, 2.0 * std::min(f, 1.0 - f));
}
}  // namespace

ColeTestContext::Components ColeTestContext::components(double c0) const {
  if (!(c0 > -1.0 && c0 < 1.0) || c0 == 0.0)
    throw std::domain_error("components: need c0 in (-1,0) or (0,1)");
  Components comp{};
  const double t = deviation(c0);
  // On the Fisher scale every branch law is stretched by gamma.
  const double scale = method_ == Method::fisher ? gamma_ : 1.0;
  if (c0 > 0.0) {
    comp.p_distinct =
        std::min(1.0, 2.0 * norm_sf(std::fabs(t) / (scale * sd_pos_)));
    comp.p_equal = empirical_two_sided(draws_pos_, t / scale);
    comp.p_marginal = p_pq_equal_;
    comp.p_sigma = norm_cdf(z_sigma_);  // H: sigma >= 0
  } else {
    comp.p_distinct =
        std::min(1.0, 2.0 * norm_sf(std::fabs(t) / (scale * sd_neg_)));
    comp.p_equal = empirical_two_sided(draws_neg_, t / scale);
    comp.p_marginal = p_pq_complement_;
    comp.p_sigma = norm_sf(z_sigma_);  // H: sigma <= 0
  }
  return comp;
}

double ColeTestContext::combine(CiStrategy strategy, const Components& c) {
  const auto clip = [](double v) { return std::min(1.0, v); };
  switch (strategy) {
    case CiStrategy::full:
      return clip(2.0 * std::min(std::max(clip(2.0 * std::min(c.p_equal,
                                                              c.p_marginal)),
                                          c.p_distinct),
                                 c.p_sigma));
    case CiStrategy::no_sigma_test:
      return clip(std::max(clip(2.0 * std::min(c.p_equal, c.p_marginal)),
                           c.p_distinct));
    case CiStrategy::no_pq_test:
      return clip(2.0 * std::min(std::max(c.p_equal, c.p_distinct), c.p_sigma));
    case CiStrategy::basic:
      return clip(std::max(c.p_equal, c.p_distinct));
  }
  return 1.0;
}

double ColeTestContext::p_value(double c0, CiStrategy strategy) const {
  if (!(c0 > -1.0 && c0 < 1.0))
    throw std::domain_error("test of C = c0 needs c0 in (-1, 1)");
  if (c0 == 0.0) {
    // H: C = 0 coincides with sigma = 0; the half-normal-mix test is
    // Bonferroni-combined with the direct two-sided sigma test.
    const double t = deviation(0.0) / (method_ == Method::fisher ? gamma_ : 1.0);
    const double z = t / sd_sigma_;
    const double f = norm_cdf(z * (t >= 0.0 ? m_plus_ : m_minus_));
    const double p_mix = std::min(1.0, 2.0 * std::min(f, 1.0 - f));
    const double p_sig2 = std::min(1.0, 2.0 * norm_sf(std::fabs(z_sigma_)));
    if (strategy == CiStrategy::full || strategy == CiStrategy::no_pq_test)
      return std::min(1.0, 2.0 * std::min(p_mix, p_sig2));
    return p_mix;
  }
  return combine(strategy, components(c0));
}

TestResult test_c(const MomentEstimates& m, const LongRunCovariance& lr,
                  double c0, Method method, CiStrategy strategy,
                  std::size_t n_mc, std::uint64_t seed) {
  if (!(c0 > -1.0 && c0 < 1.0))
    throw std::domain_error("test_c: need c0 in (-1, 1)");
  ColeTestContext ctx(m, lr, method, n_mc, seed);
  TestResult out;
  out.hypothesis = "C = " + std::to_string(c0);
  out.statistic = method == Method::fisher ? fisher(ctx.point()) - fisher(c0)
                                           : ctx.point() - c0;
  out.p_value = ctx.p_value(c0, strategy);
  if (c0 != 0.0) {
    const auto comp = ctx.components(c0);
    out.p_equal = comp.p_equal;
    out.p_distinct = comp.p_distinct;
    out.p_marginal = comp.p_marginal;
    out.p_sigma = comp.p_sigma;
  }
  return out;
}

IntervalEstimate ci(CiMeasure measure, const MomentEstimates& m,
                    const LongRunCovariance& lr, double level, Method method) {
  if (!(level > 0.0 && level < 1.0))
    throw std::domain_error("ci: level must lie in (0, 1)");
  const double z = norm_quantile(0.5 + level / 2.0);
  IntervalEstimate out;
  out.level = level;
  out.method = method;
  out.construction = IntervalEstimate::Construction::closed_form;
  out.point = measure == CiMeasure::yule_q ? yule_q_at(m) : phi_at(m);
  if (method == Method::standard) {
    const AsymptoticLaw law =
        measure == CiMeasure::yule_q ? law_q(m, lr) : law_phi(m, lr);
    const double sd = std::sqrt(std::get<GaussianLaw>(law.dist).variance);
    out.lower = out.point - z * sd;
    out.upper = out.point + z * sd;
  } else {
    const AsymptoticLaw law =
        measure == CiMeasure::yule_q ? law_zq(m, lr) : law_zphi(m, lr);
    const double sd = std::sqrt(std::get<GaussianLaw>(law.dist).variance);
    const double center = fisher(out.point);
    out.lower = fisher_inv(center - z * sd);
    out.upper = fisher_inv(center + z * sd);
  }
  return out;
}

std::vector<IntervalEstimate> ci_c_strategies(
    const MomentEstimates& m, const LongRunCovariance& lr, double level,
    Method method, double grid_step, const std::vector<CiStrategy>& strategies,
    std::size_t n_mc, std::uint64_t seed) {
  if (!(level > 0.0 && level < 1.0))
    throw std::domain_error("ci_c: level must lie in (0, 1)");
  if (!(grid_step > 0.0 && grid_step < 1.0))
    throw std::domain_error("ci_c: grid_step must lie in (0, 1)");

  const ColeTestContext ctx(m, lr, method, n_mc, seed);
  const double alpha = 1.0 - level;
  const long half = std::lround(1.0 / grid_step);

  struct Acc {
    long first = -1, last = -1, count = 0;
  };
  std::vector<Acc> acc(strategies.size());

  for (long k = -half + 1; k <= half - 1; ++k) {
    const double c0 = static_cast<double>(k) * grid_step;
    ColeTestContext::Components comp{};
    if (k != 0) comp = ctx.components(c0);
    for (std::size_t si = 0; si < strategies.size(); ++si) {
      const double pv = k == 0 ? ctx.p_value(0.0, strategies[si])
                               : ColeTestContext::combine(strategies[si], comp);
      if (pv > alpha) {
        if (acc[si].first == -1) acc[si].first = k;
        acc[si].last = k;
        acc[si].count++;
      }
    }
  }

  std::vector<IntervalEstimate> out(strategies.size());
  for (std::size_t si = 0; si < strategies.size(); ++si) {
    IntervalEstimate& e = out[si];
    e.point = ctx.point();
    e.level = level;
    e.method = method;
    e.construction = IntervalEstimate::Construction::grid_inversion;
    e.grid_step = grid_step;
    e.mc_draws = n_mc;
    if (acc[si].count == 0) {
      e.lower = e.upper = ctx.point();
      e.empty_acceptance = true;
    } else {
      e.lower = static_cast<double>(acc[si].first) * grid_step;
      e.upper = static_cast<double>(acc[si].last) * grid_step;
      e.non_interval_flag =
          (acc[si].last - acc[si].first + 1) != acc[si].count;
    }
  }
  return out;
}

IntervalEstimate ci_c(const MomentEstimates& m, const LongRunCovariance& lr,
                      double level, Method method, double grid_step,
                      CiStrategy strategy, std::size_t n_mc,
                      std::uint64_t seed) {
  return ci_c_strategies(m, lr, level, method, grid_step, {strategy}, n_mc,
                         seed)[0];
}

}  // namespace evdep
