#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "evdep/estimation.hpp"

namespace evdep {

// Draw count used when a limit law has no closed form and its quantiles
// are simulated from the stated limit functional.
inline constexpr std::size_t kDefaultMonteCarloDraws = 100000;

// Fisher transformation arctanh and its inverse. fisher throws
// std::domain_error at |z| >= 1.
double fisher(double z);
double fisher_inv(double z);

struct GaussianLaw {
  double variance;
};

// Two glued half-normals: the limit of the Cole estimator at sigma = 0.
// base_sd is the standard deviation of sigma_hat; the positive branch is
// stretched by scale_plus = 1/m_plus, the negative one by 1/m_minus.
struct HalfNormalMixLaw {
  double base_sd;
  double scale_plus;
  double scale_minus;
};

// Empirical law from simulated limit draws, already on the scale of
// (estimate - truth); kept sorted.
struct MonteCarloLaw {
  std::shared_ptr<const std::vector<double>> draws;
};

// Distribution of (estimator - truth) for a given sample size.
struct AsymptoticLaw {
  std::variant<GaussianLaw, HalfNormalMixLaw, MonteCarloLaw> dist;
  std::uint64_t n = 0;

  double cdf(double t) const;
  // Equal-tail two-sided p-value 2 min(F(t), 1 - F(t)).
  double two_sided_p(double t) const;
  // Law of factor * T (factor > 0); used for Fisher-transformed variants.
  AsymptoticLaw scaled(double factor) const;
};

enum class SigmaSign { auto_detect, zero, positive, negative };
enum class MarginalCase { auto_detect, distinct, equal, complementary };

AsymptoticLaw law_q(const MomentEstimates& m, const LongRunCovariance& lr);
AsymptoticLaw law_zq(const MomentEstimates& m, const LongRunCovariance& lr);
AsymptoticLaw law_phi(const MomentEstimates& m, const LongRunCovariance& lr);
AsymptoticLaw law_zphi(const MomentEstimates& m, const LongRunCovariance& lr);

// The five-case law of the Cole estimator. sign_hint/marginal_hint pick
// the case; auto_detect resolves from the moments (sigma_hat's sign, and
// |p-q| or |p+q-1| below 1e-12 for the degenerate marginal cases). The
// two degenerate cases are simulated with n_mc draws from the stated
// limit functional; identical seeds give identical draws.
AsymptoticLaw law_c(const MomentEstimates& m, const LongRunCovariance& lr,
                    SigmaSign sign_hint = SigmaSign::auto_detect,
                    MarginalCase marginal_hint = MarginalCase::auto_detect,
                    std::size_t n_mc = kDefaultMonteCarloDraws,
                    std::uint64_t seed = 1);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::string hypothesis;
  // Component p-values of the combined Cole test, when applicable.
  std::optional<double> p_equal;
  std::optional<double> p_distinct;
  std::optional<double> p_marginal;
  std::optional<double> p_sigma;
};

enum class SigmaDirection { nonnegative, nonpositive, zero };
TestResult test_sigma_sign(const MomentEstimates& m,
                           const LongRunCovariance& lr, SigmaDirection dir);

enum class MarginalHypothesis { equal, complement };
TestResult test_pq(const MomentEstimates& m, const LongRunCovariance& lr,
                   MarginalHypothesis variant);

enum class Method { standard, fisher };
enum class CiStrategy { full, no_sigma_test, no_pq_test, basic };

std::string to_string(Method method);
std::string to_string(CiStrategy strategy);

// Shared state for testing H: C = c across many c values: component
// p-values are assembled from plug-in variances and one set of Monte
// Carlo limit draws, so a whole grid sweep costs one simulation.
class ColeTestContext {
 public:
  ColeTestContext(const MomentEstimates& m, const LongRunCovariance& lr,
                  Method method, std::size_t n_mc, std::uint64_t seed);

  struct Components {
    double p_equal;
    double p_distinct;
    double p_marginal;
    double p_sigma;
  };

  // Components of the combined test of H: C = c0 (c0 != 0).
  Components components(double c0) const;
  // Combined p-value for any c0 in (-1, 1), including the Bonferroni
  // construction at c0 = 0.
  double p_value(double c0, CiStrategy strategy) const;
  // Combination formula applied to precomputed components.
  static double combine(CiStrategy strategy, const Components& c);

  double point() const { return c_hat_; }
  std::size_t mc_draws() const { return n_mc_; }

 private:
  double deviation(double c0) const;  // test scale: C or arctanh C

  Method method_;
  std::uint64_t n_;
  std::size_t n_mc_;
  double c_hat_ = 0, z_hat_ = 0, gamma_ = 1;
  double sd_pos_ = 0, sd_neg_ = 0;       // gaussian branches, (C_hat - C) scale
  double sd_sigma_ = 0, z_sigma_ = 0;
  double m_plus_ = 0, m_minus_ = 0;
  double p_pq_equal_ = 1, p_pq_complement_ = 1;
  std::vector<double> draws_pos_, draws_neg_;  // sorted, (C_hat - C) scale
};

TestResult test_c(const MomentEstimates& m, const LongRunCovariance& lr,
                  double c0, Method method,
                  CiStrategy strategy = CiStrategy::full,
                  std::size_t n_mc = kDefaultMonteCarloDraws,
                  std::uint64_t seed = 1);

enum class CiMeasure { yule_q, phi };

struct IntervalEstimate {
  enum class Construction { closed_form, grid_inversion };

  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;
  Method method = Method::standard;
  Construction construction = Construction::closed_form;
  double grid_step = 0.0;      // grid_inversion only
  std::size_t mc_draws = 0;    // grid_inversion only
  // Some grid point strictly inside [lower, upper] was rejected; the
  // reported interval is the convex hull of the acceptance set.
  bool non_interval_flag = false;
  // No grid point was accepted; the interval degenerates to the point.
  bool empty_acceptance = false;

  double length() const { return upper - lower; }
  bool contains(double v) const { return lower <= v && v <= upper; }
};

// Wald interval for Q or phi: closed form on the raw scale (standard) or
// tanh-mapped from the arctanh scale (fisher). Standard endpoints are the
// raw Wald limits and may fall outside [-1, 1].
IntervalEstimate ci(CiMeasure measure, const MomentEstimates& m,
                    const LongRunCovariance& lr, double level, Method method);

// Confidence set for C from inverted tests over the grid
// c in {-1 + step, ..., 1 - step}: the convex hull of all non-rejected
// values, with non-convexity flagged rather than hidden.
IntervalEstimate ci_c(const MomentEstimates& m, const LongRunCovariance& lr,
                      double level, Method method, double grid_step = 0.001,
                      CiStrategy strategy = CiStrategy::full,
                      std::size_t n_mc = kDefaultMonteCarloDraws,
                      std::uint64_t seed = 1);

// One sweep, several combination strategies; element i belongs to
// strategies[i].
std::vector<IntervalEstimate> ci_c_strategies(
    const MomentEstimates& m, const LongRunCovariance& lr, double level,
    Method method, double grid_step, const std::vector<CiStrategy>& strategies,
    std::size_t n_mc = kDefaultMonteCarloDraws, std::uint64_t seed = 1);

}  // namespace evdep
