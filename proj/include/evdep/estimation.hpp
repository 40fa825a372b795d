#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "evdep/core.hpp"

namespace evdep {

enum class SampleMode { iid, time_series };

// Ordered sequence of paired binary observations. The mode is a user
// assertion about the dependence structure (it selects which long-run
// covariance estimator is legal); it is not checked against the data.
struct PairedBinarySample {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> y;
  SampleMode mode = SampleMode::iid;

  std::size_t n() const { return x.size(); }
  ContingencyTable counts() const;
};

// Plug-in moments of a sample or a table, with the derived quantities used
// throughout inference. Boundary flags mark violations of the interior
// assumption; they are informational here and turn into errors only where
// an operation genuinely needs the interior.
struct MomentEstimates {
  double p_hat = 0, q_hat = 0, r_hat = 0;
  double sigma_hat = 0;   // r - p q
  double m_plus = 0;      // min(p, q) - p q
  double m_minus = 0;     // p q - max(0, p + q - 1)
  std::uint64_t n = 0;

  bool p_degenerate = false;  // p_hat in {0, 1}
  bool q_degenerate = false;
  bool r_at_upper = false;    // r_hat == min(p_hat, q_hat)
  bool r_at_lower = false;

  bool any_boundary() const {
    return p_degenerate || q_degenerate || r_at_upper || r_at_lower;
  }

  // Population moments (no estimation error); used to seed simulations and
  // asymptotic-law overlays with the true triple.
  static MomentEstimates from_population(const JointBinaryDistribution& d,
                                         std::uint64_t n);

  JointBinaryDistribution to_distribution() const;
};

MomentEstimates estimate_moments(const PairedBinarySample& s);
MomentEstimates moments_from_table(const ContingencyTable& t);

// Long-run covariance of W = (X, Y, XY).
struct LongRunCovariance {
  enum class Source { iid_plugin, hac };

  Eigen::Matrix3d omega = Eigen::Matrix3d::Zero();
  Source source = Source::iid_plugin;
  std::optional<long> bandwidth;  // set for hac

  // Symmetric PSD square root; throws std::runtime_error when an
  // eigenvalue falls below -1e-10 (values within tolerance are clipped).
  Eigen::Matrix3d sqrt_psd() const;
};

// Closed-form multinomial covariance of W at the plug-in moments. Throws
// std::domain_error when boundary flags are set.
LongRunCovariance omega_iid(const MomentEstimates& m);

// Newey-West estimator with Bartlett weights 1 - j/(m_n + 1) over lags
// 1..m_n of the centered W. Requires time_series mode and 0 <= m_n < n.
LongRunCovariance omega_hac(const PairedBinarySample& s, long m_n);

// floor(1.3 n^{1/5}), a bandwidth within the o(n^{1/4}) growth condition.
long default_hac_bandwidth(std::uint64_t n);

// All Jacobians of the delta-method maps, evaluated at the plug-in
// moments:
//   j_g      d/d(p,q,r) of Yule's Q
//   j_l      d/d(p,q,r) of phi
//   j_h      d/d(p,q,r) of arctanh(Q) = log(OR)/2
//   j_h_plus  rows: sigma and m_plus (indicator entries open at p = q)
//   j_h_minus rows: sigma and m_minus
//   j_f      rows: p, q, p q, sigma
//   delta    gradient of sigma
//   lambda_plus/minus  (1/m, -sigma/m^2) row used by the Cole laws
struct JacobianSet {
  Eigen::RowVector3d j_g;
  Eigen::RowVector3d j_l;
  Eigen::RowVector3d j_h;
  Eigen::Matrix<double, 2, 3> j_h_plus;
  Eigen::Matrix<double, 2, 3> j_h_minus;
  Eigen::Matrix<double, 4, 3> j_f;
  Eigen::RowVector2d lambda_plus;
  Eigen::RowVector2d lambda_minus;
  Eigen::Vector3d delta;
};

// Throws std::domain_error on boundary flags and std::runtime_error when
// the j_g denominator degenerates (impossible in-domain, guarded anyway).
JacobianSet jacobians(const MomentEstimates& m);

}  // namespace evdep
