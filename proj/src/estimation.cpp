#include "evdep/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace evdep {

ContingencyTable PairedBinarySample::counts() const {
  if (x.size() != y.size() || x.empty())
    throw std::domain_error("PairedBinarySample: need n >= 1 paired values");
  std::uint64_t c[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1 || y[i] > 1)
      throw std::domain_error("PairedBinarySample: values must be 0 or 1");
    c[(1 - x[i]) * 2 + (1 - y[i])]++;
  }
  return ContingencyTable(c[0], c[1], c[2], c[3]);
}

MomentEstimates moments_from_table(const ContingencyTable& t) {
  MomentEstimates m;
  const std::uint64_t n = t.n();
  m.n = n;
  const auto dn = static_cast<double>(n);
  // Integer numerators; single division at the end keeps results bit-stable.
  m.p_hat = static_cast<double>(t.row_a()) / dn;
  m.q_hat = static_cast<double>(t.col_b()) / dn;
  m.r_hat = static_cast<double>(t.n11) / dn;
  m.sigma_hat = m.r_hat - m.p_hat * m.q_hat;
  m.m_plus = std::min(m.p_hat, m.q_hat) - m.p_hat * m.q_hat;
  m.m_minus = m.p_hat * m.q_hat - std::max(0.0, m.p_hat + m.q_hat - 1.0);
  m.p_degenerate = (t.row_a() == 0 || t.row_a() == n);
  m.q_degenerate = (t.col_b() == 0 || t.col_b() == n);
  m.r_at_upper = (t.n10 == 0 || t.n01 == 0);
  m.r_at_lower = (t.n11 == 0 || t.n00 == 0);
  return m;
}

MomentEstimates estimate_moments(const PairedBinarySample& s) {
  return moments_from_table(s.counts());
}

MomentEstimates MomentEstimates::from_population(
    const JointBinaryDistribution& d, std::uint64_t n) {
  MomentEstimates m;
  m.n = n;
  m.p_hat = d.p();
  m.q_hat = d.q();
  m.r_hat = d.r();
  m.sigma_hat = m.r_hat - m.p_hat * m.q_hat;
  m.m_plus = std::min(m.p_hat, m.q_hat) - m.p_hat * m.q_hat;
  m.m_minus = m.p_hat * m.q_hat - std::max(0.0, m.p_hat + m.q_hat - 1.0);
  m.r_at_upper = (d.r() >= std::min(d.p(), d.q()));
  m.r_at_lower = (d.r() <= std::max(0.0, d.p() + d.q() - 1.0));
  return m;
}

JointBinaryDistribution MomentEstimates::to_distribution() const {
  return {p_hat, q_hat, r_hat};
}

Eigen::Matrix3d LongRunCovariance::sqrt_psd() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(omega);
  Eigen::Vector3d ev = es.eigenvalues();
  for (int i = 0; i < 3; ++i) {
    if (ev[i] < -1e-10)
      throw std::runtime_error("LongRunCovariance: matrix is not PSD");
    ev[i] = std::max(0.0, ev[i]);
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

LongRunCovariance omega_iid(const MomentEstimates& m) {
  if (m.any_boundary())
    throw std::domain_error("omega_iid: boundary-flagged moments");
  const double p = m.p_hat, q = m.q_hat, r = m.r_hat;
  LongRunCovariance lr;
  lr.source = LongRunCovariance::Source::iid_plugin;
  lr.omega << p * (1 - p), r - p * q, r * (1 - p),
              r - p * q, q * (1 - q), r * (1 - q),
              r * (1 - p), r * (1 - q), r * (1 - r);
  return lr;
}

LongRunCovariance omega_hac(const PairedBinarySample& s, long m_n) {
  if (s.mode != SampleMode::time_series)
    throw std::domain_error("omega_hac: sample is not in time_series mode");
  const long n = static_cast<long>(s.n());
  if (m_n < 0 || m_n >= n)
    throw std::domain_error("omega_hac: need 0 <= bandwidth < n");

  const MomentEstimates m = estimate_moments(s);
  const double mean[3] = {m.p_hat, m.q_hat, m.r_hat};

  auto wbar = [&](long i, double* out) {
    out[0] = s.x[i] - mean[0];
    out[1] = s.y[i] - mean[1];
    out[2] = static_cast<double>(s.x[i] & s.y[i]) - mean[2];
  };

  Eigen::Matrix3d acc = Eigen::Matrix3d::Zero();
  double wi[3];
  for (long i = 0; i < n; ++i) {
    wbar(i, wi);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) acc(a, b) += wi[a] * wi[b];
  }
  double wj[3];
  for (long j = 1; j <= m_n; ++j) {
    const double weight = 1.0 - static_cast<double>(j) / (m_n + 1.0);
    Eigen::Matrix3d lag = Eigen::Matrix3d::Zero();
    for (long i = j; i < n; ++i) {
      wbar(i, wi);
      wbar(i - j, wj);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) lag(a, b) += wi[a] * wj[b];
    }
    acc += weight * (lag + lag.transpose());
  }

  LongRunCovariance lr;
  lr.source = LongRunCovariance::Source::hac;
  lr.bandwidth = m_n;
  lr.omega = acc / static_cast<double>(n);
  lr.omega = 0.5 * (lr.omega + lr.omega.transpose().eval());
  return lr;
}

long default_hac_bandwidth(std::uint64_t n) {
  return static_cast<long>(std::floor(1.3 * std::pow(static_cast<double>(n), 0.2)));
}

JacobianSet jacobians(const MomentEstimates& m) {
  if (m.any_boundary())
    throw std::domain_error("jacobians: boundary-flagged moments");
  const double p = m.p_hat, q = m.q_hat, r = m.r_hat;
  JacobianSet js;

  const double den = p * (q - 2 * r) + r * (1 - 2 * q + 2 * r);
  if (std::fabs(den) < 1e-14)
    throw std::runtime_error("jacobians: degenerate denominator for the Q map");
  const double pref = 2.0 / (den * den);
  js.j_g << pref * (q - 1) * r * (q - r),
            pref * (p - 1) * r * (p - r),
            -pref * (p * p * q + p * q * (-1 + q - 2 * r) + r * r);

  const double vprod = p * (1 - p) * q * (1 - q);
  const double s = std::sqrt(vprod);
  const double corr = (p * q - r) / (2 * vprod);
  js.j_l << (-q + corr * q * (1 - q) * (1 - 2 * p)) / s,
            (-p + corr * p * (1 - p) * (1 - 2 * q)) / s,
            1.0 / s;

  const double d00 = 1 - p - q + r;
  const double c1 = -0.5 / ((p - r) * (q - r));
  const double c2 = -0.5 / d00;
  js.j_h << c1 * (q - r) + c2,
            c1 * (p - r) + c2,
            c1 * (2 * r - p - q) + c2 * (-(1 - p - q + 2 * r) / r);

  js.j_f << 1, 0, 0,
            0, 1, 0,
            q, p, 0,
            -q, -p, 1;
  js.delta << -q, -p, 1;

  const double ind_pq = (p < q) ? 1.0 : 0.0;
  const double ind_qp = (q < p) ? 1.0 : 0.0;
  js.j_h_plus << -q, -p, 1,
                 ind_pq - q, ind_qp - p, 0;
  const double ind_sum = (p + q > 1) ? 1.0 : 0.0;
  js.j_h_minus << -q, -p, 1,
                  q - ind_sum, p - ind_sum, 0;

  js.lambda_plus << 1.0 / m.m_plus, -m.sigma_hat / (m.m_plus * m.m_plus);
  js.lambda_minus << 1.0 / m.m_minus, -m.sigma_hat / (m.m_minus * m.m_minus);
  return js;
}

}  // namespace evdep
