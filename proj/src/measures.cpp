#include "evdep/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace evdep {

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::covariance: return "covariance";
    case MeasureKind::phi: return "phi";
    case MeasureKind::cole: return "cole";
    case MeasureKind::yule_q: return "yule_q";
    case MeasureKind::yule_y: return "yule_y";
    case MeasureKind::odds_ratio: return "odds_ratio";
    case MeasureKind::msc: return "msc";
    case MeasureKind::cramers_v: return "cramers_v";
    case MeasureKind::tschuprow_t: return "tschuprow_t";
    case MeasureKind::pearson_cc: return "pearson_cc";
    case MeasureKind::distance_cor: return "distance_cor";
    case MeasureKind::chatterjee_xi: return "chatterjee_xi";
    case MeasureKind::uncertainty: return "uncertainty";
    case MeasureKind::tetrachoric: return "tetrachoric";
  }
  return "?";
}

double covariance(const JointBinaryDistribution& d) {
  return d.r() - d.p() * d.q();
}

double phi(const JointBinaryDistribution& d) {
  const double p = d.p(), q = d.q();
  return covariance(d) / std::sqrt(p * (1.0 - p) * q * (1.0 - q));
}

std::pair<double, double> phi_bounds(double p, double q) {
  const FrechetBounds b = fh_bounds(p, q);
  const double s = std::sqrt(p * (1.0 - p) * q * (1.0 - q));
  return {(b.lower - p * q) / s, (b.upper - p * q) / s};
}

namespace {
// Perfect dependence pins the proper measures at exactly +/-1; evaluating
// the defining ratio there would hit a 0/0 or 0-denominator form.
inline bool short_circuit(const JointBinaryDistribution& d, double* out) {
  switch (perfect_dependence(d)) {
    case PerfectDependence::positive: *out = 1.0; return true;
    case PerfectDependence::negative: *out = -1.0; return true;
    case PerfectDependence::none: return false;
  }
  return false;
}
}  // namespace

double cole(const JointBinaryDistribution& d) {
  double pinned;
  if (short_circuit(d, &pinned)) return pinned;
  const double p = d.p(), q = d.q(), pq = d.p() * d.q();
  const double sigma = covariance(d);
  if (sigma >= 0.0) return sigma / (std::min(p, q) - pq);
  return sigma / (pq - std::max(0.0, p + q - 1.0));
}

double yule_q(const JointBinaryDistribution& d) {
  double pinned;
  if (short_circuit(d, &pinned)) return pinned;
  const double ad = d.cell11() * d.cell00();
  const double bc = d.cell10() * d.cell01();
  return (ad - bc) / (ad + bc);
}

double yule_g(const JointBinaryDistribution& d, double g) {
  if (!(g > 0.0 && g <= 1.0))
    throw std::domain_error("yule_g: exponent must lie in (0, 1]");
  double pinned;
  if (short_circuit(d, &pinned)) return pinned;
  const double adg = std::pow(d.cell11() * d.cell00(), g);
  const double bcg = std::pow(d.cell10() * d.cell01(), g);
  return (adg - bcg) / (adg + bcg);
}

double OddsRatio::value() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

double OddsRatio::log_value() const {
  return infinite_ ? std::numeric_limits<double>::infinity()
                   : std::log(value_);
}

OddsRatio odds_ratio(const JointBinaryDistribution& d) {
  switch (perfect_dependence(d)) {
    case PerfectDependence::positive: return OddsRatio::infinite();
    case PerfectDependence::negative: return OddsRatio::finite(0.0);
    case PerfectDependence::none: break;
  }
  const double ad = d.cell11() * d.cell00();
  const double bc = d.cell10() * d.cell01();
  return OddsRatio::finite(ad / bc);
}

double q_from_or(const OddsRatio& v) {
  if (v.is_infinite()) return 1.0;
  return (v.value() - 1.0) / (v.value() + 1.0);
}

OddsRatio or_from_q(double q) {
  if (q >= 1.0) return OddsRatio::infinite();
  return OddsRatio::finite((1.0 + q) / (1.0 - q));
}

ContingencyCoefficients contingency_coefficients(const JointBinaryDistribution& d) {
  const double ph = phi(d);
  const double msc = ph * ph;
  const double v = std::fabs(ph);
  return {msc, v, v, std::sqrt(msc / (1.0 + msc))};
}

namespace {
inline double nlogn(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }
}  // namespace

FurtherMeasures further_measures(const JointBinaryDistribution& d) {
  const double ph = phi(d);
  const double hx = nlogn(d.p()) + nlogn(1.0 - d.p());
  const double hy = nlogn(d.q()) + nlogn(1.0 - d.q());
  const double hxy = nlogn(d.cell11()) + nlogn(d.cell10()) +
                     nlogn(d.cell01()) + nlogn(d.cell00());
  const double u = 2.0 * (hx + hy - hxy) / (hx + hy);
  return {std::fabs(ph), ph * ph, u};
}

}  // namespace evdep
