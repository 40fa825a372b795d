#pragma once

#include <string>
#include <utility>

#include "evdep/core.hpp"

namespace evdep {

enum class MeasureKind {
  covariance,
  phi,
  cole,
  yule_q,
  yule_y,       // generalized Yule with exponent 0.5
  odds_ratio,
  msc,
  cramers_v,
  tschuprow_t,
  pearson_cc,
  distance_cor,
  chatterjee_xi,
  uncertainty,
  tetrachoric,
};

std::string to_string(MeasureKind kind);

// Cov(A,B) = r - p q. Bounded by [-1/4, 1/4].
double covariance(const JointBinaryDistribution& d);

// Pearson correlation of the two indicators. Not attainable in general:
// its range for fixed marginals is given by phi_bounds.
double phi(const JointBinaryDistribution& d);

// Values of phi under perfect negative / positive dependence.
std::pair<double, double> phi_bounds(double p, double q);

// Covariance normalized by its Frechet-Hoeffding bound on the matching
// sign branch; sigma >= 0 uses the positive bound.
double cole(const JointBinaryDistribution& d);

// (ad - bc) / (ad + bc) over the four cells.
double yule_q(const JointBinaryDistribution& d);

// Generalized Yule coefficient ((ad)^g - (bc)^g) / ((ad)^g + (bc)^g) for
// g in (0, 1]; g = 1 is yule_q, g = 0.5 the "Y" variant, g = 0.75 the "H"
// variant. Throws std::domain_error for g outside (0, 1].
double yule_g(const JointBinaryDistribution& d, double g);

// Cross-product ratio ad / (bc). Infinite under perfect positive
// dependence, zero under perfect negative dependence; kept as a tagged
// value so downstream log-transforms never divide by zero silently.
class OddsRatio {
 public:
  static OddsRatio finite(double v) { return OddsRatio(v, false); }
  static OddsRatio infinite() { return OddsRatio(0.0, true); }

  bool is_infinite() const { return infinite_; }
  // Finite value; +inf when is_infinite().
  double value() const;
  double log_value() const;

 private:
  OddsRatio(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

OddsRatio odds_ratio(const JointBinaryDistribution& d);

// The strictly monotone bijection between Yule's Q and the odds ratio.
double q_from_or(const OddsRatio& v);
OddsRatio or_from_q(double q);

struct ContingencyCoefficients {
  double msc;          // mean square contingency = phi^2
  double cramers_v;    // |phi|
  double tschuprow_t;  // |phi| in the 2x2 case
  double pearson_cc;   // sqrt(phi^2 / (1 + phi^2)), tops out at 1/sqrt(2)
};

ContingencyCoefficients contingency_coefficients(const JointBinaryDistribution& d);

struct FurtherMeasures {
  double distance_cor;   // |phi|
  double chatterjee_xi;  // phi^2
  double uncertainty;    // normalized mutual information, natural logs
};

FurtherMeasures further_measures(const JointBinaryDistribution& d);

}  // namespace evdep
