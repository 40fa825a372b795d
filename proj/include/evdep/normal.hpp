#pragma once

namespace evdep {

// Standard normal density.
double norm_pdf(double x);

// Standard normal CDF, computed through erfc so both tails keep full
// relative precision.
double norm_cdf(double x);

// Upper tail P(Z > x).
double norm_sf(double x);

// Quantile function (inverse CDF), Wichura's AS 241 double-precision
// rational approximations. Returns +/-inf for p in {0, 1}; throws
// std::domain_error outside [0, 1].
double norm_quantile(double p);

}  // namespace evdep
