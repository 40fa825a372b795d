#pragma once

#include "evdep/core.hpp"

namespace evdep {

// Correlation of the latent bivariate normal whose dichotomization at the
// marginal quantiles reproduces the table: the unique rho solving
//   bvn_cdf(Phi^{-1}(p), Phi^{-1}(q), rho) = r.
// Returns exactly +/-1 on the Frechet-Hoeffding boundary. The interior
// root is bracketed (the CDF is strictly increasing in rho) and polished
// to |f(rho)| <= 1e-10 with a bracket below 1e-12.
double tetrachoric(const JointBinaryDistribution& d);

}  // namespace evdep
