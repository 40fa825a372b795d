#pragma once

namespace evdep {

// P(X <= h, Y <= k) for a standard bivariate normal vector with
// correlation rho. Infinite limits and rho = +/-1 are handled by the
// degenerate closed forms; the interior uses Gauss-Legendre quadrature of
// the single-integral reduction with the order picked by |rho| (6, 12 or
// 20 nodes, the largest near the singular region). Absolute error is well
// below 1e-10 over the whole range. Throws std::domain_error for
// |rho| > 1.
double bvn_cdf(double h, double k, double rho);

}  // namespace evdep
