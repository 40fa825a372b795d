#include "evdep/tetrachoric.hpp"

#include <cmath>

#include "evdep/bvn.hpp"
#include "evdep/normal.hpp"

namespace evdep {

double tetrachoric(const JointBinaryDistribution& d) {
  switch (perfect_dependence(d)) {
    case PerfectDependence::positive: return 1.0;
    case PerfectDependence::negative: return -1.0;
    case PerfectDependence::none: break;
  }

  const double h = norm_quantile(d.p());
  const double k = norm_quantile(d.q());
  const double target = d.r();

  double lo = -1.0 + 1e-12, hi = 1.0 - 1e-12;
  double flo = bvn_cdf(h, k, lo) - target;
  double fhi = bvn_cdf(h, k, hi) - target;
  if (flo >= 0.0) return -1.0;  // target at or below the countermonotone mass
  if (fhi <= 0.0) return 1.0;

  // Bisection with a secant refinement; monotonicity keeps the bracket valid.
  double mid = 0.0, fmid = bvn_cdf(h, k, mid) - target;
  for (int it = 0; it < 200; ++it) {
    if (std::fabs(fmid) <= 1e-10 && hi - lo <= 1e-12) break;
    if (fmid > 0.0) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
    double next = 0.5 * (lo + hi);
    // Secant proposal; accepted only when it lands inside the bracket.
    const double df = fhi - flo;
    if (df != 0.0) {
      const double sec = lo - flo * (hi - lo) / df;
      if (sec > lo && sec < hi) next = 0.5 * (next + sec);
    }
    mid = next;
    fmid = bvn_cdf(h, k, mid) - target;
  }
  return mid;
}

}  // namespace evdep
