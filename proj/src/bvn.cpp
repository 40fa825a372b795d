#include "evdep/bvn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "evdep/normal.hpp"

namespace evdep {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Gauss-Legendre half-tables on (-1, 1); nodes are used in symmetric pairs.
const double kW6[3] = {0.1713244923791704, 0.3607615730481386,
                       0.4679139345726910};
const double kX6[3] = {0.9324695142031521, 0.6612093864662645,
                       0.2386191860831969};

const double kW12[6] = {0.04717533638651183, 0.1069393259953184,
                        0.1600783285433462,  0.2031674267230659,
                        0.2334925365383548,  0.2491470458134028};
const double kX12[6] = {0.9815606342467192, 0.9041172563704749,
                        0.7699026741943047, 0.5873179542866175,
                        0.3678314989981802, 0.1252334085114689};

const double kW20[10] = {0.01761400713915212, 0.04060142980038694,
                         0.06267204833410907, 0.08327674157670475,
                         0.1019301198172404,  0.1181945319615184,
                         0.1316886384491766,  0.1420961093183820,
                         0.1491729864726037,  0.1527533871307258};
const double kX20[10] = {0.9931285991850949, 0.9639719272779138,
                         0.9122344282513259, 0.8391169718222188,
                         0.7463319064601508, 0.6360536807265150,
                         0.5108670019508271, 0.3737060887154195,
                         0.2277858511416451, 0.07652652113349734};

// Genz's BVND: P(X > dh, Y > dk) under correlation r. Drezner-Wesolowsky
// single integral for |r| < 0.925, the transformed singular-part expansion
// otherwise.
double bvn_upper(double dh, double dk, double r) {
  const double* w;
  const double* x;
  int lg;
  if (std::fabs(r) < 0.3) {
    w = kW6; x = kX6; lg = 3;
  } else if (std::fabs(r) < 0.75) {
    w = kW12; x = kX12; lg = 6;
  } else {
    w = kW20; x = kX20; lg = 10;
  }

  double h = dh, k = dk;
  double hk = h * k;
  double bvn = 0.0;

  if (std::fabs(r) < 0.925) {
    if (std::fabs(r) > 0.0) {
      const double hs = (h * h + k * k) / 2.0;
      const double asr = std::asin(r);
      for (int i = 0; i < lg; ++i) {
        for (int is = -1; is <= 1; is += 2) {
          const double sn = std::sin(asr * (is * x[i] + 1.0) / 2.0);
          bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
        }
      }
      bvn = bvn * asr / (2.0 * kTwoPi);
    }
    return bvn + norm_sf(h) * norm_sf(k);
  }

  if (r < 0.0) {
    k = -k;
    hk = -hk;
  }
  if (std::fabs(r) < 1.0) {
    const double as = (1.0 - r) * (1.0 + r);
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    double asr = -(bs / as + hk) / 2.0;
    if (asr > -100.0)
      bvn = a * std::exp(asr) *
            (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 +
             c * d * as * as / 5.0);
    if (-hk < 100.0) {
      const double b = std::sqrt(bs);
      bvn -= std::exp(-hk / 2.0) * std::sqrt(kTwoPi) * norm_sf(b / a) * b *
             (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a /= 2.0;
    for (int i = 0; i < lg; ++i) {
      for (int is = -1; is <= 1; is += 2) {
        const double xs = std::pow(a * (is * x[i] + 1.0), 2);
        const double rs = std::sqrt(1.0 - xs);
        asr = -(bs / xs + hk) / 2.0;
        if (asr > -100.0) {
          bvn += a * w[i] * std::exp(asr) *
                 (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                  (1.0 + c * xs * (1.0 + d * xs)));
        }
      }
    }
    bvn = -bvn / kTwoPi;
  }
  if (r > 0.0) {
    bvn += norm_sf(std::max(h, k));
  } else {
    bvn = -bvn;
    if (k > h) bvn += norm_cdf(k) - norm_cdf(h);
  }
  return bvn;
}

}  // namespace

double bvn_cdf(double h, double k, double rho) {
  if (std::isnan(h) || std::isnan(k) || std::isnan(rho) || std::fabs(rho) > 1.0)
    throw std::domain_error("bvn_cdf: need |rho| <= 1 and non-NaN limits");
  if (h == -std::numeric_limits<double>::infinity() ||
      k == -std::numeric_limits<double>::infinity())
    return 0.0;
  if (h == std::numeric_limits<double>::infinity()) return norm_cdf(k);
  if (k == std::numeric_limits<double>::infinity()) return norm_cdf(h);
  if (rho == 1.0) return norm_cdf(std::min(h, k));
  if (rho == -1.0) return std::max(0.0, norm_cdf(h) + norm_cdf(k) - 1.0);
  const double p = bvn_upper(-h, -k, rho);
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace evdep
