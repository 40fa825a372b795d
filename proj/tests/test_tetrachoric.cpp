#include <doctest.h>

#include <cmath>
#include <evdep/bvn.hpp>
#include <evdep/core.hpp>
#include <evdep/measures.hpp>
#include <evdep/normal.hpp>
#include <evdep/rng.hpp>
#include <evdep/tetrachoric.hpp>

#include "test_util.hpp"

using namespace evdep;

TEST_CASE("tetrachoric on reference triples") {
  const JointBinaryDistribution smallpox{199.0 / 357, 336.0 / 357, 197.0 / 357};
  // table reports 0.61; high-precision root of the defining equation is
  // 0.611811
  CHECK(tetrachoric(smallpox) == doctest::Approx(0.61).epsilon(0.017));
  CHECK(tetrachoric(smallpox) == doctest::Approx(0.611811).epsilon(1e-5));

  // median margins invert the orthant closed form: rho = sin(2 pi (r - 1/4))
  CHECK(tetrachoric({0.5, 0.5, 0.375}) ==
        doctest::Approx(std::sin(3.14159265358979323846 / 4.0)).epsilon(1e-8));
  CHECK(std::fabs(tetrachoric({0.5, 0.5, 0.25})) <= 1e-8);
}

TEST_CASE("tetrachoric boundary attainability") {
  CHECK(tetrachoric({0.3, 0.7, 0.3}) == 1.0);
  CHECK(tetrachoric({0.6, 0.6, 0.2}) == -1.0);
  CHECK(tetrachoric({0.25, 0.5, 0.0}) == -1.0);
}

TEST_CASE("round trip rho -> r -> rho") {
  SplitMix64 gen(13);
  for (int i = 0; i < 500; ++i) {
    const double p = 0.05 + 0.9 * uniform01(gen);
    const double q = 0.05 + 0.9 * uniform01(gen);
    const double rho = -0.98 + 1.96 * uniform01(gen);
    const double r = bvn_cdf(norm_quantile(p), norm_quantile(q), rho);
    const FrechetBounds b = fh_bounds(p, q);
    if (!(r > b.lower + 1e-12 && r < b.upper - 1e-12)) continue;
    const double back = tetrachoric({p, q, r});
    CHECK(back == doctest::Approx(rho).epsilon(1e-7));
  }
}

TEST_CASE("tetrachoric propriety") {
  SplitMix64 gen(17);
  for (int i = 0; i < 10000; ++i) {
    const auto d = testutil::random_triple(gen, 0.02, 0.0);
    const double v = tetrachoric(d);
    CHECK(std::fabs(v) <= 1.0);
    // (B) zero iff independent
    const JointBinaryDistribution indep(d.p(), d.q(), d.p() * d.q());
    CHECK(std::fabs(tetrachoric(indep)) <= 1e-7);
    if (std::fabs(d.r() - d.p() * d.q()) > 1e-4) CHECK(std::fabs(v) > 1e-9);
    // sign rule
    if (covariance(d) > 1e-4) CHECK(v > 0.0);
    if (covariance(d) < -1e-4) CHECK(v < 0.0);
    // (C) strictly inside (-1, 1) on interior triples
    CHECK(std::fabs(v) < 1.0);
    // (D) strictly increasing in r
    const FrechetBounds b = fh_bounds(d.p(), d.q());
    const double r2 = d.r() + (b.upper - d.r()) * (0.2 + 0.6 * uniform01(gen));
    if (r2 - d.r() > 1e-6) CHECK(tetrachoric({d.p(), d.q(), r2}) > v);
    // (E) symmetry and complement sign flip
    CHECK(tetrachoric({d.q(), d.p(), d.r()}) ==
          doctest::Approx(v).epsilon(1e-8));
    CHECK(tetrachoric(complement_b(d)) == doctest::Approx(-v).epsilon(1e-7));
  }
  for (int i = 0; i < 1000; ++i) {
    CHECK(tetrachoric(testutil::boundary_triple(gen, true)) == 1.0);
    CHECK(tetrachoric(testutil::boundary_triple(gen, false)) == -1.0);
  }
}
