#include "evdep/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace evdep {

FrechetBounds fh_bounds(double p, double q) {
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0))
    throw std::domain_error("fh_bounds: marginals must lie strictly in (0,1)");
  return {std::max(0.0, p + q - 1.0), std::min(p, q)};
}

JointBinaryDistribution::JointBinaryDistribution(double p, double q, double r)
    : p_(p), q_(q), r_(r) {
  const FrechetBounds b = fh_bounds(p, q);  // validates marginals
  if (r_ < b.lower) {
    if (b.lower - r_ > kCellTol)
      throw std::domain_error(
          "JointBinaryDistribution: r below its Frechet-Hoeffding bound");
    r_ = b.lower;
  } else if (r_ > b.upper) {
    if (r_ - b.upper > kCellTol)
      throw std::domain_error(
          "JointBinaryDistribution: r above its Frechet-Hoeffding bound");
    r_ = b.upper;
  }
}

double JointBinaryDistribution::cell10() const {
  return std::max(0.0, p_ - r_);
}
double JointBinaryDistribution::cell01() const {
  return std::max(0.0, q_ - r_);
}
double JointBinaryDistribution::cell00() const {
  return std::max(0.0, 1.0 - p_ - q_ + r_);
}

bool is_positively_dependent(const JointBinaryDistribution& d) {
  return d.r() >= d.p() * d.q();
}

bool is_negatively_dependent(const JointBinaryDistribution& d) {
  return d.r() <= d.p() * d.q();
}

PerfectDependence perfect_dependence(const JointBinaryDistribution& d) {
  if (std::min(d.cell10(), d.cell01()) <= kCellTol)
    return PerfectDependence::positive;
  if (std::min(d.cell11(), d.cell00()) <= kCellTol)
    return PerfectDependence::negative;
  return PerfectDependence::none;
}

JointBinaryDistribution complement_b(const JointBinaryDistribution& d) {
  return {d.p(), 1.0 - d.q(), d.p() - d.r()};
}

namespace {
void require_equal_marginals(const JointBinaryDistribution& d,
                             const JointBinaryDistribution& d_ref) {
  if (d.p() != d_ref.p() || d.q() != d_ref.q())
    throw std::domain_error(
        "dependence ordering requires identical marginal probabilities");
}
}  // namespace

bool stronger_positively_dependent(const JointBinaryDistribution& d,
                                   const JointBinaryDistribution& d_ref) {
  require_equal_marginals(d, d_ref);
  return d.r() >= d_ref.r();
}

bool stronger_negatively_dependent(const JointBinaryDistribution& d,
                                   const JointBinaryDistribution& d_ref) {
  require_equal_marginals(d, d_ref);
  return d.r() <= d_ref.r();
}

bool equally_dependent(const JointBinaryDistribution& d,
                       const JointBinaryDistribution& d_ref) {
  require_equal_marginals(d, d_ref);
  return d.r() == d_ref.r();
}

ContingencyTable::ContingencyTable(std::uint64_t a11, std::uint64_t a10,
                                   std::uint64_t a01, std::uint64_t a00)
    : n11(a11), n10(a10), n01(a01), n00(a00) {
  if (n() == 0)
    throw std::domain_error("ContingencyTable: total count must be >= 1");
}

ContingencyTable ContingencyTable::parse_block(const std::string& text) {
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  long long v[4];
  for (int i = 0; i < 4; ++i) {
    if (!(in >> v[i]))
      throw std::invalid_argument(
          "ContingencyTable: expected four counts (n11 n10 n01 n00)");
    if (v[i] < 0)
      throw std::invalid_argument("ContingencyTable: counts must be >= 0");
  }
  std::string rest;
  if (in >> rest)
    throw std::invalid_argument("ContingencyTable: trailing input after four counts");
  return ContingencyTable(static_cast<std::uint64_t>(v[0]),
                          static_cast<std::uint64_t>(v[1]),
                          static_cast<std::uint64_t>(v[2]),
                          static_cast<std::uint64_t>(v[3]));
}

}  // namespace evdep
