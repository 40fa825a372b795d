#pragma once

#include <cstdint>
#include <string>

namespace evdep {

// Absolute tolerance used when deciding whether a cell probability of a
// population triple is zero. Counts are always tested exactly.
inline constexpr double kCellTol = 1e-12;

// Sharp bounds on the joint probability r = P(A and B) given the marginals.
struct FrechetBounds {
  double lower;  // max(0, p + q - 1)
  double upper;  // min(p, q)
};

FrechetBounds fh_bounds(double p, double q);

// Joint distribution of two events, parameterized by the marginal
// probabilities p = P(A), q = P(B) and the joint probability r = P(A and B).
// Marginals are strictly interior; r may sit exactly on a Frechet-Hoeffding
// bound (perfect dependence). Values are immutable after construction.
class JointBinaryDistribution {
 public:
  // Throws std::domain_error if p or q lies outside (0,1) or if r violates
  // the Frechet-Hoeffding bounds by more than kCellTol. Violations within
  // kCellTol are clamped onto the nearest bound.
  JointBinaryDistribution(double p, double q, double r);

  double p() const { return p_; }
  double q() const { return q_; }
  double r() const { return r_; }

  // Cell probabilities of the 2x2 table: (A,B), (A,notB), (notA,B),
  // (notA,notB). Tiny negative rounding residue is clipped to zero.
  double cell11() const { return r_; }
  double cell10() const;
  double cell01() const;
  double cell00() const;

  double covariance_sigma() const { return r_ - p_ * q_; }

 private:
  double p_, q_, r_;
};

bool is_positively_dependent(const JointBinaryDistribution& d);
bool is_negatively_dependent(const JointBinaryDistribution& d);

enum class PerfectDependence { none, positive, negative };

// Detects perfect dependence via a zero cell: positive when a secondary
// diagonal cell vanishes, negative when a primary diagonal cell does.
PerfectDependence perfect_dependence(const JointBinaryDistribution& d);

// Maps (A, B) to (A, complement of B): (p, 1-q, p-r). An involution.
JointBinaryDistribution complement_b(const JointBinaryDistribution& d);

// Dependence ordering for pairs with identical marginals. All three throw
// std::domain_error when the marginals differ; the ordering is undefined
// there and no answer is guessed.
bool stronger_positively_dependent(const JointBinaryDistribution& d,
                                   const JointBinaryDistribution& d_ref);
bool stronger_negatively_dependent(const JointBinaryDistribution& d,
                                   const JointBinaryDistribution& d_ref);
bool equally_dependent(const JointBinaryDistribution& d,
                       const JointBinaryDistribution& d_ref);

// Observed 2x2 table of non-negative counts, row-major:
//   n11 = #(A and B), n10 = #(A and not B),
//   n01 = #(not A and B), n00 = #(neither).
struct ContingencyTable {
  std::uint64_t n11 = 0, n10 = 0, n01 = 0, n00 = 0;

  ContingencyTable() = default;
  // Throws std::domain_error when all counts are zero.
  ContingencyTable(std::uint64_t n11, std::uint64_t n10, std::uint64_t n01,
                   std::uint64_t n00);

  std::uint64_t n() const { return n11 + n10 + n01 + n00; }
  std::uint64_t row_a() const { return n11 + n10; }
  std::uint64_t col_b() const { return n11 + n01; }

  // Parses four counts from a whitespace- or comma-separated 2x2 block.
  // Throws std::invalid_argument on malformed input.
  static ContingencyTable parse_block(const std::string& text);
};

}  // namespace evdep
