#include <doctest.h>

#include <evdep/dataset.hpp>
#include <evdep/estimation.hpp>
#include <evdep/measures.hpp>
#include <sstream>
#include <stdexcept>

using namespace evdep;

namespace {
Dataset make(const std::string& text) {
  std::istringstream in(text);
  return Dataset::read_csv(in);
}
}  // namespace

TEST_CASE("csv parsing") {
  const Dataset ds = make("a,b,c\n1,0,NA\n0,1,1\n.,,0\n");
  CHECK(ds.rows() == 3);
  CHECK(ds.columns() == 3);
  CHECK(ds.names()[0] == "a");
  CHECK(ds.column(0)[0] == 1);
  CHECK(ds.column(2)[0] == -1);
  CHECK(ds.column(0)[2] == -1);  // '.'
  CHECK(ds.column(1)[2] == -1);  // empty
  CHECK(ds.column_index("c") == 2);
  CHECK_THROWS_AS(ds.column_index("zzz"), std::invalid_argument);
}

TEST_CASE("csv diagnostics") {
  CHECK_THROWS_AS(make(""), std::invalid_argument);
  CHECK_THROWS_AS(make("a,a\n0,1\n"), std::invalid_argument);
  CHECK_THROWS_AS(make("a,b\n0\n"), std::invalid_argument);
  CHECK_THROWS_AS(make("a,b\n0,2\n"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make("a,b\n0,1\n1,x\n"),
                       doctest::Contains("line 3"), std::invalid_argument);
  // custom NA tokens are honored verbatim
  std::istringstream in("a,b\nmiss,1\n");
  const Dataset ds = Dataset::read_csv(in, {"miss"});
  CHECK(ds.column(0)[0] == -1);
  CHECK(ds.column(1)[0] == 1);
}

TEST_CASE("pairwise deletion bookkeeping") {
  const Dataset ds = make(
      "x,y,z\n"
      "1,1,NA\n"
      "1,NA,0\n"
      "0,1,1\n"
      "NA,0,1\n"
      "1,0,0\n"
      "0,0,NA\n");
  // hand-counted overlaps
  const auto xy = pairwise_counts(ds, 0, 1);
  CHECK(xy.effective_n() == 4);  // rows 1, 3, 5, 6
  CHECK(xy.n11 == 1);
  CHECK(xy.n10 == 1);
  CHECK(xy.n01 == 1);
  CHECK(xy.n00 == 1);
  CHECK(pairwise_counts(ds, 0, 2).effective_n() == 3);
  CHECK(pairwise_counts(ds, 1, 2).effective_n() == 3);

  // removing one row that is complete for the pair drops its effective n
  // by exactly one
  const Dataset smaller = make(
      "x,y,z\n"
      "1,1,NA\n"
      "1,NA,0\n"
      "0,1,1\n"
      "NA,0,1\n"
      "1,0,0\n");
  CHECK(pairwise_counts(smaller, 0, 1).effective_n() ==
        xy.effective_n() - 1);
}

TEST_CASE("identical and complementary columns hit the boundary values") {
  const Dataset ds = make(
      "a,same,flip\n"
      "1,1,0\n"
      "0,0,1\n"
      "1,1,0\n"
      "0,0,1\n"
      "1,1,0\n"
      "0,0,1\n"
      "1,1,0\n"
      "1,1,0\n");
  const auto same = pairwise_counts(ds, 0, 1);
  const MomentEstimates ms = moments_from_table(same.table());
  const JointBinaryDistribution dsame = ms.to_distribution();
  CHECK(cole(dsame) == 1.0);
  CHECK(yule_q(dsame) == 1.0);
  CHECK(phi(dsame) == doctest::Approx(1.0).epsilon(1e-12));

  const auto flip = pairwise_counts(ds, 0, 2);
  const JointBinaryDistribution dflip =
      moments_from_table(flip.table()).to_distribution();
  CHECK(cole(dflip) == -1.0);
  CHECK(yule_q(dflip) == -1.0);
  CHECK(phi(dflip) == doctest::Approx(-1.0).epsilon(1e-12));
}
