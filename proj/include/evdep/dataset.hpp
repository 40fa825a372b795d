#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "evdep/core.hpp"

namespace evdep {

// Named binary columns over a shared row index; each cell is 0, 1 or
// missing. Loaded from headered CSV where missing values are written with
// one of the configured NA tokens (case-sensitive).
class Dataset {
 public:
  static const std::vector<std::string>& default_na_tokens();

  // Throws std::invalid_argument with a line/field diagnostic on malformed
  // input (missing header, duplicate names, ragged rows, non-binary cells).
  static Dataset read_csv(std::istream& in,
                          const std::vector<std::string>& na_tokens =
                              default_na_tokens());
  static Dataset read_csv_file(const std::string& path,
                               const std::vector<std::string>& na_tokens =
                                   default_na_tokens());

  std::size_t rows() const { return rows_; }
  std::size_t columns() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  // -1 = missing, otherwise 0/1.
  const std::vector<std::int8_t>& column(std::size_t i) const {
    return columns_[i];
  }
  // Index of a named column; throws std::invalid_argument when absent.
  std::size_t column_index(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::int8_t>> columns_;
  std::size_t rows_ = 0;
};

// Cross-tabulation of two columns over the rows where both are observed
// (pairwise deletion).
struct PairwiseCounts {
  std::uint64_t n11 = 0, n10 = 0, n01 = 0, n00 = 0;
  std::uint64_t effective_n() const { return n11 + n10 + n01 + n00; }
  ContingencyTable table() const {
    return ContingencyTable(n11, n10, n01, n00);
  }
};

PairwiseCounts pairwise_counts(const Dataset& ds, std::size_t col_a,
                               std::size_t col_b);

}  // namespace evdep
