#include "evdep/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace evdep {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

const std::vector<std::string>& Dataset::default_na_tokens() {
  static const std::vector<std::string> tokens = {"NA", "", "."};
  return tokens;
}

Dataset Dataset::read_csv(std::istream& in,
                          const std::vector<std::string>& na_tokens) {
  Dataset ds;
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("dataset: empty input, header row required");

  ds.names_ = split_csv_line(line);
  for (auto& name : ds.names_) name = trim(name);
  std::unordered_set<std::string> seen;
  for (const auto& name : ds.names_) {
    if (name.empty())
      throw std::invalid_argument("dataset: empty column name in header");
    if (!seen.insert(name).second)
      throw std::invalid_argument("dataset: duplicate column name '" + name +
                                  "'");
  }
  ds.columns_.assign(ds.names_.size(), {});

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() && in.eof()) break;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != ds.names_.size()) {
      std::ostringstream msg;
      msg << "dataset: line " << line_no << " has " << fields.size()
          << " fields, expected " << ds.names_.size();
      throw std::invalid_argument(msg.str());
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string value = trim(fields[c]);
      std::int8_t cell;
      if (std::find(na_tokens.begin(), na_tokens.end(), value) !=
          na_tokens.end()) {
        cell = -1;
      } else if (value == "0") {
        cell = 0;
      } else if (value == "1") {
        cell = 1;
      } else {
        std::ostringstream msg;
        msg << "dataset: line " << line_no << ", column '" << ds.names_[c]
            << "': value '" << value << "' is not 0, 1 or an NA token";
        throw std::invalid_argument(msg.str());
      }
      ds.columns_[c].push_back(cell);
    }
    ++ds.rows_;
  }
  return ds;
}

Dataset Dataset::read_csv_file(const std::string& path,
                               const std::vector<std::string>& na_tokens) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("dataset: cannot open '" + path + "'");
  return read_csv(in, na_tokens);
}

std::size_t Dataset::column_index(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end())
    throw std::invalid_argument("dataset: no column named '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

PairwiseCounts pairwise_counts(const Dataset& ds, std::size_t col_a,
                               std::size_t col_b) {
  const auto& a = ds.column(col_a);
  const auto& b = ds.column(col_b);
  PairwiseCounts pc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || b[i] < 0) continue;
    if (a[i] == 1) {
      if (b[i] == 1) ++pc.n11; else ++pc.n10;
    } else {
      if (b[i] == 1) ++pc.n01; else ++pc.n00;
    }
  }
  return pc;
}

}  // namespace evdep
