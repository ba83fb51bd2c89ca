#pragma once

// Dissimilarity matrices as CSV of exact rationals, one row per line.
// Blank lines and lines starting with '#' are skipped.

#include "troptree/metrics/dissimilarity.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace troptree {

class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("csv:" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

inline DissimilarityMatrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<Rational>> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    std::vector<Rational> row;
    std::size_t cell = 0;
    while (cell <= line.size()) {
      std::size_t comma = line.find(',', cell);
      if (comma == std::string_view::npos) comma = line.size();
      std::string_view field = line.substr(cell, comma - cell);
      auto a = field.find_first_not_of(" \t");
      auto b = field.find_last_not_of(" \t");
      if (a == std::string_view::npos) throw CsvError("empty field", line_no, cell + 1);
      try {
        row.push_back(Rational::parse(field.substr(a, b - a + 1)));
      } catch (const std::exception&) {
        throw CsvError("not a rational: '" + std::string(field.substr(a, b - a + 1)) + "'", line_no, cell + a + 1);
      }
      cell = comma + 1;
    }
    rows.push_back(std::move(row));
    if (end == text.size()) break;
  }
  if (rows.empty()) throw CsvError("no rows", line_no, 1);
  try {
    return DissimilarityMatrix(rows);
  } catch (const std::invalid_argument& e) {
    throw CsvError(e.what(), 1, 1);
  }
}

inline std::string to_csv(const DissimilarityMatrix& d) {
  std::ostringstream out;
  for (const auto& row : d.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j].str();
    out << '\n';
  }
  return out.str();
}

}  // namespace troptree
