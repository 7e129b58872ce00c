#pragma once

#include <string>
#include <variant>
#include <vector>

namespace levitrap::table {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column(const std::string& name) const;  // Error(invalid_argument) when absent
  double number(std::size_t row, const std::string& name) const;
};

// 9 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double value);
// Value after a round trip through format_number.
double rounded(double value);

std::string to_csv(const Table& table);

}  // namespace levitrap::table
