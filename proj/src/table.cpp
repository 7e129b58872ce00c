#include "levitrap/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "levitrap/error.hpp"

namespace levitrap::table {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    fail(ErrorCode::invalid_argument, "table row has " + std::to_string(row.size()) +
                                          " cells, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  fail(ErrorCode::invalid_argument, "no column '" + name + "'");
}

double Table::number(std::size_t row, const std::string& name) const {
  const auto& cell = rows.at(row).at(column(name));
  if (const double* v = std::get_if<double>(&cell)) return *v;
  fail(ErrorCode::invalid_argument, "column '" + name + "' is not numeric");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

double rounded(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_number(value).c_str(), nullptr);
}

namespace {

std::string escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += escape(table.columns[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const double* v = std::get_if<double>(&row[i])) {
        out += format_number(*v);
      } else {
        out += escape(std::get<std::string>(row[i]));
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace levitrap::table
