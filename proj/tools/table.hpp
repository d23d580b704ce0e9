// Row tables and their CSV / JSON encodings.

#ifndef HOAIRY_TOOLS_TABLE_HPP_
#define HOAIRY_TOOLS_TABLE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace hoairy::cli {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json summary;  // optional; null when absent

  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;
  double number(std::size_t row, const std::string& column) const;
};

/// %.17g, with nan/inf spelled out.
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& table);
nlohmann::json to_json(const Table& table);

}  // namespace hoairy::cli

#endif  // HOAIRY_TOOLS_TABLE_HPP_
