#pragma once

// Tabular output as CSV (12 significant digits, '.' decimal, no locale) or JSON.

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qdarwin::cli {

/// Blank, number or text.
using Cell = std::variant<std::monostate, double, std::string>;

[[nodiscard]] Cell blank_if_empty(const std::optional<double>& v);

struct Table {
  std::string title;  // emitted as a '# ' comment line above the header
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Two-column quantity/value tables render as a JSON object.
  bool key_value = false;
};

[[nodiscard]] std::string format_number(double v);

void write_csv(std::ostream& out, const std::vector<Table>& tables);
[[nodiscard]] nlohmann::ordered_json to_json(const std::vector<Table>& tables);

}  // namespace qdarwin::cli
