#include "cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace qdarwin::cli {
namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return {};
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return *d;
  }
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return nullptr;
}

}  // namespace

Cell blank_if_empty(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

void write_csv(std::ostream& out, const std::vector<Table>& tables) {
  bool first = true;
  for (const auto& table : tables) {
    if (!first) out << '\n';
    first = false;
    if (!table.title.empty()) out << "# " << table.title << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
      out << '\n';
    }
  }
}

nlohmann::ordered_json to_json(const std::vector<Table>& tables) {
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (const auto& table : tables) {
    nlohmann::ordered_json block;
    if (!table.title.empty()) block["title"] = table.title;
    if (table.key_value) {
      nlohmann::ordered_json values = nlohmann::ordered_json::object();
      for (const auto& row : table.rows) values[cell_text(row.at(0))] = cell_json(row.at(1));
      block["values"] = values;
    } else {
      block["columns"] = table.columns;
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto& row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& cell : row) r.push_back(cell_json(cell));
        rows.push_back(r);
      }
      block["rows"] = rows;
    }
    blocks.push_back(block);
  }
  return blocks;
}

}  // namespace qdarwin::cli
