#pragma once

// Fixed-column tables written as CSV or JSON lines.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace vegas::cli {

// Empty cells are written as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, jsonl };
Format parse_format(const std::string& name);

// Doubles use 17 significant digits; +-inf and nan are written as inf, -inf, nan
// (quoted strings in JSON).
std::string format_cell(const Cell& cell);
void write_csv(const Table& table, std::ostream& out);
void write_jsonl(const Table& table, std::ostream& out);
void write_table(const Table& table, Format format, std::ostream& out);

}  // namespace vegas::cli
