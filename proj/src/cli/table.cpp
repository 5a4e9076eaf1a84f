#include "vegas/cli/table.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "vegas/cli/config.hpp"

namespace vegas::cli {

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "jsonl") return Format::jsonl;
  throw ConfigError(fmt::format("unknown output format \"{}\"", name));
}

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, cell);
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_escape(format_cell(row[i]));
    }
    out << '\n';
  }
}

void write_jsonl(const Table& table, std::ostream& out) {
  for (const auto& row : table.rows) {
    // ordered_json keeps the column order.
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      auto& slot = j[table.columns[i]];
      if (std::holds_alternative<std::monostate>(c)) {
        slot = nullptr;
      } else if (const auto* s = std::get_if<std::string>(&c)) {
        slot = *s;
      } else if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) {
          slot = *d;
        } else {
          slot = format_double(*d);
        }
      } else if (const auto* n = std::get_if<std::int64_t>(&c)) {
        slot = *n;
      } else {
        slot = std::get<bool>(c);
      }
    }
    out << j.dump() << '\n';
  }
}

void write_table(const Table& table, Format format, std::ostream& out) {
  if (format == Format::csv) {
    write_csv(table, out);
  } else {
    write_jsonl(table, out);
  }
}

}  // namespace vegas::cli
