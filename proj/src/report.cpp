#include "lyap/report.hpp"

#include <cmath>
#include <cstdio>

namespace lyap {

std::optional<Format> parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  return std::nullopt;
}

std::string format_real(Real v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.*Lg", precision, static_cast<long double>(v));
  return buf;
}

Cell Cell::number(Real v, int precision) {
  return {format_real(v, precision), std::isfinite(v)};
}

Cell Cell::integer(std::int64_t v) { return {std::to_string(v), true}; }

Cell Cell::string(std::string s) { return {std::move(s), false}; }

Cell Cell::empty() { return {}; }

namespace {

std::string csv_field(const Cell& c) {
  if (c.numeric || c.text.find_first_of(",\"\n") == std::string::npos) return c.text;
  std::string out = "\"";
  for (char ch : c.text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out + "\"";
}

std::string json_value(const Cell& c) {
  if (c.numeric) return c.text;
  if (c.text.empty()) return "null";
  return json_string(c.text);
}

std::string render_csv(const Report& report) {
  std::string out;
  const bool labelled = report.tables.size() > 1;
  for (std::size_t t = 0; t < report.tables.size(); ++t) {
    const Table& table = report.tables[t];
    if (t) out += "\n";
    if (labelled) out += "# " + table.name + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out += ",";
      out += table.columns[c];
    }
    out += "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ",";
        out += csv_field(row[c]);
      }
      out += "\n";
    }
  }
  return out;
}

std::string render_json(const Report& report) {
  std::string out = "{";
  for (std::size_t t = 0; t < report.tables.size(); ++t) {
    const Table& table = report.tables[t];
    out += t ? ",\n  " : "\n  ";
    out += json_string(table.name) + ": [";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      out += r ? ",\n    {" : "\n    {";
      const auto& row = table.rows[r];
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ", ";
        out += json_string(table.columns[c]) + ": " + json_value(row[c]);
      }
      out += "}";
    }
    out += table.rows.empty() ? "]" : "\n  ]";
  }
  out += "\n}\n";
  return out;
}

} // namespace

std::string render(const Report& report, Format format) {
  return format == Format::Csv ? render_csv(report) : render_json(report);
}

} // namespace lyap
