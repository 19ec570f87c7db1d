#ifndef LYAP_REPORT_HPP
#define LYAP_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lyap/real.hpp"

namespace lyap {

enum class Format { Csv, Json };

std::optional<Format> parse_format(std::string_view name);

/// Pre-formatted table cell. Numbers are formatted once so that the CSV and
/// JSON renderings carry identical digit strings.
struct Cell {
  std::string text;
  bool numeric = false;

  static Cell number(Real v, int precision);
  static Cell integer(std::int64_t v);
  static Cell string(std::string s);
  static Cell empty();
};

/// `precision` significant digits; non-finite values render as nan/inf/-inf.
std::string format_real(Real v, int precision);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::vector<Table> tables;
};

/// CSV: header row plus one row per record; several tables are separated by
/// a blank line and introduced by a `# name` line. JSON: an object mapping
/// each table name to an array of row objects.
std::string render(const Report& report, Format format);

} // namespace lyap

#endif
