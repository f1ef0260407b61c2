#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace osg {

enum class Format { csv, json };

Format parse_format(std::string_view name);
std::string_view format_extension(Format f);

/// Rectangular numeric table with a units row and an optional parameter echo.
struct SnapshotTable {
  std::vector<std::string> columns;
  std::vector<std::string> units;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> parameters;

  void add_row(std::vector<double> row) { rows.push_back(std::move(row)); }
  /// Throws osg::Error unless rectangular with finite values.
  void validate() const;

  bool operator==(const SnapshotTable&) const = default;
};

/// 17 significant digits, exponent without sign padding: 1.0000000000000000e0.
std::string format_double(double v);

/// CSV: header row, units row prefixed "# ", parameter echo as "# key = value"
/// lines, then data rows; LF endings. JSON: object with columns, units, rows
/// (and parameters when present).
std::string write_table(const SnapshotTable& table, Format format);

SnapshotTable read_json_table(std::string_view text);

}  // namespace osg
