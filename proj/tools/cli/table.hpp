#pragma once

// Rectangular numeric result tables with units and metadata, emitted as
// CSV or JSON.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cotc::cli {

struct Column {
  std::string name;
  std::string unit;  // e.g. "volts_per_second", "dimensionless"; empty for labels like "cycle"

  std::string header() const { return unit.empty() ? name : name + "_" + unit; }
  bool operator==(const Column&) const = default;
};

class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<Column> columns) : columns_(std::move(columns)) {}

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

  /// Throws std::invalid_argument unless the row matches the column count.
  void add_row(std::vector<double> row);
  /// Replaces an existing key in place, else appends.
  void set_meta(const std::string& key, const std::string& value);
  std::string meta(const std::string& key) const;

  /// '# key=value' lines, then the name_unit header, then rows with 17
  /// significant digits. LF line endings.
  void write_csv(std::ostream& out) const;
  /// {"metadata": {...}, "columns": [...], "rows": [{header: value}, ...]};
  /// non-finite values become null.
  void write_json(std::ostream& out) const;

  /// Inverse of write_csv. A header ending in a known unit suffix is split
  /// there; any other header becomes a unitless column.
  static ResultTable read_csv(std::istream& in);

  bool operator==(const ResultTable&) const = default;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Unit suffixes used in headers, longest match first.
const std::vector<std::string>& known_units();

/// Decimal text with 17 significant digits; parses back to the same double.
std::string format_number(double v);

}  // namespace cotc::cli
