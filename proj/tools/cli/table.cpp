#include "table.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cotc::cli {

const std::vector<std::string>& known_units() {
  static const std::vector<std::string> units = {
      "volts_per_second", "amps_per_second", "radians_per_second", "per_second", "dimensionless",
      "seconds",          "amps",            "volts",              "ohms",       "count",
  };
  return units;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("ResultTable: row has " + std::to_string(row.size()) +
                                " values for " + std::to_string(columns_.size()) + " columns");
  rows_.push_back(std::move(row));
}

void ResultTable::set_meta(const std::string& key, const std::string& value) {
  for (auto& [k, v] : metadata_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  metadata_.emplace_back(key, value);
}

std::string ResultTable::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata_)
    if (k == key) return v;
  return "";
}

void ResultTable::write_csv(std::ostream& out) const {
  for (const auto& [k, v] : metadata_) out << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i].header();
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void ResultTable::write_json(std::ostream& out) const {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata_) doc["metadata"][k] = v;
  doc["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : columns_) doc["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (std::isfinite(row[i]))
        obj[columns_[i].header()] = row[i];
      else
        obj[columns_[i].header()] = nullptr;
    }
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

namespace {

Column split_header(const std::string& h) {
  for (const auto& unit : known_units()) {
    const std::string suffix = "_" + unit;
    if (h.size() > suffix.size() && h.compare(h.size() - suffix.size(), suffix.size(), suffix) == 0)
      return {h.substr(0, h.size() - suffix.size()), unit};
  }
  return {h, ""};
}

double parse_cell(const std::string& text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("ResultTable: bad number '" + text + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

ResultTable ResultTable::read_csv(std::istream& in) {
  ResultTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!have_header && line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("ResultTable: bad metadata line");
      t.metadata_.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (!have_header) {
      for (const auto& h : split_commas(line)) t.columns_.push_back(split_header(h));
      have_header = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split_commas(line)) row.push_back(parse_cell(cell));
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace cotc::cli
