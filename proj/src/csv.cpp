#include "elastika/csv.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "elastika/ucr_io.hpp"

namespace elastika {

namespace {

void append_field(std::string& out, const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) out += ',';
    append_field(out, row[k]);
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  append_row(out, table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw std::invalid_argument("to_csv: row width differs from header width");
    }
    append_row(out, row);
  }
  return out;
}

void emit_csv(const CsvTable& table, const std::filesystem::path& path) {
  const std::string text = to_csv(table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string format_millis(double ms) { return format_real(std::round(ms * 1e3) / 1e3); }

CsvTable range_report_csv(std::span<const RangeQueryReport> reports) {
  std::size_t depth = 0;
  for (const auto& r : reports) depth = std::max(depth, r.pruned_per_level.size());
  CsvTable table;
  table.header = {"radius", "matches"};
  for (std::size_t l = 0; l < depth; ++l) table.header.push_back("pruned_level_" + std::to_string(l));
  table.header.push_back("exact_evals");
  table.header.push_back("wall_ms");
  for (const auto& r : reports) {
    std::vector<std::string> row{format_real(r.radius), std::to_string(r.matches.size())};
    for (std::size_t l = 0; l < depth; ++l) {
      row.push_back(std::to_string(l < r.pruned_per_level.size() ? r.pruned_per_level[l] : 0));
    }
    row.push_back(std::to_string(r.exact_evaluations));
    row.push_back(format_millis(r.wall_ms));
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable table_csv(const TableResult& table) {
  CsvTable out;
  out.header.push_back("dataset");
  for (MetricKind m : table.metrics) out.header.emplace_back(to_string(m));
  for (const auto& row : table.rows) {
    std::vector<std::string> cells{row.dataset};
    for (const auto& cell : row.cells) cells.push_back(format_real(cell.error));
    out.rows.push_back(std::move(cells));
  }
  std::vector<std::string> mean{"MEAN"}, stddev{"STD"};
  for (std::size_t k = 0; k < table.metrics.size(); ++k) {
    mean.push_back(format_real(k < table.mean.size() ? table.mean[k] : 0.0));
    stddev.push_back(format_real(k < table.stddev.size() ? table.stddev[k] : 0.0));
  }
  out.rows.push_back(std::move(mean));
  out.rows.push_back(std::move(stddev));
  return out;
}

}  // namespace elastika
