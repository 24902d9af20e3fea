#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "elastika/classify.hpp"
#include "elastika/pruning.hpp"

namespace elastika {

/// A header row plus data rows of pre-formatted cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 text: CRLF-free ("\n") line endings, fields quoted only when they
/// contain a comma, quote or newline.
std::string to_csv(const CsvTable& table);
void emit_csv(const CsvTable& table, const std::filesystem::path& path);

/// Milliseconds rounded to the microsecond.
std::string format_millis(double ms);

/// radius, matches, pruned_level_0.., exact_evals, wall_ms; one row per report.
CsvTable range_report_csv(std::span<const RangeQueryReport> reports);

/// dataset, <metric>...; one row per dataset followed by MEAN and STD rows.
CsvTable table_csv(const TableResult& table);

}  // namespace elastika
