#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastika/classify.hpp"
#include "elastika/series.hpp"

namespace elastika {

/// Malformed or unreadable input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One line of a UCR-style file: a class label followed by sample values.
/// Explicit stamps come from a preceding `#t` line; otherwise samples are
/// stamped 1..n.
struct UcrRecord {
  std::string label;
  std::vector<double> values;
  std::optional<std::vector<double>> stamps;

  TimeSeries series() const;
};

/// Fields may be separated by commas, whitespace or both. Integral numeric
/// labels are canonicalised ("1.0000000e+00" reads as "1").
std::vector<UcrRecord> parse_ucr(std::istream& in, const std::string& source = "<stream>");
std::vector<UcrRecord> load_ucr(const std::filesystem::path& path);

/// Writes records with round-trip precision; `#t` stamp lines are emitted
/// for records that carry stamps.
void write_ucr(std::ostream& out, std::span<const UcrRecord> records);
void save_ucr(const std::filesystem::path& path, std::span<const UcrRecord> records);

UcrRecord to_record(const LabeledSeries& item, bool with_stamps);
std::vector<LabeledSeries> to_labeled(std::span<const UcrRecord> records);

/// Relative paths that do not exist are looked up under $ELASTIKA_DATA.
std::filesystem::path resolve_data_path(const std::filesystem::path& path);

LabeledDataset load_dataset(const std::string& name, const std::filesystem::path& train,
                            const std::filesystem::path& test);

/// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

}  // namespace elastika
