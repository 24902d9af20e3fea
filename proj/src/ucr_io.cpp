#include "elastika/ucr_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace elastika {

TimeSeries UcrRecord::series() const {
  return stamps ? TimeSeries::from_values(values, *stamps) : TimeSeries::from_values(values);
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::optional<double> parse_real(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::string canonical_label(std::string_view text) {
  const auto v = parse_real(text);
  if (v && std::isfinite(*v) && std::floor(*v) == *v && std::fabs(*v) < 1e15) {
    return std::to_string(static_cast<long long>(*v));
  }
  return std::string(text);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw DataError(source + ":" + std::to_string(line) + ": " + what);
}

std::vector<double> parse_reals(const std::vector<std::string_view>& fields, std::size_t from,
                                const std::string& source, std::size_t line) {
  std::vector<double> out;
  out.reserve(fields.size() - from);
  for (std::size_t k = from; k < fields.size(); ++k) {
    const auto v = parse_real(fields[k]);
    if (!v || !std::isfinite(*v)) {
      fail(source, line, "field " + std::to_string(k + 1) + " is not a finite number: '" +
                             std::string(fields[k]) + "'");
    }
    out.push_back(*v);
  }
  return out;
}

}  // namespace

std::vector<UcrRecord> parse_ucr(std::istream& in, const std::string& source) {
  std::vector<UcrRecord> records;
  std::optional<std::vector<double>> pending_stamps;
  std::size_t pending_line = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (view.starts_with("#t")) {
      if (pending_stamps) fail(source, pending_line, "#t line is not followed by a record");
      const auto fields = split_fields(view.substr(2));
      if (fields.empty()) fail(source, lineno, "#t line carries no stamps");
      pending_stamps = parse_reals(fields, 0, source, lineno);
      pending_line = lineno;
      continue;
    }
    const auto fields = split_fields(view);
    if (fields.empty()) continue;
    if (fields.size() < 2) fail(source, lineno, "expected a label and at least one value");
    UcrRecord rec{canonical_label(fields[0]), parse_reals(fields, 1, source, lineno), std::nullopt};
    if (pending_stamps) {
      if (pending_stamps->size() != rec.values.size()) {
        fail(source, lineno, "stamp count " + std::to_string(pending_stamps->size()) +
                                 " differs from value count " + std::to_string(rec.values.size()));
      }
      for (std::size_t k = 1; k < pending_stamps->size(); ++k) {
        if (!((*pending_stamps)[k] > (*pending_stamps)[k - 1])) {
          fail(source, pending_line, "stamps are not strictly increasing");
        }
      }
      rec.stamps = std::move(pending_stamps);
      pending_stamps.reset();
    }
    records.push_back(std::move(rec));
  }
  if (pending_stamps) fail(source, pending_line, "#t line is not followed by a record");
  if (records.empty()) throw DataError(source + ": no records");
  return records;
}

std::vector<UcrRecord> load_ucr(const std::filesystem::path& path) {
  const auto resolved = resolve_data_path(path);
  std::ifstream in(resolved);
  if (!in) throw DataError("cannot open '" + resolved.string() + "'");
  return parse_ucr(in, resolved.string());
}

void write_ucr(std::ostream& out, std::span<const UcrRecord> records) {
  for (const auto& rec : records) {
    if (rec.stamps) {
      out << "#t";
      for (double t : *rec.stamps) out << ',' << format_real(t);
      out << '\n';
    }
    out << rec.label;
    for (double v : rec.values) out << ',' << format_real(v);
    out << '\n';
  }
}

void save_ucr(const std::filesystem::path& path, std::span<const UcrRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_ucr(out, records);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

UcrRecord to_record(const LabeledSeries& item, bool with_stamps) {
  if (item.series.dim() != 1) throw std::invalid_argument("to_record: only 1-D series are written");
  const auto values = item.series.values();
  const auto stamps = item.series.stamps();
  UcrRecord rec{item.label, {values.begin(), values.end()}, std::nullopt};
  if (with_stamps) rec.stamps.emplace(stamps.begin(), stamps.end());
  return rec;
}

std::vector<LabeledSeries> to_labeled(std::span<const UcrRecord> records) {
  std::vector<LabeledSeries> out;
  out.reserve(records.size());
  for (const auto& rec : records) out.push_back({rec.label, rec.series()});
  return out;
}

std::filesystem::path resolve_data_path(const std::filesystem::path& path) {
  if (path.is_absolute() || std::filesystem::exists(path)) return path;
  if (const char* root = std::getenv("ELASTIKA_DATA"); root && *root) {
    const std::filesystem::path base(root);
    for (const auto& candidate : {base / path, base / path.filename()}) {
      if (std::filesystem::exists(candidate)) return candidate;
    }
  }
  return path;
}

LabeledDataset load_dataset(const std::string& name, const std::filesystem::path& train,
                            const std::filesystem::path& test) {
  const auto train_records = load_ucr(train);
  const auto test_records = load_ucr(test);
  return {name, to_labeled(train_records), to_labeled(test_records)};
}

}  // namespace elastika
