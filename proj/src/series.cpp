#include "elastika/series.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace elastika {

TimeSeries::TimeSeries(std::size_t dim, std::vector<double> values, std::vector<double> stamps)
    : dim_(dim), values_(std::move(values)), stamps_(std::move(stamps)) {
  if (dim_ == 0) throw std::invalid_argument("TimeSeries: dimension must be >= 1");
  if (values_.size() != stamps_.size() * dim_) {
    throw std::invalid_argument("TimeSeries: value storage does not match stamps x dim");
  }
}

TimeSeries TimeSeries::from_values(std::vector<double> values) {
  std::vector<double> stamps(values.size());
  std::iota(stamps.begin(), stamps.end(), 1.0);
  return TimeSeries(1, std::move(values), std::move(stamps));
}

TimeSeries TimeSeries::from_values(std::vector<double> values, std::vector<double> stamps) {
  return TimeSeries(1, std::move(values), std::move(stamps));
}

ValidationReport validate(const TimeSeries& series) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (double v : series.value(i)) {
      if (!std::isfinite(v)) return {false, i + 1, "non-finite value"};
    }
    if (!std::isfinite(series.stamp(i))) return {false, i + 1, "non-finite time stamp"};
    if (i > 0 && !(series.stamp(i) > series.stamp(i - 1))) {
      return {false, i + 1, "time stamps must strictly increase"};
    }
  }
  return {};
}

void require_valid(const TimeSeries& series) {
  auto report = validate(series);
  if (!report) {
    throw std::invalid_argument("invalid series at sample " + std::to_string(report.index) + ": " +
                                report.reason);
  }
}

double lp_local(std::span<const double> x, std::span<const double> y, int p_norm) {
  if (x.size() != y.size()) throw std::invalid_argument("lp_local: dimension mismatch");
  if (p_norm < 1) throw std::invalid_argument("lp_local: p_norm must be >= 1");
  if (x.size() == 1) return std::abs(x[0] - y[0]);
  double acc = 0.0;
  switch (p_norm) {
    case 1:
      for (std::size_t k = 0; k < x.size(); ++k) acc += std::abs(x[k] - y[k]);
      return acc;
    case 2:
      for (std::size_t k = 0; k < x.size(); ++k) acc += (x[k] - y[k]) * (x[k] - y[k]);
      return std::sqrt(acc);
    default:
      for (std::size_t k = 0; k < x.size(); ++k) acc += std::pow(std::abs(x[k] - y[k]), p_norm);
      return std::pow(acc, 1.0 / p_norm);
  }
}

namespace {

void require_same_shape(const TimeSeries& a, const TimeSeries& b, const char* who) {
  if (a.empty() || b.empty()) throw std::invalid_argument(std::string(who) + ": empty series");
  if (a.size() != b.size()) throw std::invalid_argument(std::string(who) + ": length mismatch");
  if (a.dim() != b.dim()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

double lp_series_distance(const TimeSeries& a, const TimeSeries& b, int p_norm) {
  require_same_shape(a, b, "lp_series_distance");
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += lp_local(a.value(i), b.value(i), p_norm);
  return total;
}

double minkowski_distance(const TimeSeries& a, const TimeSeries& b, int p_norm) {
  require_same_shape(a, b, "minkowski_distance");
  return lp_local(a.values(), b.values(), p_norm);
}

}  // namespace elastika
