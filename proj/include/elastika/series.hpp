#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace elastika {

/// A time series of d-dimensional samples with strictly increasing time stamps.
///
/// Values are stored row-major (sample i occupies [i*d, (i+1)*d)). The object
/// is immutable once built; construction only checks the storage shape, the
/// ordering and finiteness invariants are reported by validate().
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(std::size_t dim, std::vector<double> values, std::vector<double> stamps);

  /// 1-D series stamped with the 1-based sample index.
  static TimeSeries from_values(std::vector<double> values);
  /// 1-D series with explicit stamps.
  static TimeSeries from_values(std::vector<double> values, std::vector<double> stamps);

  std::size_t size() const noexcept { return stamps_.size(); }
  bool empty() const noexcept { return stamps_.empty(); }
  std::size_t dim() const noexcept { return dim_; }

  /// Sample value, 0-based.
  std::span<const double> value(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  double stamp(std::size_t i) const noexcept { return stamps_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> stamps() const noexcept { return stamps_; }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::size_t dim_ = 1;
  std::vector<double> values_;
  std::vector<double> stamps_;
};

struct ValidationReport {
  bool ok = true;
  std::size_t index = 0;  // 1-based position of the first offending sample
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

ValidationReport validate(const TimeSeries& series);

/// Throws std::invalid_argument carrying the report when validation fails.
void require_valid(const TimeSeries& series);

/// (sum_k |x_k - y_k|^p)^(1/p).
double lp_local(std::span<const double> x, std::span<const double> y, int p_norm);

/// Sum over aligned indices of lp_local(a_i, b_i); stamps are ignored.
double lp_series_distance(const TimeSeries& a, const TimeSeries& b, int p_norm);

/// Standard Minkowski distance between the stacked value vectors, the
/// usual "Euclidean distance" baseline for 1-NN when p_norm = 2.
double minkowski_distance(const TimeSeries& a, const TimeSeries& b, int p_norm);

}  // namespace elastika
