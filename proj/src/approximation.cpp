#include "elastika/approximation.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace elastika {

namespace {

// Squared residual of a constant fit over samples [s, e] from prefix sums of
// mean-centred values.
class SegmentCost {
 public:
  explicit SegmentCost(const TimeSeries& x) : dim_(x.dim()), sum_((x.size() + 1) * dim_, 0.0),
                                              sum_sq_((x.size() + 1) * dim_, 0.0) {
    std::vector<double> mean(dim_, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t k = 0; k < dim_; ++k) mean[k] += x.value(i)[k];
    }
    for (double& m : mean) m /= double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t k = 0; k < dim_; ++k) {
        const double v = x.value(i)[k] - mean[k];
        sum_[(i + 1) * dim_ + k] = sum_[i * dim_ + k] + v;
        sum_sq_[(i + 1) * dim_ + k] = sum_sq_[i * dim_ + k] + v * v;
      }
    }
  }

  double operator()(std::size_t s, std::size_t e) const {
    const double n = double(e - s + 1);
    double cost = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double sum = sum_[(e + 1) * dim_ + k] - sum_[s * dim_ + k];
      const double sq = sum_sq_[(e + 1) * dim_ + k] - sum_sq_[s * dim_ + k];
      cost += sq - sum * sum / n;
    }
    return cost > 0.0 ? cost : 0.0;
  }

 private:
  std::size_t dim_;
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
};

}  // namespace

PwcaApproximation pwca_from_segments(const TimeSeries& x, std::vector<Segment> segments,
                                     int p_norm) {
  if (segments.empty() || segments.front().first != 0 || segments.back().last + 1 != x.size()) {
    throw std::invalid_argument("pwca: segments must cover the series");
  }
  for (std::size_t k = 0; k < segments.size(); ++k) {
    if (segments[k].last < segments[k].first ||
        (k > 0 && segments[k].first != segments[k - 1].last + 1)) {
      throw std::invalid_argument("pwca: segments must be contiguous and non-empty");
    }
  }
  if (segments.front().length() < 2) {
    throw std::invalid_argument("pwca: first segment must span at least two samples");
  }

  const std::size_t dim = x.dim();
  const std::size_t p = x.size();
  std::vector<double> full_values(p * dim);
  std::vector<double> ext_values;
  std::vector<double> ext_stamps;
  ext_values.reserve((segments.size() + 1) * dim);
  ext_stamps.reserve(segments.size() + 1);

  PwcaApproximation approx;
  approx.r = segments.size() + 1;
  approx.p_norm = p_norm;

  double intra_gap_sum = 0.0;
  std::size_t intra_gap_count = 0;
  std::vector<double> level(dim);
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const Segment seg = segments[k];
    std::fill(level.begin(), level.end(), 0.0);
    for (std::size_t i = seg.first; i <= seg.last; ++i) {
      for (std::size_t c = 0; c < dim; ++c) level[c] += x.value(i)[c];
    }
    for (double& v : level) v /= double(seg.length());
    for (std::size_t i = seg.first; i <= seg.last; ++i) {
      for (std::size_t c = 0; c < dim; ++c) {
        full_values[i * dim + c] = level[c];
        const double residual = x.value(i)[c] - level[c];
        approx.squared_error += residual * residual;
      }
    }
    if (k == 0) {
      ext_values.insert(ext_values.end(), level.begin(), level.end());
      ext_stamps.push_back(x.stamp(seg.first));
    }
    ext_values.insert(ext_values.end(), level.begin(), level.end());
    ext_stamps.push_back(x.stamp(seg.last));
    intra_gap_sum += x.stamp(seg.last) - x.stamp(seg.first);
    intra_gap_count += seg.length() - 1;
  }

  std::vector<double> stamps(x.stamps().begin(), x.stamps().end());
  approx.full = TimeSeries(dim, std::move(full_values), std::move(stamps));
  approx.extremities = TimeSeries(dim, std::move(ext_values), std::move(ext_stamps));
  approx.segments = std::move(segments);
  approx.lp_error = lp_series_distance(approx.full, x, p_norm);
  approx.delta_t_avg = intra_gap_sum / double(intra_gap_count);
  approx.delta_t_all = (x.stamp(p - 1) - x.stamp(0)) / double(p - 1);
  return approx;
}

PwcaApproximation pwca_optimal(const TimeSeries& x, std::size_t r, int p_norm) {
  const std::size_t p = x.size();
  if (r < 2 || r >= p) {
    throw std::invalid_argument("pwca_optimal: r must satisfy 2 <= r < p (r = " +
                                std::to_string(r) + ", p = " + std::to_string(p) + ")");
  }
  const std::size_t segments = r - 1;
  const SegmentCost cost(x);
  constexpr double inf = std::numeric_limits<double>::infinity();

  // best[k][e]: minimal cost covering samples 0..e with k + 1 segments;
  // start[k][e]: first sample of the (k + 1)-th segment in that optimum.
  std::vector<std::vector<double>> best(segments, std::vector<double>(p, inf));
  std::vector<std::vector<std::size_t>> start(segments, std::vector<std::size_t>(p, 0));
  for (std::size_t e = 1; e < p; ++e) best[0][e] = cost(0, e);
  for (std::size_t k = 1; k < segments; ++k) {
    // k + 1 segments need at least k + 2 samples (first segment spans two).
    for (std::size_t e = k + 1; e < p; ++e) {
      for (std::size_t s = k + 1; s <= e; ++s) {
        const double candidate = best[k - 1][s - 1] + cost(s, e);
        if (candidate < best[k][e]) {
          best[k][e] = candidate;
          start[k][e] = s;
        }
      }
    }
  }

  std::vector<Segment> chosen(segments);
  std::size_t end = p - 1;
  for (std::size_t k = segments; k-- > 0;) {
    const std::size_t s = k == 0 ? 0 : start[k][end];
    chosen[k] = {s, end};
    if (k > 0) end = s - 1;
  }
  return pwca_from_segments(x, std::move(chosen), p_norm);
}

const TimeSeries& extremities(const PwcaApproximation& approx) { return approx.extremities; }

std::vector<PwcaApproximation> halving_pyramid(const TimeSeries& x, int p_norm) {
  if (x.size() < 4) throw std::invalid_argument("halving_pyramid: series needs at least 4 samples");
  std::vector<std::size_t> ranks;
  for (std::size_t r = x.size() / 2; r >= 2; r /= 2) ranks.push_back(r);
  std::vector<PwcaApproximation> levels;
  levels.reserve(ranks.size());
  for (auto it = ranks.rbegin(); it != ranks.rend(); ++it) {
    levels.push_back(pwca_optimal(x, *it, p_norm));
  }
  return levels;
}

TimeSeries downsample_half(const TimeSeries& x) {
  if (x.size() < 4) throw std::invalid_argument("downsample_half: series needs at least 4 samples");
  return pwca_optimal(x, (x.size() + 1) / 2).extremities;
}

}  // namespace elastika
