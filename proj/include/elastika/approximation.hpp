#pragma once

#include <cstddef>
#include <vector>

#include "elastika/series.hpp"

namespace elastika {

/// Inclusive 0-based sample range covered by one constant segment.
struct Segment {
  std::size_t first;
  std::size_t last;

  std::size_t length() const noexcept { return last - first + 1; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Piecewise-constant approximation of a series with r - 1 segments.
///
/// `full` keeps every original sample and stamp with values replaced by the
/// segment means; `extremities` holds r samples: the first sample of the
/// series followed by the last sample of each segment, all carrying their
/// segment's constant value and original stamp. The first segment always
/// spans at least two samples so the extremity stamps strictly increase.
struct PwcaApproximation {
  std::size_t r = 0;
  int p_norm = 1;
  TimeSeries full;
  TimeSeries extremities;
  std::vector<Segment> segments;
  double squared_error = 0.0;  // sum of squared L2 residuals, the optimised objective
  double lp_error = 0.0;       // lp_series_distance(full, original, p_norm)
  double delta_t_avg = 0.0;    // mean stamp gap between successive samples of a segment
  double delta_t_all = 0.0;    // mean stamp gap over the whole series
};

/// Optimal segmentation of `x` into r - 1 constant segments minimising the
/// squared residual, 2 <= r < |x|. `p_norm` selects the norm of lp_error.
PwcaApproximation pwca_optimal(const TimeSeries& x, std::size_t r, int p_norm = 1);

/// Builds the approximation induced by a given segmentation (segment means).
PwcaApproximation pwca_from_segments(const TimeSeries& x, std::vector<Segment> segments,
                                     int p_norm = 1);

const TimeSeries& extremities(const PwcaApproximation& approx);

/// Levels r = p/2, p/4, ... down to 2, coarsest first. Requires p >= 4.
std::vector<PwcaApproximation> halving_pyramid(const TimeSeries& x, int p_norm = 1);

/// Extremities of the optimal approximation with r = ceil(p/2). Requires p >= 4.
TimeSeries downsample_half(const TimeSeries& x);

}  // namespace elastika
