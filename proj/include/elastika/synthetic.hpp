#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "elastika/series.hpp"

namespace elastika {

/// Seeded generators for property suites, benchmarks and the selftest.
/// Uniform draws are taken from the raw 64-bit engine output so sequences do
/// not depend on the standard library's distribution implementations.
class SeriesGenerator {
 public:
  explicit SeriesGenerator(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi);

  /// Values uniform in [-scale, scale]; stamps start at a random positive
  /// offset and advance by gaps in [0.5, 2), or are 1..n when `index_stamps`.
  TimeSeries random_series(std::size_t length, std::size_t dim, double scale = 1.0,
                           bool index_stamps = false);

  /// Smooth 1-D series: a mixture of three sinusoids with random frequency
  /// and phase plus small noise, stamped 1..n.
  TimeSeries smooth_series(std::size_t length, double noise = 0.05);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Database of smooth series used by range-query checks and benchmarks.
std::vector<TimeSeries> synthetic_database(std::size_t count, std::size_t length,
                                           std::uint64_t seed);

}  // namespace elastika
