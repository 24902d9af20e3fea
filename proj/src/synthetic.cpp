#include "elastika/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace elastika {

double SeriesGenerator::uniform(double lo, double hi) {
  const double unit = double(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

std::size_t SeriesGenerator::index(std::size_t lo, std::size_t hi) {
  if (hi < lo) throw std::invalid_argument("SeriesGenerator::index: empty range");
  const std::uint64_t span = hi - lo + 1;
  return lo + std::size_t(engine_() % span);
}

TimeSeries SeriesGenerator::random_series(std::size_t length, std::size_t dim, double scale,
                                          bool index_stamps) {
  std::vector<double> values(length * dim);
  for (double& v : values) v = uniform(-scale, scale);
  std::vector<double> stamps(length);
  double t = index_stamps ? 1.0 : uniform(0.5, 2.0);
  for (std::size_t i = 0; i < length; ++i) {
    stamps[i] = t;
    t += index_stamps ? 1.0 : uniform(0.5, 2.0);
  }
  return TimeSeries(dim, std::move(values), std::move(stamps));
}

TimeSeries SeriesGenerator::smooth_series(std::size_t length, double noise) {
  double amp[3], freq[3], phase[3];
  for (int k = 0; k < 3; ++k) {
    amp[k] = uniform(0.5, 3.0) / double(k + 1);
    freq[k] = uniform(0.5, 3.0) * double(k + 1);
    phase[k] = uniform(0.0, 2.0 * std::numbers::pi);
  }
  const double offset = uniform(-2.0, 2.0);
  std::vector<double> values(length);
  for (std::size_t i = 0; i < length; ++i) {
    const double x = double(i) / double(length);
    double v = offset;
    for (int k = 0; k < 3; ++k) v += amp[k] * std::sin(2.0 * std::numbers::pi * freq[k] * x + phase[k]);
    values[i] = v + uniform(-noise, noise);
  }
  return TimeSeries::from_values(std::move(values));
}

std::vector<TimeSeries> synthetic_database(std::size_t count, std::size_t length,
                                           std::uint64_t seed) {
  SeriesGenerator gen(seed);
  std::vector<TimeSeries> db;
  db.reserve(count);
  for (std::size_t i = 0; i < count; ++i) db.push_back(gen.smooth_series(length));
  return db;
}

}  // namespace elastika
