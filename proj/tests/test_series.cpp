#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "elastika/series.hpp"
#include "elastika/synthetic.hpp"

using namespace elastika;

TEST(Validate, AcceptsMonotoneStamps) {
  EXPECT_TRUE(validate(TimeSeries::from_values({1, 2}, {1, 2})).ok);
}

TEST(Validate, RejectsEqualStamps) {
  const auto report = validate(TimeSeries::from_values({1, 2}, {2, 2}));
  EXPECT_FALSE(report.ok);
  EXPECT_EQ(report.index, 2u);
}

TEST(Validate, RejectsNonFiniteValue) {
  const auto report =
      validate(TimeSeries::from_values({1, std::numeric_limits<double>::quiet_NaN()}, {1, 2}));
  EXPECT_FALSE(report.ok);
  EXPECT_EQ(report.index, 2u);
  EXPECT_THROW(require_valid(TimeSeries::from_values({1, INFINITY}, {1, 2})), std::invalid_argument);
}

TEST(Validate, EmptySeriesIsValid) {
  EXPECT_TRUE(validate(TimeSeries{}).ok);
  EXPECT_TRUE(TimeSeries{}.empty());
}

TEST(Validate, EveryNonMonotonePermutationIsRejected) {
  std::vector<double> stamps{1, 2, 3, 4};
  int rejected = 0, accepted = 0;
  do {
    const bool ok = validate(TimeSeries::from_values({0, 0, 0, 0}, stamps)).ok;
    const bool sorted = std::is_sorted(stamps.begin(), stamps.end());
    EXPECT_EQ(ok, sorted);
    (ok ? accepted : rejected)++;
  } while (std::next_permutation(stamps.begin(), stamps.end()));
  EXPECT_EQ(accepted, 1);
  EXPECT_EQ(rejected, 23);
}

TEST(Series, IndexStampsByDefault) {
  const auto s = TimeSeries::from_values({5, 6, 7});
  EXPECT_EQ(std::vector<double>(s.stamps().begin(), s.stamps().end()), (std::vector<double>{1, 2, 3}));
}

TEST(Series, ShapeMismatchThrows) {
  EXPECT_THROW(TimeSeries(2, {1, 2, 3}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(TimeSeries::from_values({1, 2}, {1}), std::invalid_argument);
}

TEST(LpLocal, Examples) {
  const std::vector<double> zero{0}, x{1, 2}, y{4, 6};
  EXPECT_EQ(lp_local(zero, zero, 1), 0.0);
  EXPECT_DOUBLE_EQ(lp_local(x, y, 2), 5.0);
  EXPECT_DOUBLE_EQ(lp_local(x, y, 1), 7.0);
  EXPECT_NEAR(lp_local(x, y, 3), std::cbrt(27.0 + 64.0), 1e-12);
}

TEST(LpSeriesDistance, Examples) {
  const auto a = TimeSeries::from_values({1, 2});
  const auto b = TimeSeries::from_values({2, 4});
  EXPECT_DOUBLE_EQ(lp_series_distance(a, b, 1), 3.0);
  EXPECT_EQ(lp_series_distance(a, a, 1), 0.0);
  EXPECT_THROW(lp_series_distance(a, TimeSeries::from_values({1}), 1), std::invalid_argument);
}

TEST(LpSeriesDistance, MatchesNaiveLoopAndIsAMetric) {
  SeriesGenerator gen(11);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = gen.index(1, 20), dim = gen.index(1, 3);
    const int p = int(gen.index(1, 3));
    const auto a = gen.random_series(n, dim), b = gen.random_series(n, dim), c = gen.random_series(n, dim);
    double naive = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t d = 0; d < dim; ++d) acc += std::pow(std::fabs(a.values()[i * dim + d] - b.values()[i * dim + d]), p);
      naive += std::pow(acc, 1.0 / p);
    }
    const double ab = lp_series_distance(a, b, p);
    EXPECT_NEAR(ab, naive, 1e-12 * std::max(1.0, naive));
    EXPECT_NEAR(ab, lp_series_distance(b, a, p), 1e-12);
    EXPECT_LE(lp_series_distance(a, c, p), ab + lp_series_distance(b, c, p) + 1e-12);
  }
}

TEST(Minkowski, IsEuclideanOverStackedValues) {
  const auto a = TimeSeries::from_values({0, 0});
  const auto b = TimeSeries::from_values({3, 4});
  EXPECT_DOUBLE_EQ(minkowski_distance(a, b, 2), 5.0);
  EXPECT_DOUBLE_EQ(lp_series_distance(a, b, 2), 7.0);
}
