#include <gtest/gtest.h>

#include <cmath>

#include "elastika/classify.hpp"
#include "elastika/synthetic.hpp"

using namespace elastika;

namespace {

// Two well separated classes: constant levels 0 and 10 with small noise.
std::vector<LabeledSeries> separable(std::size_t per_class, std::size_t length, std::uint64_t seed) {
  SeriesGenerator gen(seed);
  std::vector<LabeledSeries> out;
  for (std::size_t k = 0; k < 2 * per_class; ++k) {
    const double level = k % 2 ? 10.0 : 0.0;
    std::vector<double> v(length);
    for (double& x : v) x = level + gen.uniform(-0.1, 0.1);
    out.push_back({k % 2 ? "b" : "a", TimeSeries::from_values(v)});
  }
  return out;
}

// Class "early" has a bump near index 4, class "late" near index 14; free
// warping can slide one onto the other.
std::vector<LabeledSeries> shifted_bumps(std::size_t per_class, std::uint64_t seed) {
  SeriesGenerator gen(seed);
  std::vector<LabeledSeries> out;
  for (std::size_t k = 0; k < 2 * per_class; ++k) {
    const bool late = k % 2;
    // Amplitude is independent of the class, so free warping pairs series by
    // amplitude while a narrow corridor still sees where the bump sits.
    const double height = (k / 2) % 2 ? 1.3 : 1.0;
    const double centre = (late ? 14.0 : 4.0) + gen.uniform(-0.5, 0.5);
    std::vector<double> v(20);
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = height * std::exp(-0.5 * (double(i) - centre) * (double(i) - centre)) + gen.uniform(-0.01, 0.01);
    }
    out.push_back({late ? "late" : "early", TimeSeries::from_values(v)});
  }
  return out;
}

std::vector<LabeledSeries> random_labeled(std::size_t n, std::uint64_t seed) {
  SeriesGenerator gen(seed);
  std::vector<LabeledSeries> out;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back({std::to_string(gen.index(0, 2)), gen.random_series(10, 1, 1.0, true)});
  }
  return out;
}

double naive_loo(const std::vector<LabeledSeries>& train, const MetricParams& prm) {
  std::size_t errors = 0;
  for (std::size_t i = 0; i < train.size(); ++i) {
    double best = INFINITY;
    std::string label;
    for (std::size_t j = 0; j < train.size(); ++j) {
      if (i == j) continue;
      const double d = series_distance(prm, train[i].series, train[j].series);
      if (d < best) {
        best = d;
        label = train[j].label;
      }
    }
    errors += label != train[i].label;
  }
  return double(errors) / double(train.size());
}

}  // namespace

TEST(Grid, Sizes) {
  EXPECT_EQ(grid_for(MetricKind::twed, 50).candidates.size(), 30u);
  EXPECT_EQ(grid_for(MetricKind::odtw, 100).candidates.size(), 101u);
  const auto& first = std::get<DtwParams>(grid_for(MetricKind::odtw, 100).candidates.front());
  const auto& last = std::get<DtwParams>(grid_for(MetricKind::odtw, 100).candidates.back());
  EXPECT_EQ(*first.corridor, 0u);
  EXPECT_EQ(*last.corridor, 100u);
}

TEST(Grid, TwedValues) {
  const auto grid = grid_for(MetricKind::twed, 10);
  const double nus[] = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      const auto& p = std::get<TwedParams>(grid.candidates[i * 5 + j]);
      EXPECT_EQ(p.nu, nus[i]);
      EXPECT_EQ(p.lambda, 0.25 * double(j));
    }
  }
}

TEST(Grid, LcssEpsilonAndDeltaSequences) {
  const auto grid = grid_for(MetricKind::lcss, 10);
  const std::vector<double> eps{20, 10, 5, 2.5, 1.25, 0.625, 0.3125, 0.15625, 0.078125, 0.0390625, 0.01953125};
  const std::vector<double> deltas{10, 5, 2.5, 1.25, 0.625};
  ASSERT_EQ(grid.candidates.size(), eps.size() * deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    for (std::size_t j = 0; j < eps.size(); ++j) {
      const auto& p = std::get<LcssParams>(grid.candidates[i * eps.size() + j]);
      EXPECT_EQ(p.delta, deltas[i]);
      EXPECT_EQ(p.epsilon, eps[j]);
    }
  }
}

TEST(Nn1, TestSubsetOfTrainHasNoError) {
  const auto train = random_labeled(15, 41);
  const std::vector<LabeledSeries> test(train.begin(), train.begin() + 6);
  for (const MetricParams& prm : {MetricParams{EdParams{}}, MetricParams{TwedParams{0.1, 0.01, 1}},
                                  MetricParams{ErpParams{}}, MetricParams{DtwParams{}}}) {
    EXPECT_EQ(nn1_error_rate(train, test, prm), 0.0);
  }
}

TEST(Nn1, TiesGoToLowestTrainIndex) {
  const auto s = TimeSeries::from_values({1, 2, 3});
  const std::vector<LabeledSeries> train{{"x", s}, {"y", s}};
  EXPECT_EQ(nn1_predict(train, std::vector<LabeledSeries>{{"?", s}}, EdParams{}), (std::vector<std::string>{"x"}));
}

TEST(Nn1, FailingPairIsNamed) {
  const std::vector<LabeledSeries> train{{"a", TimeSeries::from_values({1, 2})}};
  const std::vector<LabeledSeries> test{{"a", TimeSeries::from_values({1, 2, 3})}};
  try {
    nn1_predict(train, test, EdParams{});
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("test #0 vs train #0"), std::string::npos);
  }
}

TEST(Loo, TrivialCases) {
  const auto s = TimeSeries::from_values({1, 2, 3});
  EXPECT_EQ(loo_error(std::vector<LabeledSeries>(4, {"a", s}), EdParams{}), 0.0);
  const std::vector<LabeledSeries> two{{"a", s}, {"b", TimeSeries::from_values({4, 5, 6})}};
  EXPECT_EQ(loo_error(two, EdParams{}), 1.0);
  EXPECT_THROW(loo_error(std::vector<LabeledSeries>{{"a", s}}, EdParams{}), std::invalid_argument);
}

TEST(Loo, MatchesNaiveReference) {
  const auto train = random_labeled(20, 42);
  for (const MetricParams& prm : {MetricParams{EdParams{}}, MetricParams{TwedParams{0.25, 0.1, 1}},
                                  MetricParams{DtwParams{std::size_t{2}, 2}}, MetricParams{LcssParams{0.5, 3, 1}}}) {
    EXPECT_DOUBLE_EQ(loo_error(train, prm), naive_loo(train, prm)) << describe(prm);
  }
}

TEST(Tune, TiesPickDocumentedCorners) {
  const auto train = separable(4, 12, 43);
  const auto twed_result = tune(train, MetricKind::twed);
  EXPECT_EQ(twed_result.loo_error, 0.0);
  const auto& best = std::get<TwedParams>(twed_result.best);
  EXPECT_EQ(best.nu, 1.0);
  EXPECT_EQ(best.lambda, 1.0);
  const auto dtw_result = tune(train, MetricKind::odtw);
  EXPECT_EQ(*std::get<DtwParams>(dtw_result.best).corridor, 0u);
  const auto lcss_result = tune(train, MetricKind::lcss);
  const auto& lbest = std::get<LcssParams>(lcss_result.best);
  EXPECT_EQ(lcss_result.loo_error, 0.0);
  EXPECT_EQ(lbest.delta, 12.0);
  double widest = 0.0;
  for (std::size_t k = 0; k < lcss_result.grid.candidates.size(); ++k) {
    const auto& c = std::get<LcssParams>(lcss_result.grid.candidates[k]);
    if (c.delta == 12.0 && lcss_result.grid_errors[k] == 0.0) widest = std::max(widest, c.epsilon);
  }
  EXPECT_EQ(lbest.epsilon, widest);
  EXPECT_LT(lbest.epsilon, 20.0);  // a tolerance covering both levels cannot separate them
}

TEST(Tune, NarrowCorridorWinsWhenWarpsCrossClasses) {
  const auto train = shifted_bumps(6, 44);
  const auto result = tune(train, MetricKind::odtw);
  const std::size_t chosen = *std::get<DtwParams>(result.best).corridor;
  EXPECT_LT(chosen, 20u);
  EXPECT_LT(result.loo_error, result.grid_errors.back());
}

TEST(Evaluate, DeterministicAcrossWorkerCounts) {
  LabeledDataset ds{"rand", random_labeled(16, 45), random_labeled(10, 46)};
  for (MetricKind kind : {MetricKind::twed, MetricKind::odtw, MetricKind::ed}) {
    const auto one = evaluate(ds, kind, 1);
    const auto four = evaluate(ds, kind, 4);
    EXPECT_EQ(one.error, four.error);
    EXPECT_EQ(describe(one.params), describe(four.params));
  }
  EXPECT_THROW(evaluate(ds, MetricKind::ppm), std::invalid_argument);
}

TEST(Evaluate, PositiveScalingKeepsPredictions) {
  auto train = random_labeled(14, 47), test = random_labeled(9, 48);
  auto scaled = [](std::vector<LabeledSeries> items, double c) {
    for (auto& item : items) {
      std::vector<double> v(item.series.values().begin(), item.series.values().end());
      for (double& x : v) x *= c;
      item.series = TimeSeries::from_values(v, {item.series.stamps().begin(), item.series.stamps().end()});
    }
    return items;
  };
  const auto train3 = scaled(train, 3.7), test3 = scaled(test, 3.7);
  for (const MetricParams& prm : {MetricParams{EdParams{}}, MetricParams{DtwParams{}}, MetricParams{ErpParams{}},
                                  MetricParams{TwedParams{0.0, 0.0, 1}}}) {
    EXPECT_EQ(nn1_predict(train, test, prm), nn1_predict(train3, test3, prm)) << describe(prm);
  }
}

TEST(Table, SingleCellStatistics) {
  const std::vector<LabeledDataset> one{{"sep", separable(3, 8, 49), separable(2, 8, 50)}};
  const std::vector<MetricKind> kinds{MetricKind::ed};
  const auto table = run_table(one, kinds, false);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(table.mean[0], table.rows[0].cells[0].error);
  EXPECT_EQ(table.stddev[0], 0.0);
}

TEST(Table, PopulationStandardDeviation) {
  // Error 0 on the separable set, 1 on a set whose test labels are swapped.
  auto swapped = separable(2, 8, 51);
  for (auto& item : swapped) item.label = item.label == "a" ? "b" : "a";
  const std::vector<LabeledDataset> sets{{"good", separable(3, 8, 52), separable(2, 8, 53)},
                                         {"bad", separable(3, 8, 54), swapped}};
  const std::vector<MetricKind> kinds{MetricKind::ed};
  const auto table = run_table(sets, kinds, false);
  EXPECT_EQ(table.rows[0].cells[0].error, 0.0);
  EXPECT_EQ(table.rows[1].cells[0].error, 1.0);
  EXPECT_DOUBLE_EQ(table.mean[0], 0.5);
  EXPECT_DOUBLE_EQ(table.stddev[0], 0.5);
}

TEST(Table, MissingLocationsAreListed) {
  const std::vector<DatasetLocation> locs{{"ghost", "/nonexistent/a_TRAIN", "/nonexistent/a_TEST"}};
  const std::vector<MetricKind> kinds{MetricKind::ed};
  const auto table = run_table(locs, kinds, false);
  EXPECT_TRUE(table.rows.empty());
  ASSERT_EQ(table.missing.size(), 1u);
  EXPECT_EQ(table.missing[0].rfind("ghost", 0), 0u);
}

TEST(Downsample, DatasetKeepsLabels) {
  LabeledDataset ds{"rand", random_labeled(6, 55), random_labeled(4, 56)};
  const auto half = downsample_dataset(ds);
  ASSERT_EQ(half.train.size(), ds.train.size());
  for (std::size_t i = 0; i < ds.train.size(); ++i) {
    EXPECT_EQ(half.train[i].label, ds.train[i].label);
    EXPECT_EQ(half.train[i].series.size(), (ds.train[i].series.size() + 1) / 2);
  }
}

TEST(MetricKinds, ParseAndPrint) {
  for (MetricKind k : {MetricKind::ed, MetricKind::dtw, MetricKind::odtw, MetricKind::erp, MetricKind::lcss,
                       MetricKind::twed, MetricKind::ppm}) {
    EXPECT_EQ(parse_metric_kind(to_string(k)), k);
  }
  EXPECT_EQ(parse_metric_kind("otwed"), MetricKind::twed);
  EXPECT_THROW(parse_metric_kind("cosine"), std::invalid_argument);
}
