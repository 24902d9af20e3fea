#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elastika/distances.hpp"
#include "elastika/series.hpp"

namespace elastika {

struct LabeledSeries {
  std::string label;
  TimeSeries series;
};

struct LabeledDataset {
  std::string name;
  std::vector<LabeledSeries> train;
  std::vector<LabeledSeries> test;
};

/// Measures available to the classification harness. `odtw` is DTW with a
/// corridor selected on the training set; `twed` and `lcss` are tuned the
/// same way unless explicit parameters are supplied.
enum class MetricKind { ed, dtw, odtw, erp, lcss, twed, ppm };

MetricKind parse_metric_kind(std::string_view name);
std::string_view to_string(MetricKind kind);
bool is_tuned(MetricKind kind);

/// Candidate parameters in enumeration order.
struct ParamGrid {
  MetricKind kind;
  std::vector<MetricParams> candidates;
};

/// Grids: twed nu in {1e-5 .. 1} x lambda in {0, .25, .5, .75, 1}; odtw
/// corridor 0..n; lcss delta n, n/2, ... (>= 0.5) x epsilon 20, 10, ...
/// (>= 0.01). `max_length` is n, the longest training series.
ParamGrid grid_for(MetricKind kind, std::size_t max_length);
ParamGrid grid_for(MetricKind kind, std::span<const LabeledSeries> train);

/// Parameters used when a measure is evaluated without tuning.
MetricParams default_params(MetricKind kind);

/// Predicted label of each test item; nearest-neighbour ties go to the lowest
/// train index. A failing distance evaluation is rethrown naming the pair.
std::vector<std::string> nn1_predict(std::span<const LabeledSeries> train,
                                     std::span<const LabeledSeries> test,
                                     const MetricParams& params, std::size_t workers = 1);

double nn1_error_rate(std::span<const LabeledSeries> train, std::span<const LabeledSeries> test,
                      const MetricParams& params, std::size_t workers = 1);

/// Leave-one-out 1-NN error on the training set.
double loo_error(std::span<const LabeledSeries> train, const MetricParams& params,
                 std::size_t workers = 1);

struct TuneResult {
  MetricParams best;
  double loo_error = 0.0;
  std::vector<double> grid_errors;  // aligned with grid.candidates
  ParamGrid grid;
};

/// Minimises the LOO error over the grid. Ties: twed prefers the highest nu
/// then the highest lambda, odtw the lowest corridor, lcss the highest delta
/// then the highest epsilon.
TuneResult tune(std::span<const LabeledSeries> train, MetricKind kind, std::size_t workers = 1);

struct EvaluationResult {
  MetricKind kind;
  MetricParams params;
  double error = 0.0;
  std::optional<double> loo_error;
};

/// Tunes on train when the measure is tuned, then classifies test once.
EvaluationResult evaluate(const LabeledDataset& dataset, MetricKind kind, std::size_t workers = 1);

/// Applies downsample_half to every train and test series.
LabeledDataset downsample_dataset(const LabeledDataset& dataset);

struct TableRow {
  std::string dataset;
  std::vector<EvaluationResult> cells;  // one per metric
};

struct TableResult {
  std::vector<MetricKind> metrics;
  std::vector<TableRow> rows;
  std::vector<double> mean;    // per metric, over rows
  std::vector<double> stddev;  // population standard deviation
  std::vector<std::string> missing;
};

TableResult run_table(std::span<const LabeledDataset> datasets, std::span<const MetricKind> metrics,
                      bool downsampled, std::size_t workers = 1);

struct DatasetLocation {
  std::string name;
  std::string train_path;
  std::string test_path;
};

/// Loads each location; datasets that fail to load are listed in `missing`.
TableResult run_table(std::span<const DatasetLocation> locations,
                      std::span<const MetricKind> metrics, bool downsampled,
                      std::size_t workers = 1);

}  // namespace elastika
