#include "elastika/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "elastika/approximation.hpp"
#include "elastika/parallel.hpp"
#include "elastika/ucr_io.hpp"

namespace elastika {

MetricKind parse_metric_kind(std::string_view name) {
  if (name == "ed") return MetricKind::ed;
  if (name == "dtw") return MetricKind::dtw;
  if (name == "odtw") return MetricKind::odtw;
  if (name == "erp") return MetricKind::erp;
  if (name == "lcss") return MetricKind::lcss;
  if (name == "twed" || name == "otwed") return MetricKind::twed;
  if (name == "ppm") return MetricKind::ppm;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::ed: return "ed";
    case MetricKind::dtw: return "dtw";
    case MetricKind::odtw: return "odtw";
    case MetricKind::erp: return "erp";
    case MetricKind::lcss: return "lcss";
    case MetricKind::twed: return "twed";
    case MetricKind::ppm: return "ppm";
  }
  return "?";
}

bool is_tuned(MetricKind kind) {
  return kind == MetricKind::odtw || kind == MetricKind::lcss || kind == MetricKind::twed;
}

MetricParams default_params(MetricKind kind) {
  switch (kind) {
    case MetricKind::ed: return EdParams{2};
    case MetricKind::dtw: return DtwParams{std::nullopt, 2};
    case MetricKind::odtw: return DtwParams{std::nullopt, 2};
    case MetricKind::erp: return ErpParams{{}, 1};
    case MetricKind::lcss: return LcssParams{};
    case MetricKind::twed: return TwedParams{};
    case MetricKind::ppm: return PpmParams{};
  }
  throw std::invalid_argument("default_params: unknown metric");
}

ParamGrid grid_for(MetricKind kind, std::size_t max_length) {
  ParamGrid grid{kind, {}};
  switch (kind) {
    case MetricKind::twed:
      for (double nu : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
        for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
          grid.candidates.push_back(TwedParams{lambda, nu, 1});
        }
      }
      break;
    case MetricKind::odtw:
      for (std::size_t w = 0; w <= max_length; ++w) {
        grid.candidates.push_back(DtwParams{w, 2});
      }
      break;
    case MetricKind::lcss: {
      const double n = double(max_length);
      for (double delta = n; delta >= 0.5; delta /= 2.0) {
        for (double epsilon = 20.0; epsilon >= 1e-2; epsilon /= 2.0) {
          grid.candidates.push_back(LcssParams{epsilon, delta, 1});
        }
      }
      break;
    }
    default:
      grid.candidates.push_back(default_params(kind));
      break;
  }
  return grid;
}

ParamGrid grid_for(MetricKind kind, std::span<const LabeledSeries> train) {
  if (train.empty()) throw std::invalid_argument("grid_for: empty training set");
  std::size_t n = 0;
  for (const auto& item : train) n = std::max(n, item.series.size());
  return grid_for(kind, n);
}

namespace {

double checked_distance(const MetricParams& params, const TimeSeries& a, const TimeSeries& b,
                        const char* role_a, std::size_t index_a, const char* role_b,
                        std::size_t index_b) {
  auto pair_name = [&] {
    return std::string(role_a) + " #" + std::to_string(index_a) + " vs " + role_b + " #" +
           std::to_string(index_b);
  };
  double d;
  try {
    d = series_distance(params, a, b);
  } catch (const std::exception& e) {
    throw std::runtime_error(describe(params) + " failed on " + pair_name() + ": " + e.what());
  }
  if (std::isnan(d)) throw std::runtime_error(describe(params) + " returned NaN on " + pair_name());
  return d;
}

std::size_t count_errors(std::span<const LabeledSeries> truth, const std::vector<std::string>& predicted) {
  std::size_t errors = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) errors += truth[i].label != predicted[i] ? 1 : 0;
  return errors;
}

// Leave-one-out misclassification count from a symmetric distance matrix.
std::size_t loo_error_count(std::span<const LabeledSeries> train, const MetricParams& params,
                            std::size_t workers) {
  const std::size_t n = train.size();
  std::vector<double> dist(n * n, 0.0);
  parallel_for(n, workers, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i * n + j] = checked_distance(params, train[i].series, train[j].series, "train", i,
                                         "train", j);
    }
  });
  std::size_t errors = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t nearest = n;
    double best = kInfinity;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = i < j ? dist[i * n + j] : dist[j * n + i];
      if (nearest == n || d < best) {
        best = d;
        nearest = j;
      }
    }
    if (train[nearest].label != train[i].label) ++errors;
  }
  return errors;
}

double param_value(const MetricParams& params, int which) {
  if (const auto* t = std::get_if<TwedParams>(&params)) return which == 0 ? t->nu : t->lambda;
  if (const auto* l = std::get_if<LcssParams>(&params)) return which == 0 ? l->delta : l->epsilon;
  if (const auto* d = std::get_if<DtwParams>(&params)) return d->corridor ? double(*d->corridor) : kInfinity;
  return 0.0;
}

// True when `a` wins a tie against `b`.
bool preferred_on_tie(MetricKind kind, const MetricParams& a, const MetricParams& b) {
  switch (kind) {
    case MetricKind::twed:
    case MetricKind::lcss:
      if (param_value(a, 0) != param_value(b, 0)) return param_value(a, 0) > param_value(b, 0);
      return param_value(a, 1) > param_value(b, 1);
    case MetricKind::odtw:
      return param_value(a, 0) < param_value(b, 0);
    default:
      return false;
  }
}

}  // namespace

std::vector<std::string> nn1_predict(std::span<const LabeledSeries> train,
                                     std::span<const LabeledSeries> test,
                                     const MetricParams& params, std::size_t workers) {
  if (train.empty() || test.empty()) throw std::invalid_argument("nn1: empty train or test set");
  std::vector<std::string> predicted(test.size());
  parallel_for(test.size(), workers, [&](std::size_t t) {
    std::size_t nearest = 0;
    double best = kInfinity;
    for (std::size_t j = 0; j < train.size(); ++j) {
      const double d = checked_distance(params, test[t].series, train[j].series, "test", t, "train", j);
      if (j == 0 || d < best) {
        best = d;
        nearest = j;
      }
    }
    predicted[t] = train[nearest].label;
  });
  return predicted;
}

double nn1_error_rate(std::span<const LabeledSeries> train, std::span<const LabeledSeries> test,
                      const MetricParams& params, std::size_t workers) {
  const auto predicted = nn1_predict(train, test, params, workers);
  return double(count_errors(test, predicted)) / double(test.size());
}

double loo_error(std::span<const LabeledSeries> train, const MetricParams& params,
                 std::size_t workers) {
  if (train.size() < 2) throw std::invalid_argument("loo_error: need at least two training items");
  return double(loo_error_count(train, params, workers)) / double(train.size());
}

TuneResult tune(std::span<const LabeledSeries> train, MetricKind kind, std::size_t workers) {
  if (kind == MetricKind::ppm) throw std::invalid_argument("tune: ppm is not a classification measure");
  TuneResult result;
  result.grid = grid_for(kind, train);
  const auto& candidates = result.grid.candidates;
  if (candidates.empty()) throw std::invalid_argument("tune: empty grid");

  std::vector<std::size_t> counts(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    counts[k] = loo_error_count(train, candidates[k], workers);
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    if (counts[k] < counts[best] ||
        (counts[k] == counts[best] && preferred_on_tie(kind, candidates[k], candidates[best]))) {
      best = k;
    }
  }
  result.best = candidates[best];
  result.loo_error = double(counts[best]) / double(train.size());
  result.grid_errors.reserve(counts.size());
  for (std::size_t c : counts) result.grid_errors.push_back(double(c) / double(train.size()));
  return result;
}

EvaluationResult evaluate(const LabeledDataset& dataset, MetricKind kind, std::size_t workers) {
  if (kind == MetricKind::ppm) throw std::invalid_argument("ppm is not a classification measure");
  EvaluationResult result{kind, default_params(kind), 0.0, std::nullopt};
  if (is_tuned(kind)) {
    TuneResult tuned = tune(dataset.train, kind, workers);
    result.params = tuned.best;
    result.loo_error = tuned.loo_error;
  }
  result.error = nn1_error_rate(dataset.train, dataset.test, result.params, workers);
  return result;
}

LabeledDataset downsample_dataset(const LabeledDataset& dataset) {
  LabeledDataset reduced{dataset.name, {}, {}};
  auto reduce = [](const std::vector<LabeledSeries>& items) {
    std::vector<LabeledSeries> out;
    out.reserve(items.size());
    for (const auto& item : items) out.push_back({item.label, downsample_half(item.series)});
    return out;
  };
  reduced.train = reduce(dataset.train);
  reduced.test = reduce(dataset.test);
  return reduced;
}

namespace {

void summarise(TableResult& table) {
  const std::size_t m = table.metrics.size();
  table.mean.assign(m, 0.0);
  table.stddev.assign(m, 0.0);
  if (table.rows.empty()) return;
  const double n = double(table.rows.size());
  for (std::size_t k = 0; k < m; ++k) {
    double sum = 0.0;
    for (const auto& row : table.rows) sum += row.cells[k].error;
    const double mean = sum / n;
    double sq = 0.0;
    for (const auto& row : table.rows) sq += (row.cells[k].error - mean) * (row.cells[k].error - mean);
    table.mean[k] = mean;
    table.stddev[k] = std::sqrt(sq / n);
  }
}

}  // namespace

TableResult run_table(std::span<const LabeledDataset> datasets, std::span<const MetricKind> metrics,
                      bool downsampled, std::size_t workers) {
  TableResult table;
  table.metrics.assign(metrics.begin(), metrics.end());
  for (const auto& dataset : datasets) {
    const LabeledDataset reduced = downsampled ? downsample_dataset(dataset) : LabeledDataset{};
    const LabeledDataset& used = downsampled ? reduced : dataset;
    TableRow row{dataset.name, {}};
    for (MetricKind kind : metrics) row.cells.push_back(evaluate(used, kind, workers));
    table.rows.push_back(std::move(row));
  }
  summarise(table);
  return table;
}

TableResult run_table(std::span<const DatasetLocation> locations,
                      std::span<const MetricKind> metrics, bool downsampled, std::size_t workers) {
  std::vector<LabeledDataset> loaded;
  std::vector<std::string> missing;
  for (const auto& loc : locations) {
    try {
      loaded.push_back(load_dataset(loc.name, loc.train_path, loc.test_path));
    } catch (const std::exception& e) {
      missing.push_back(loc.name + ": " + e.what());
    }
  }
  TableResult table = run_table(loaded, metrics, downsampled, workers);
  table.missing = std::move(missing);
  return table;
}

}  // namespace elastika
