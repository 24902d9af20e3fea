#include "elastika/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "elastika/approximation.hpp"
#include "elastika/classify.hpp"
#include "elastika/csv.hpp"
#include "elastika/distances.hpp"
#include "elastika/pruning.hpp"
#include "elastika/selftest.hpp"
#include "elastika/synthetic.hpp"
#include "elastika/ucr_io.hpp"

namespace elastika {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flags shared by the measure-aware subcommands.
struct MeasureFlags {
  std::string metric = "twed";
  std::optional<double> lambda;
  std::optional<double> nu;
  std::optional<int> lp;
  std::optional<std::size_t> corridor;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::vector<double> gap;
};

struct CommonFlags {
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  std::string out;
};

void add_measure_flags(CLI::App* cmd, MeasureFlags& m) {
  const CLI::Validator known_metrics(
      [](std::string& text) -> std::string {
        std::stringstream list(text);
        std::string item;
        while (std::getline(list, item, ',')) {
          try {
            parse_metric_kind(item);
          } catch (const std::invalid_argument& e) {
            return e.what();
          }
        }
        return {};
      },
      "METRIC[,METRIC...]");
  cmd->add_option("--metric", m.metric, "ed, dtw, odtw, erp, lcss, twed or ppm")->check(known_metrics);
  cmd->add_option("--lambda", m.lambda, "twed delete penalty");
  cmd->add_option("--nu", m.nu, "twed stiffness");
  cmd->add_option("--lp", m.lp, "local norm")->check(CLI::IsMember({1, 2}));
  cmd->add_option("--corridor", m.corridor, "dtw Sakoe-Chiba half width");
  cmd->add_option("--epsilon", m.epsilon, "lcss value tolerance");
  cmd->add_option("--delta", m.delta, "lcss index window");
  cmd->add_option("--gap", m.gap, "erp gap element")->delimiter(',');
}

void add_common_flags(CLI::App* cmd, CommonFlags& c) {
  cmd->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--out", c.out, "output file (default stdout)");
}

// Explicit parameters from the flags, or nullopt when the measure should be
// tuned on a training set.
std::optional<MetricParams> explicit_params(const MeasureFlags& m) {
  const MetricKind kind = parse_metric_kind(m.metric);
  switch (kind) {
    case MetricKind::ed:
      return EdParams{m.lp.value_or(2)};
    case MetricKind::dtw:
      return DtwParams{m.corridor, m.lp.value_or(2)};
    case MetricKind::odtw:
      if (!m.corridor) return std::nullopt;
      return DtwParams{m.corridor, m.lp.value_or(2)};
    case MetricKind::erp:
      return ErpParams{m.gap, m.lp.value_or(1)};
    case MetricKind::lcss:
      if (!m.epsilon && !m.delta) return std::nullopt;
      if (!m.epsilon || !m.delta) throw UsageError("lcss needs both --epsilon and --delta");
      return LcssParams{*m.epsilon, *m.delta, m.lp.value_or(1)};
    case MetricKind::twed:
      if (!m.lambda && !m.nu) return std::nullopt;
      return TwedParams{m.lambda.value_or(0.0), m.nu.value_or(1.0), m.lp.value_or(1)};
    case MetricKind::ppm:
      return PpmParams{};
  }
  return std::nullopt;
}

void validate_params(const MetricParams& params) {
  if (const auto* t = std::get_if<TwedParams>(&params)) {
    if (!(t->lambda >= 0.0) || !(t->nu >= 0.0)) throw UsageError("--lambda and --nu must be >= 0");
  }
  if (const auto* l = std::get_if<LcssParams>(&params)) {
    if (!(l->epsilon > 0.0) || !(l->delta > 0.0)) throw UsageError("--epsilon and --delta must be > 0");
  }
}

std::string dataset_name(const std::string& train_path) {
  std::string stem = std::filesystem::path(train_path).stem().string();
  for (const char* suffix : {"_TRAIN", "_train", "-train", "_Train"}) {
    const std::string s(suffix);
    if (stem.size() > s.size() && stem.ends_with(s)) return stem.substr(0, stem.size() - s.size());
  }
  return stem;
}

// Writes to --out when given, otherwise to `out`.
void deliver(const std::string& text, const CommonFlags& common, std::ostream& out) {
  if (common.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.out, std::ios::binary);
  if (!file) throw DataError("cannot write '" + common.out + "'");
  file << text;
  if (!file) throw DataError("write failed for '" + common.out + "'");
}

std::string path_text(const std::vector<EditStep>& path) {
  std::string text;
  for (const auto& step : path) {
    const char* op = step.op == EditOp::match ? "match" : step.op == EditOp::delete_a ? "delete-a" : "delete-b";
    text += std::string(op) + "," + std::to_string(step.i) + "," + std::to_string(step.j) + "\n";
  }
  return text;
}

std::vector<double> values_of(const TimeSeries& s) {
  if (s.dim() != 1) throw UsageError("ppm needs 1-D series");
  return {s.values().begin(), s.values().end()};
}

int cmd_dist(const MeasureFlags& m, const CommonFlags& common, const std::string& file_a,
             const std::string& file_b, std::size_t index_a, std::size_t index_b, bool with_path,
             std::ostream& out) {
  const auto recs_a = load_ucr(file_a);
  const auto recs_b = load_ucr(file_b);
  if (index_a >= recs_a.size() || index_b >= recs_b.size()) throw DataError("record index out of range");
  const TimeSeries a = recs_a[index_a].series();
  const TimeSeries b = recs_b[index_b].series();
  require_valid(a);
  require_valid(b);
  const MetricParams params =
      explicit_params(m).value_or(default_params(parse_metric_kind(m.metric)));
  validate_params(params);
  const StorageMode mode = with_path ? StorageMode::full_matrix : StorageMode::cost_only;

  std::optional<AlignmentResult> aligned;
  if (const auto* t = std::get_if<TwedParams>(&params)) aligned = twed(a, b, *t, mode);
  else if (const auto* d = std::get_if<DtwParams>(&params)) aligned = dtw(a, b, *d, mode);
  else if (const auto* e = std::get_if<ErpParams>(&params)) aligned = erp(a, b, *e, mode);
  else if (std::holds_alternative<PpmParams>(params)) aligned = ppm(values_of(a), values_of(b), mode);

  std::string text;
  if (aligned) {
    text = format_real(aligned->cost) + "\n";
    if (with_path && aligned->path) text += path_text(*aligned->path);
  } else {
    if (with_path) throw UsageError("--path is available for twed, dtw, erp and ppm only");
    text = format_real(series_distance(params, a, b)) + "\n";
  }
  deliver(text, common, out);
  return kExitOk;
}

CsvTable evaluation_csv(const std::vector<std::pair<std::string, EvaluationResult>>& rows) {
  CsvTable table{{"dataset", "metric", "params", "error", "loo_error"}, {}};
  for (const auto& [name, r] : rows) {
    table.rows.push_back({name, std::string(to_string(r.kind)), describe(r.params), format_real(r.error),
                          r.loo_error ? format_real(*r.loo_error) : std::string()});
  }
  return table;
}

int cmd_classify(const MeasureFlags& m, const CommonFlags& common,
                 const std::vector<std::string>& files, bool downsample, bool wide,
                 std::ostream& out) {
  if (files.empty() || files.size() % 2 != 0) throw UsageError("classify expects TRAIN TEST file pairs");
  std::vector<MetricKind> kinds;
  {
    std::stringstream list(m.metric);
    std::string item;
    while (std::getline(list, item, ',')) kinds.push_back(parse_metric_kind(item));
  }
  for (MetricKind k : kinds) {
    if (k == MetricKind::ppm) throw UsageError("ppm is not available for classification");
  }
  std::vector<LabeledDataset> datasets;
  for (std::size_t i = 0; i < files.size(); i += 2) {
    LabeledDataset ds = load_dataset(dataset_name(files[i]), files[i], files[i + 1]);
    for (const auto* part : {&ds.train, &ds.test}) {
      for (const auto& item : *part) require_valid(item.series);
    }
    datasets.push_back(downsample ? downsample_dataset(ds) : std::move(ds));
  }

  if (wide) {
    const TableResult table = run_table(datasets, kinds, false, common.workers);
    deliver(to_csv(table_csv(table)), common, out);
    return kExitOk;
  }
  std::vector<std::pair<std::string, EvaluationResult>> rows;
  for (const auto& ds : datasets) {
    for (MetricKind kind : kinds) {
      MeasureFlags single = m;
      single.metric = std::string(to_string(kind));
      if (auto params = explicit_params(single)) {
        validate_params(*params);
        rows.emplace_back(ds.name, EvaluationResult{kind, *params,
                                                    nn1_error_rate(ds.train, ds.test, *params, common.workers),
                                                    std::nullopt});
      } else {
        rows.emplace_back(ds.name, evaluate(ds, kind, common.workers));
      }
    }
  }
  deliver(to_csv(evaluation_csv(rows)), common, out);
  return kExitOk;
}

int cmd_tune(const MeasureFlags& m, const CommonFlags& common, const std::string& train_file,
             bool full_grid, std::ostream& out) {
  const MetricKind kind = parse_metric_kind(m.metric);
  if (kind == MetricKind::ppm) throw UsageError("ppm is not available for classification");
  const auto train = to_labeled(load_ucr(train_file));
  for (const auto& item : train) require_valid(item.series);
  const TuneResult result = tune(train, kind, common.workers);
  CsvTable table{{"metric", "params", "loo_error"}, {}};
  if (full_grid) {
    for (std::size_t k = 0; k < result.grid.candidates.size(); ++k) {
      table.rows.push_back({std::string(to_string(kind)), describe(result.grid.candidates[k]),
                            format_real(result.grid_errors[k])});
    }
  } else {
    table.rows.push_back({std::string(to_string(kind)), describe(result.best), format_real(result.loo_error)});
  }
  deliver(to_csv(table), common, out);
  return kExitOk;
}

int cmd_downsample(const CommonFlags& common, const std::string& file, std::ostream& out) {
  const auto records = load_ucr(file);
  std::vector<UcrRecord> reduced;
  reduced.reserve(records.size());
  for (const auto& rec : records) {
    const TimeSeries s = rec.series();
    require_valid(s);
    reduced.push_back(to_record({rec.label, downsample_half(s)}, true));
  }
  std::ostringstream text;
  write_ucr(text, reduced);
  deliver(text.str(), common, out);
  return kExitOk;
}

std::vector<TimeSeries> load_series(const std::string& file) {
  std::vector<TimeSeries> out;
  for (const auto& rec : load_ucr(file)) {
    out.push_back(rec.series());
    require_valid(out.back());
  }
  return out;
}

int cmd_rangequery(const MeasureFlags& m, const CommonFlags& common, const std::string& db_file,
                   const std::string& query_file, const std::vector<double>& radii, std::ostream& out) {
  if (radii.empty()) throw UsageError("--radius is required");
  const auto db = load_series(db_file);
  const auto queries = load_series(query_file);
  const RangeIndex index = build_index(db, m.lambda.value_or(0.01), m.nu.value_or(0.01), {true, common.workers});
  std::vector<RangeQueryReport> reports;
  std::vector<std::size_t> query_ids;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const RangeIndexEntry entry = index_series(db.size(), queries[q], index.params, true);
    for (double r : radii) {
      reports.push_back(fdf_range_query(entry, index, r, common.workers));
      query_ids.push_back(q);
    }
  }
  CsvTable table = range_report_csv(reports);
  table.header.insert(table.header.begin(), "query");
  table.header.push_back("match_ids");
  for (std::size_t k = 0; k < reports.size(); ++k) {
    std::string ids;
    for (std::size_t id : reports[k].match_ids()) ids += (ids.empty() ? "" : " ") + std::to_string(id);
    table.rows[k].insert(table.rows[k].begin(), std::to_string(query_ids[k]));
    table.rows[k].push_back(ids);
  }
  deliver(to_csv(table), common, out);
  return kExitOk;
}

int cmd_bench(const MeasureFlags& m, const CommonFlags& common, const std::string& db_file,
              std::size_t size, std::size_t length, std::size_t query_count,
              const std::vector<double>& radii, std::ostream& out) {
  if (radii.empty()) throw UsageError("--radius is required");
  const std::vector<TimeSeries> db = db_file.empty() ? synthetic_database(size, length, common.seed)
                                                     : load_series(db_file);
  const auto queries = synthetic_database(query_count, db.empty() ? length : db.front().size(),
                                          common.seed ^ 0x9e3779b97f4a7c15ULL);
  const RangeIndex index = build_index(db, m.lambda.value_or(0.01), m.nu.value_or(0.01), {true, common.workers});
  std::vector<RangeQueryReport> totals;
  std::vector<double> scan_ms;
  for (double r : radii) {
    RangeQueryReport total;
    total.radius = r;
    total.database_size = db.size();
    double scan = 0.0;
    for (const auto& q : queries) {
      const auto report = fdf_range_query(q, index, r, common.workers);
      total.matches.insert(total.matches.end(), report.matches.begin(), report.matches.end());
      if (total.pruned_per_level.size() < report.pruned_per_level.size()) {
        total.pruned_per_level.resize(report.pruned_per_level.size(), 0);
      }
      for (std::size_t l = 0; l < report.pruned_per_level.size(); ++l) {
        total.pruned_per_level[l] += report.pruned_per_level[l];
      }
      total.exact_evaluations += report.exact_evaluations;
      total.wall_ms += report.wall_ms;
      scan += linear_scan_range_query(q, db, r, index.params, common.workers).wall_ms;
    }
    totals.push_back(std::move(total));
    scan_ms.push_back(scan);
  }
  CsvTable table = range_report_csv(totals);
  table.header.push_back("scan_ms");
  for (std::size_t k = 0; k < totals.size(); ++k) table.rows[k].push_back(format_millis(scan_ms[k]));
  deliver(to_csv(table), common, out);
  return kExitOk;
}

int cmd_selftest(const CommonFlags& common, bool quick, std::ostream& out) {
  const auto results = run_selftest({common.seed, quick, common.workers});
  bool ok = true;
  std::ostringstream text;
  for (const auto& r : results) {
    print_suite(text, r);
    ok = ok && r.passed;
  }
  text << (ok ? "selftest passed\n" : "selftest FAILED\n");
  deliver(text.str(), common, out);
  return ok ? kExitOk : kExitSelftest;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elastic time series measures, range queries and 1-NN evaluation", "elastika"};
  app.require_subcommand(1);

  MeasureFlags measure;
  CommonFlags common;

  auto* dist = app.add_subcommand("dist", "distance between two series");
  std::string dist_a, dist_b;
  std::size_t index_a = 0, index_b = 0;
  bool with_path = false;
  add_measure_flags(dist, measure);
  add_common_flags(dist, common);
  dist->add_option("a", dist_a, "first series file")->required();
  dist->add_option("b", dist_b, "second series file")->required();
  dist->add_option("--index-a", index_a, "record of the first file (0-based)");
  dist->add_option("--index-b", index_b, "record of the second file (0-based)");
  dist->add_flag("--path", with_path, "print the optimal edit path");

  auto* classify = app.add_subcommand("classify", "1-NN test error");
  std::vector<std::string> classify_files;
  bool downsample = false, wide = false;
  add_measure_flags(classify, measure);
  add_common_flags(classify, common);
  classify->add_option("files", classify_files, "TRAIN TEST [TRAIN TEST ...]")->required();
  classify->add_flag("--downsample", downsample, "halve every series by optimal PWCA first");
  classify->add_flag("--table", wide, "one column per metric plus MEAN and STD rows");

  auto* tune_cmd = app.add_subcommand("tune", "leave-one-out parameter selection");
  std::string tune_file;
  bool full_grid = false;
  add_measure_flags(tune_cmd, measure);
  add_common_flags(tune_cmd, common);
  tune_cmd->add_option("train", tune_file, "training file")->required();
  tune_cmd->add_flag("--grid", full_grid, "report the error of every grid point");

  auto* down = app.add_subcommand("downsample", "50% PWCA down-sampling");
  std::string down_file;
  add_common_flags(down, common);
  down->add_option("file", down_file, "series file")->required();

  auto* range = app.add_subcommand("rangequery", "filtered range query");
  std::string db_file, query_file;
  std::vector<double> radii;
  add_measure_flags(range, measure);
  add_common_flags(range, common);
  range->add_option("db", db_file, "database file")->required();
  range->add_option("query", query_file, "query file")->required();
  range->add_option("--radius", radii, "radius or comma list")->delimiter(',')->required();

  auto* bench = app.add_subcommand("bench", "range query timing per radius");
  std::string bench_db;
  std::size_t bench_size = 500, bench_length = 64, bench_queries = 10;
  std::vector<double> bench_radii;
  add_measure_flags(bench, measure);
  add_common_flags(bench, common);
  bench->add_option("db", bench_db, "database file (synthetic when omitted)");
  bench->add_option("--radius", bench_radii, "comma list of radii")->delimiter(',')->required();
  bench->add_option("--size", bench_size, "synthetic database size");
  bench->add_option("--length", bench_length, "synthetic series length");
  bench->add_option("--queries", bench_queries, "number of synthetic queries");

  auto* self = app.add_subcommand("selftest", "run the invariant suites");
  bool quick = false;
  add_common_flags(self, common);
  self->add_flag("--quick", quick, "reduced case counts");

  std::vector<const char*> argv{"elastika"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*dist) return cmd_dist(measure, common, dist_a, dist_b, index_a, index_b, with_path, out);
    if (*classify) return cmd_classify(measure, common, classify_files, downsample, wide, out);
    if (*tune_cmd) return cmd_tune(measure, common, tune_file, full_grid, out);
    if (*down) return cmd_downsample(common, down_file, out);
    if (*range) return cmd_rangequery(measure, common, db_file, query_file, radii, out);
    if (*bench) {
      return cmd_bench(measure, common, bench_db, bench_size, bench_length, bench_queries, bench_radii, out);
    }
    if (*self) return cmd_selftest(common, quick, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace elastika
