#include "elastika/pruning.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "elastika/parallel.hpp"

namespace elastika {

double approximation_bound(std::size_t p, std::size_t r, double lambda, double nu, double delta_t) {
  if (r < 1 || r >= p) throw std::invalid_argument("approximation_bound: r must satisfy 1 <= r < p");
  if (lambda < 0.0) throw std::invalid_argument("approximation_bound: lambda must be >= 0");
  if (!(nu > 0.0)) throw std::invalid_argument("approximation_bound: nu must be > 0");
  if (delta_t < 0.0) throw std::invalid_argument("approximation_bound: delta_t must be >= 0");
  return lambda * double(p - r) + nu * delta_t * double(2 * p - r);
}

namespace {

void check_approx(const TimeSeries& x, const PwcaApproximation& approx, const TwedParams& params,
                  const char* who) {
  if (approx.full.size() != x.size() || approx.full.stamps().size() != x.stamps().size() ||
      !std::equal(x.stamps().begin(), x.stamps().end(), approx.full.stamps().begin())) {
    throw std::invalid_argument(std::string(who) + ": approximation was not built from this series");
  }
  if (approx.p_norm != params.p_norm) {
    throw std::invalid_argument(std::string(who) + ": approximation norm differs from twed norm");
  }
}

}  // namespace

double gap_bound(const TimeSeries& a, const TimeSeries& b, const PwcaApproximation& approx_a,
                 const PwcaApproximation& approx_b, const TwedParams& params) {
  check_approx(a, approx_a, params, "gap_bound");
  check_approx(b, approx_b, params, "gap_bound");
  return approximation_bound(a.size(), approx_a.r, params.lambda, params.nu, approx_a.delta_t_avg) +
         approximation_bound(b.size(), approx_b.r, params.lambda, params.nu, approx_b.delta_t_avg) +
         2.0 * approx_a.lp_error + 2.0 * approx_b.lp_error;
}

RangeIndexEntry index_series(std::size_t id, const TimeSeries& series, const TwedParams& params,
                             bool cache_exact_terms) {
  require_valid(series);
  RangeIndexEntry entry{id, series, params, {}};
  if (series.size() < 4) return entry;
  for (PwcaApproximation& approx : halving_pyramid(series, params.p_norm)) {
    LevelCache level;
    level.lp_error = approx.lp_error;
    level.lambda_term = params.lambda * double(series.size() - approx.r);
    level.time_term = params.nu * approx.delta_t_avg * double(2 * series.size() - approx.r);
    if (cache_exact_terms) level.exact_to_original = twed(approx.extremities, series, params).cost;
    level.approx = std::move(approx);
    entry.levels.push_back(std::move(level));
  }
  return entry;
}

RangeIndex build_index(std::span<const TimeSeries> db, double lambda, double nu,
                       IndexOptions options) {
  RangeIndex index;
  index.params = TwedParams{lambda, nu, 1};
  index.options = options;
  index.entries.resize(db.size());
  parallel_for(db.size(), options.workers, [&](std::size_t i) {
    index.entries[i] = index_series(i, db[i], index.params, options.cache_exact_terms);
  });
  return index;
}

double lower_bound(const RangeIndexEntry& a, const RangeIndexEntry& b, std::size_t level,
                   BoundForm form) {
  if (level >= a.levels.size() || level >= b.levels.size()) {
    throw std::out_of_range("lower_bound: pyramid level " + std::to_string(level) + " missing");
  }
  if (a.params.lambda != b.params.lambda || a.params.nu != b.params.nu ||
      a.params.p_norm != b.params.p_norm) {
    throw std::invalid_argument("lower_bound: entries were indexed with different parameters");
  }
  const LevelCache& la = a.levels[level];
  const LevelCache& lb = b.levels[level];
  const bool have_exact = la.exact_to_original && lb.exact_to_original;
  if (form == BoundForm::tight && !have_exact) {
    throw std::invalid_argument("lower_bound: tight form needs cached exact terms");
  }
  const bool tight = form == BoundForm::tight || (form == BoundForm::automatic && have_exact);
  const double coarse = twed(la.approx.extremities, lb.approx.extremities, a.params).cost;
  const double slack = tight ? *la.exact_to_original + *lb.exact_to_original
                             : la.loose_radius() + lb.loose_radius();
  return std::max(0.0, coarse - slack);
}

std::size_t RangeQueryReport::pruned_total() const noexcept {
  std::size_t total = 0;
  for (std::size_t n : pruned_per_level) total += n;
  return total;
}

std::vector<std::size_t> RangeQueryReport::match_ids() const {
  std::vector<std::size_t> ids;
  ids.reserve(matches.size());
  for (const auto& m : matches) ids.push_back(m.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace {

using Clock = std::chrono::steady_clock;

void sort_matches(std::vector<RangeMatch>& matches) {
  std::sort(matches.begin(), matches.end(), [](const RangeMatch& x, const RangeMatch& y) {
    return x.distance != y.distance ? x.distance < y.distance : x.id < y.id;
  });
}

void require_radius(double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("range query: radius must be >= 0");
}

// Outcome per candidate: the level that rejected it, or its exact distance.
struct Verdict {
  std::optional<std::size_t> pruned_at;
  double distance = kInfinity;
};

}  // namespace

RangeQueryReport fdf_range_query(const RangeIndexEntry& query, const RangeIndex& index,
                                 double radius, std::size_t workers) {
  require_radius(radius);
  const auto start = Clock::now();
  const auto& entries = index.entries;
  std::size_t depth = 0;
  for (const auto& e : entries) depth = std::max(depth, e.levels.size());

  std::vector<Verdict> verdicts(entries.size());
  parallel_for(entries.size(), workers, [&](std::size_t c) {
    const RangeIndexEntry& candidate = entries[c];
    const std::size_t shared = std::min(query.levels.size(), candidate.levels.size());
    for (std::size_t level = 0; level < shared; ++level) {
      if (lower_bound(query, candidate, level) > radius) {
        verdicts[c].pruned_at = level;
        return;
      }
    }
    verdicts[c].distance = twed(query.original, candidate.original, index.params).cost;
  });

  RangeQueryReport report;
  report.radius = radius;
  report.database_size = entries.size();
  report.pruned_per_level.assign(depth, 0);
  for (std::size_t c = 0; c < entries.size(); ++c) {
    if (verdicts[c].pruned_at) {
      ++report.pruned_per_level[*verdicts[c].pruned_at];
    } else {
      ++report.exact_evaluations;
      if (verdicts[c].distance <= radius) report.matches.push_back({entries[c].id, verdicts[c].distance});
    }
  }
  sort_matches(report.matches);
  report.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

RangeQueryReport fdf_range_query(const TimeSeries& query, const RangeIndex& index, double radius,
                                 std::size_t workers) {
  require_radius(radius);
  const auto start = Clock::now();
  const RangeIndexEntry entry =
      index_series(index.entries.size(), query, index.params, index.options.cache_exact_terms);
  RangeQueryReport report = fdf_range_query(entry, index, radius, workers);
  report.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

RangeQueryReport linear_scan_range_query(const TimeSeries& query, std::span<const TimeSeries> db,
                                         double radius, const TwedParams& params,
                                         std::size_t workers) {
  require_radius(radius);
  const auto start = Clock::now();
  std::vector<double> distances(db.size());
  parallel_for(db.size(), workers,
               [&](std::size_t i) { distances[i] = twed(query, db[i], params).cost; });
  RangeQueryReport report;
  report.radius = radius;
  report.database_size = db.size();
  report.exact_evaluations = db.size();
  for (std::size_t i = 0; i < db.size(); ++i) {
    if (distances[i] <= radius) report.matches.push_back({i, distances[i]});
  }
  sort_matches(report.matches);
  report.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

}  // namespace elastika
