#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "elastika/approximation.hpp"
#include "elastika/distances.hpp"
#include "elastika/series.hpp"

namespace elastika {

/// Upper bound on twed(full approximation, extremities):
/// lambda * (p - r) + nu * delta_t * (2p - r).
double approximation_bound(std::size_t p, std::size_t r, double lambda, double nu, double delta_t);

/// Upper bound on |twed(A, B) - twed(extremities(A), extremities(B))|. Each
/// series contributes its own delta_t term.
double gap_bound(const TimeSeries& a, const TimeSeries& b, const PwcaApproximation& approx_a,
                 const PwcaApproximation& approx_b, const TwedParams& params);

/// One pyramid level of an indexed series with the terms the filter needs.
struct LevelCache {
  PwcaApproximation approx;
  std::optional<double> exact_to_original;  // twed(extremities, original)
  double lp_error = 0.0;                    // lp_series_distance(full, original)
  double lambda_term = 0.0;                 // lambda * (p - r)
  double time_term = 0.0;                   // nu * delta_t * (2p - r)

  /// Upper bound on twed(extremities, original) that needs no DP.
  double loose_radius() const noexcept { return lambda_term + time_term + 2.0 * lp_error; }
};

struct RangeIndexEntry {
  std::size_t id = 0;
  TimeSeries original;
  TwedParams params;
  std::vector<LevelCache> levels;  // coarsest first; empty when the series is too short
};

struct IndexOptions {
  bool cache_exact_terms = true;
  std::size_t workers = 1;
};

struct RangeIndex {
  TwedParams params;
  IndexOptions options;
  std::vector<RangeIndexEntry> entries;
};

RangeIndexEntry index_series(std::size_t id, const TimeSeries& series, const TwedParams& params,
                             bool cache_exact_terms = true);

/// Series shorter than 4 samples are kept with an empty pyramid and are
/// always compared exactly.
RangeIndex build_index(std::span<const TimeSeries> db, double lambda, double nu,
                       IndexOptions options = {});

enum class BoundForm {
  automatic,  // tight when both entries carry exact terms, loose otherwise
  tight,      // twed(A~, B~) - twed(A~, A) - twed(B~, B)
  loose,      // twed(A~, B~) minus the closed-form bounds on those two terms
};

/// Lower bound on twed(a, b) from pyramid level `level` (0 = coarsest),
/// clamped at 0. Throws std::out_of_range when either entry lacks the level.
double lower_bound(const RangeIndexEntry& a, const RangeIndexEntry& b, std::size_t level,
                   BoundForm form = BoundForm::automatic);

struct RangeMatch {
  std::size_t id;
  double distance;

  friend bool operator==(const RangeMatch&, const RangeMatch&) = default;
};

struct RangeQueryReport {
  double radius = 0.0;
  std::vector<RangeMatch> matches;           // sorted by distance, then id
  std::vector<std::size_t> pruned_per_level;  // rejections at each pyramid level
  std::size_t exact_evaluations = 0;
  std::size_t database_size = 0;
  double wall_ms = 0.0;

  std::size_t pruned_total() const noexcept;
  std::vector<std::size_t> match_ids() const;
};

/// Fast-and-dirty filter: candidates are tested coarse to fine and rejected
/// at the first level whose lower bound exceeds the radius; survivors get one
/// exact twed evaluation.
RangeQueryReport fdf_range_query(const RangeIndexEntry& query, const RangeIndex& index,
                                 double radius, std::size_t workers = 1);
/// Indexes the query on the fly with the index parameters.
RangeQueryReport fdf_range_query(const TimeSeries& query, const RangeIndex& index, double radius,
                                 std::size_t workers = 1);

/// Exact twed against every database element.
RangeQueryReport linear_scan_range_query(const TimeSeries& query, std::span<const TimeSeries> db,
                                         double radius, const TwedParams& params,
                                         std::size_t workers = 1);

}  // namespace elastika
