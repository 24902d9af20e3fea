#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "elastika/series.hpp"

namespace elastika {

/// Unreachable / undefined alignment cost. Absorbing under +, neutral under min.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Parameters

/// Time Warp Edit Distance. `nu` is the stiffness applied to time stamp
/// differences, `lambda` the constant penalty of each delete operation.
struct TwedParams {
  double lambda = 0.0;
  double nu = 1.0;
  int p_norm = 1;

  /// nu = 0 is accepted but the measure then ignores time stamps and is only
  /// a distance on the value space.
  bool is_metric() const noexcept { return nu > 0.0; }
};

/// Dynamic time warping; `corridor` is a Sakoe-Chiba half width on |i - j|.
struct DtwParams {
  std::optional<std::size_t> corridor;
  int p_norm = 2;
};

/// Edit distance with real penalty. An empty `gap` means the zero vector.
struct ErpParams {
  std::vector<double> gap;
  int p_norm = 1;
};

/// Longest common subsequence under a value tolerance and an index window.
/// A pair (i, j) matches when lp(a_i, b_j) < epsilon and |i - j| < delta.
struct LcssParams {
  double epsilon = 1.0;
  double delta = 1.0;
  int p_norm = 1;
};

/// 1-D point-pattern matching over ascending value lists.
struct PpmParams {};

/// Non-elastic baseline: Minkowski distance of the stacked values.
struct EdParams {
  int p_norm = 2;
};

/// Symbol-pair substitution scores for affine-gap alignment.
class ScoreTable {
 public:
  ScoreTable() = default;

  /// `match` on the diagonal, `mismatch` elsewhere, over the given alphabet.
  static ScoreTable uniform(std::string_view alphabet, double match, double mismatch);

  void set(char x, char y, double score);
  /// Throws std::invalid_argument for a pair that was never defined.
  double operator()(char x, char y) const;
  bool contains(char x) const;

 private:
  std::map<std::pair<char, char>, double> scores_;
};

/// Affine gap model: a gap of length g scores -open - (g - 1) * extend.
struct AffineGapParams {
  double open = 1.0;
  double extend = 1.0;
  ScoreTable score;
};

using MetricParams =
    std::variant<EdParams, DtwParams, ErpParams, LcssParams, TwedParams, PpmParams, AffineGapParams>;

// ---------------------------------------------------------------------------
// Alignment bookkeeping

enum class EditOp : std::uint8_t { match, delete_a, delete_b };

/// One step of an edit path; (i, j) is the 1-based cell the step lands on.
struct EditStep {
  EditOp op;
  std::size_t i;
  std::size_t j;

  friend bool operator==(const EditStep&, const EditStep&) = default;
};

enum class StorageMode {
  cost_only,    // two rolling rows, no provenance
  full_matrix,  // (p+1) x (q+1) costs and moves, backtrace available
};

/// State of a completed min-plus edit recursion.
class DpRun {
 public:
  DpRun(std::size_t rows, std::size_t cols, double cost);
  DpRun(std::size_t rows, std::size_t cols, std::vector<double> cells, std::vector<EditOp> moves);

  double cost() const noexcept { return cost_; }
  StorageMode mode() const noexcept {
    return moves_.empty() ? StorageMode::cost_only : StorageMode::full_matrix;
  }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  /// Accumulated cost at cell (i, j), 0 <= i <= rows, 0 <= j <= cols. Full mode only.
  double cell(std::size_t i, std::size_t j) const;
  EditOp move(std::size_t i, std::size_t j) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  double cost_;
  std::vector<double> cells_;
  std::vector<EditOp> moves_;
};

/// Recovers the optimal edit path from (rows, cols) back to (0, 0), returned
/// in increasing order. Ties were resolved match > delete-A > delete-B when
/// the run was computed. Throws std::logic_error on a cost-only run; returns
/// an empty path when the final cost is infinite.
std::vector<EditStep> backtrace(const DpRun& run);

struct AlignmentResult {
  double cost = 0.0;
  std::optional<std::vector<EditStep>> path;

  bool infinite() const noexcept { return cost == kInfinity; }
};

// ---------------------------------------------------------------------------
// Measures

/// Delete costs of one series under TWED, tabulated once per evaluation:
/// entry i-1 holds lp(x_i, x_{i-1}) + nu * |t_i - t_{i-1}| + lambda with the
/// phantom sample x_0 = (0, t = 0).
std::vector<double> twed_delete_costs(const TimeSeries& x, const TwedParams& params);

/// Time Warp Edit Distance. An empty operand against a non-empty one yields
/// an infinite cost; two empty series are at distance 0.
AlignmentResult twed(const TimeSeries& a, const TimeSeries& b, const TwedParams& params,
                     StorageMode mode = StorageMode::cost_only);
DpRun twed_run(const TimeSeries& a, const TimeSeries& b, const TwedParams& params,
               StorageMode mode = StorageMode::cost_only);

AlignmentResult dtw(const TimeSeries& a, const TimeSeries& b, const DtwParams& params,
                    StorageMode mode = StorageMode::cost_only);

AlignmentResult erp(const TimeSeries& a, const TimeSeries& b, const ErpParams& params,
                    StorageMode mode = StorageMode::cost_only);

struct LcssResult {
  std::size_t match_count = 0;
  double dissimilarity = 1.0;
};
LcssResult lcss(const TimeSeries& a, const TimeSeries& b, const LcssParams& params);

/// Point-pattern distance between strictly ascending lists. Increments are
/// taken against a phantom leading 0.
AlignmentResult ppm(std::span<const double> a, std::span<const double> b,
                    StorageMode mode = StorageMode::cost_only);

/// Best global alignment score (maximised) under the three-state affine model.
double affine_gap_align(std::string_view a, std::string_view b, const AffineGapParams& params);

/// Scalar dissimilarity used by nearest-neighbour search. LCSS maps to its
/// normalised dissimilarity; PPM reads the values of 1-D series.
double series_distance(const MetricParams& params, const TimeSeries& a, const TimeSeries& b);

std::string describe(const MetricParams& params);

}  // namespace elastika
