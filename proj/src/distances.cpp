#include "elastika/distances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "elastika/detail/dp_engine.hpp"

namespace elastika {

using detail::Border;
using detail::DpOptions;
using detail::lp_fast;
using detail::run_edit_dp;
using detail::StepCosts;

// ---------------------------------------------------------------------------
// DpRun / backtrace

DpRun::DpRun(std::size_t rows, std::size_t cols, double cost)
    : rows_(rows), cols_(cols), cost_(cost) {}

DpRun::DpRun(std::size_t rows, std::size_t cols, std::vector<double> cells,
             std::vector<EditOp> moves)
    : rows_(rows),
      cols_(cols),
      cost_(cells.at(rows * (cols + 1) + cols)),
      cells_(std::move(cells)),
      moves_(std::move(moves)) {}

double DpRun::cell(std::size_t i, std::size_t j) const {
  if (cells_.empty()) throw std::logic_error("DpRun: cost-only run keeps no matrix");
  return cells_.at(i * (cols_ + 1) + j);
}

EditOp DpRun::move(std::size_t i, std::size_t j) const {
  if (moves_.empty()) throw std::logic_error("DpRun: cost-only run keeps no provenance");
  return moves_.at(i * (cols_ + 1) + j);
}

std::vector<EditStep> backtrace(const DpRun& run) {
  if (run.mode() == StorageMode::cost_only) {
    throw std::logic_error("backtrace requires a run computed with StorageMode::full_matrix");
  }
  std::vector<EditStep> path;
  if (run.cost() == kInfinity) return path;
  std::size_t i = run.rows();
  std::size_t j = run.cols();
  path.reserve(i + j);
  while (i > 0 || j > 0) {
    const EditOp op = run.move(i, j);
    path.push_back({op, i, j});
    switch (op) {
      case EditOp::match:
        --i;
        --j;
        break;
      case EditOp::delete_a:
        --i;
        break;
      case EditOp::delete_b:
        --j;
        break;
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

AlignmentResult finish(DpRun run) {
  AlignmentResult result{run.cost(), std::nullopt};
  if (run.mode() == StorageMode::full_matrix) result.path = backtrace(run);
  return result;
}

void require_same_dim(const TimeSeries& a, const TimeSeries& b, const char* who) {
  if (a.dim() != b.dim()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

void require_non_empty(const TimeSeries& a, const TimeSeries& b, const char* who) {
  if (a.empty() || b.empty()) throw std::invalid_argument(std::string(who) + ": empty series");
}

constexpr auto no_border = [](std::size_t) { return kInfinity; };

}  // namespace

// ---------------------------------------------------------------------------
// TWED

std::vector<double> twed_delete_costs(const TimeSeries& x, const TwedParams& params) {
  std::vector<double> costs(x.size());
  const std::vector<double> origin(x.dim(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto prev_value = i == 0 ? std::span<const double>(origin) : x.value(i - 1);
    const double prev_stamp = i == 0 ? 0.0 : x.stamp(i - 1);
    costs[i] = lp_fast(x.value(i), prev_value, params.p_norm) +
               params.nu * std::abs(x.stamp(i) - prev_stamp) + params.lambda;
  }
  return costs;
}

DpRun twed_run(const TimeSeries& a, const TimeSeries& b, const TwedParams& params,
               StorageMode mode) {
  if (params.lambda < 0.0) throw std::invalid_argument("twed: lambda must be >= 0");
  if (params.nu < 0.0) throw std::invalid_argument("twed: nu must be >= 0");
  require_same_dim(a, b, "twed");

  const std::vector<double> del_a = twed_delete_costs(a, params);
  const std::vector<double> del_b = twed_delete_costs(b, params);
  const std::vector<double> origin(a.dim(), 0.0);
  const double nu = params.nu;
  const int p_norm = params.p_norm;

  // Sample k of a series with the phantom (0, t = 0) at k = 0.
  auto value_a = [&](std::size_t i) { return i == 0 ? std::span<const double>(origin) : a.value(i - 1); };
  auto value_b = [&](std::size_t j) { return j == 0 ? std::span<const double>(origin) : b.value(j - 1); };
  auto stamp_a = [&](std::size_t i) { return i == 0 ? 0.0 : a.stamp(i - 1); };
  auto stamp_b = [&](std::size_t j) { return j == 0 ? 0.0 : b.stamp(j - 1); };
  auto local = [&](std::size_t i, std::size_t j) {
    return lp_fast(value_a(i), value_b(j), p_norm) + nu * std::abs(stamp_a(i) - stamp_b(j));
  };

  auto cell = [&](std::size_t i, std::size_t j) {
    return StepCosts{local(i, j) + local(i - 1, j - 1), del_a[i - 1], del_b[j - 1]};
  };
  return run_edit_dp(a.size(), b.size(), DpOptions{Border::infinite, std::nullopt, mode}, cell,
                     no_border, no_border);
}

AlignmentResult twed(const TimeSeries& a, const TimeSeries& b, const TwedParams& params,
                     StorageMode mode) {
  return finish(twed_run(a, b, params, mode));
}

// ---------------------------------------------------------------------------
// DTW

AlignmentResult dtw(const TimeSeries& a, const TimeSeries& b, const DtwParams& params,
                    StorageMode mode) {
  require_non_empty(a, b, "dtw");
  require_same_dim(a, b, "dtw");
  if (params.corridor && *params.corridor > std::max(a.size(), b.size())) {
    throw std::invalid_argument("dtw: corridor exceeds max(p, q)");
  }
  auto cell = [&](std::size_t i, std::size_t j) {
    const double d = lp_fast(a.value(i - 1), b.value(j - 1), params.p_norm);
    return StepCosts{d, d, d};
  };
  return finish(run_edit_dp(a.size(), b.size(), DpOptions{Border::infinite, params.corridor, mode},
                            cell, no_border, no_border));
}

// ---------------------------------------------------------------------------
// ERP

AlignmentResult erp(const TimeSeries& a, const TimeSeries& b, const ErpParams& params,
                    StorageMode mode) {
  require_same_dim(a, b, "erp");
  std::vector<double> gap = params.gap;
  if (gap.empty()) gap.assign(a.dim(), 0.0);
  if (gap.size() != a.dim()) throw std::invalid_argument("erp: gap dimension mismatch");

  std::vector<double> gap_a(a.size());
  std::vector<double> gap_b(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) gap_a[i] = lp_fast(a.value(i), gap, params.p_norm);
  for (std::size_t j = 0; j < b.size(); ++j) gap_b[j] = lp_fast(b.value(j), gap, params.p_norm);

  auto cell = [&](std::size_t i, std::size_t j) {
    return StepCosts{lp_fast(a.value(i - 1), b.value(j - 1), params.p_norm), gap_a[i - 1],
                     gap_b[j - 1]};
  };
  return finish(run_edit_dp(
      a.size(), b.size(), DpOptions{Border::cumulative, std::nullopt, mode}, cell,
      [&](std::size_t i) { return gap_a[i - 1]; }, [&](std::size_t j) { return gap_b[j - 1]; }));
}

// ---------------------------------------------------------------------------
// LCSS

LcssResult lcss(const TimeSeries& a, const TimeSeries& b, const LcssParams& params) {
  require_non_empty(a, b, "lcss");
  require_same_dim(a, b, "lcss");
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("lcss: epsilon must be > 0");
  if (params.delta < 0.0) throw std::invalid_argument("lcss: delta must be >= 0");

  const std::size_t p = a.size();
  const std::size_t q = b.size();
  std::vector<std::size_t> prev(q + 1, 0);
  std::vector<std::size_t> cur(q + 1, 0);
  for (std::size_t i = 1; i <= p; ++i) {
    for (std::size_t j = 1; j <= q; ++j) {
      const double index_gap = i > j ? double(i - j) : double(j - i);
      if (index_gap < params.delta &&
          lp_fast(a.value(i - 1), b.value(j - 1), params.p_norm) < params.epsilon) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  const std::size_t count = prev[q];
  return {count, 1.0 - double(count) / double(std::min(p, q))};
}

// ---------------------------------------------------------------------------
// PPM

AlignmentResult ppm(std::span<const double> a, std::span<const double> b, StorageMode mode) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ppm: empty point list");
  auto increments = [](std::span<const double> x) {
    std::vector<double> inc(x.size());
    double previous = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!std::isfinite(x[k]) || (k > 0 && !(x[k] > x[k - 1]))) {
        throw std::invalid_argument("ppm: point list must be strictly ascending (position " +
                                    std::to_string(k + 1) + ")");
      }
      inc[k] = x[k] - previous;
      previous = x[k];
    }
    return inc;
  };
  const std::vector<double> inc_a = increments(a);
  const std::vector<double> inc_b = increments(b);

  auto cell = [&](std::size_t i, std::size_t j) {
    return StepCosts{std::abs(inc_a[i - 1] - inc_b[j - 1]), std::abs(inc_a[i - 1]),
                     std::abs(inc_b[j - 1])};
  };
  return finish(run_edit_dp(
      a.size(), b.size(), DpOptions{Border::cumulative, std::nullopt, mode}, cell,
      [&](std::size_t i) { return std::abs(inc_a[i - 1]); },
      [&](std::size_t j) { return std::abs(inc_b[j - 1]); }));
}

// ---------------------------------------------------------------------------
// Affine gap alignment

ScoreTable ScoreTable::uniform(std::string_view alphabet, double match, double mismatch) {
  ScoreTable table;
  for (char x : alphabet) {
    for (char y : alphabet) table.set(x, y, x == y ? match : mismatch);
  }
  return table;
}

void ScoreTable::set(char x, char y, double score) { scores_[{x, y}] = score; }

double ScoreTable::operator()(char x, char y) const {
  auto it = scores_.find({x, y});
  if (it == scores_.end()) {
    throw std::invalid_argument(std::string("score table: unknown symbol pair (") + x + ", " + y +
                                ")");
  }
  return it->second;
}

bool ScoreTable::contains(char x) const {
  return std::any_of(scores_.begin(), scores_.end(),
                     [x](const auto& kv) { return kv.first.first == x || kv.first.second == x; });
}

double affine_gap_align(std::string_view a, std::string_view b, const AffineGapParams& params) {
  if (params.open < 0.0 || params.extend < 0.0) {
    throw std::invalid_argument("affine_gap_align: gap penalties must be >= 0");
  }
  for (char c : a) {
    if (!params.score.contains(c)) throw std::invalid_argument(std::string("unknown symbol ") + c);
  }
  for (char c : b) {
    if (!params.score.contains(c)) throw std::invalid_argument(std::string("unknown symbol ") + c);
  }
  constexpr double neg_inf = -kInfinity;
  const double d = params.open;
  const double e = params.extend;
  auto gap_run = [&](std::size_t g) { return -d - double(g - 1) * e; };

  const std::size_t p = a.size();
  const std::size_t q = b.size();
  // Row i of M, Ix (a_i against a gap) and Iy (b_j against a gap).
  std::vector<double> m_prev(q + 1), x_prev(q + 1), y_prev(q + 1);
  std::vector<double> m_cur(q + 1), x_cur(q + 1), y_cur(q + 1);
  m_prev[0] = 0.0;
  x_prev[0] = y_prev[0] = neg_inf;
  for (std::size_t j = 1; j <= q; ++j) {
    m_prev[j] = y_prev[j] = gap_run(j);
    x_prev[j] = neg_inf;
  }
  for (std::size_t i = 1; i <= p; ++i) {
    m_cur[0] = x_cur[0] = gap_run(i);
    y_cur[0] = neg_inf;
    for (std::size_t j = 1; j <= q; ++j) {
      m_cur[j] = params.score(a[i - 1], b[j - 1]) +
                 std::max({x_prev[j - 1], m_prev[j - 1], y_prev[j - 1]});
      x_cur[j] = std::max(m_prev[j] - d, x_prev[j] - e);
      y_cur[j] = std::max(m_cur[j - 1] - d, y_cur[j - 1] - e);
    }
    std::swap(m_prev, m_cur);
    std::swap(x_prev, x_cur);
    std::swap(y_prev, y_cur);
  }
  return std::max({m_prev[q], x_prev[q], y_prev[q]});
}

// ---------------------------------------------------------------------------
// Dispatch

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double series_distance(const MetricParams& params, const TimeSeries& a, const TimeSeries& b) {
  return std::visit(
      overloaded{
          [&](const EdParams& p) { return minkowski_distance(a, b, p.p_norm); },
          [&](const DtwParams& p) { return dtw(a, b, p).cost; },
          [&](const ErpParams& p) { return erp(a, b, p).cost; },
          [&](const LcssParams& p) { return lcss(a, b, p).dissimilarity; },
          [&](const TwedParams& p) { return twed(a, b, p).cost; },
          [&](const PpmParams&) {
            if (a.dim() != 1 || b.dim() != 1) throw std::invalid_argument("ppm: 1-D series only");
            return ppm(a.values(), b.values()).cost;
          },
          [&](const AffineGapParams&) -> double {
            throw std::invalid_argument("affine gap alignment applies to symbol sequences");
          },
      },
      params);
}

namespace {

std::string shortest(double v) {
  char buf[32];
  return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
}

}  // namespace

std::string describe(const MetricParams& params) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const EdParams& p) { out << "ed(lp=" << p.p_norm << ")"; },
                 [&](const DtwParams& p) {
                   out << "dtw(corridor=";
                   if (p.corridor) out << *p.corridor; else out << "none";
                   out << ",lp=" << p.p_norm << ")";
                 },
                 [&](const ErpParams& p) { out << "erp(lp=" << p.p_norm << ")"; },
                 [&](const LcssParams& p) {
                   out << "lcss(epsilon=" << shortest(p.epsilon) << ",delta=" << shortest(p.delta) << ")";
                 },
                 [&](const TwedParams& p) {
                   out << "twed(lambda=" << shortest(p.lambda) << ",nu=" << shortest(p.nu)
                       << ",lp=" << p.p_norm << ")";
                 },
                 [&](const PpmParams&) { out << "ppm"; },
                 [&](const AffineGapParams& p) {
                   out << "affine(open=" << shortest(p.open) << ",extend=" << shortest(p.extend) << ")";
                 },
             },
             params);
  return out.str();
}

}  // namespace elastika
