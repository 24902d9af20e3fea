#pragma once

// Shared O(p*q) min-plus recursion behind twed, dtw, erp and ppm.
//
//   D(i, j) = min( D(i-1, j-1) + match,
//                  D(i-1, j)   + delete_a,
//                  D(i,   j-1) + delete_b )
//
// Cell costs come from a functor returning all three operation costs for the
// target cell (i, j), 1-based. Border cells are either unreachable (infinite)
// or accumulate delete costs along the first row / column.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "elastika/distances.hpp"

namespace elastika::detail {

struct StepCosts {
  double match;
  double delete_a;
  double delete_b;
};

enum class Border { infinite, cumulative };

struct DpOptions {
  Border border = Border::infinite;
  std::optional<std::size_t> band;  // |i - j| <= band, other cells unreachable
  StorageMode mode = StorageMode::cost_only;
};

inline double lp_fast(std::span<const double> x, std::span<const double> y, int p_norm) {
  if (x.size() == 1) return std::abs(x[0] - y[0]);
  return lp_local(x, y, p_norm);
}

// Tie order match > delete-A > delete-B; both storage modes share it so their
// costs agree bit for bit.
inline EditOp pick(double via_match, double via_del_a, double via_del_b, double& best) {
  if (via_match <= via_del_a && via_match <= via_del_b) {
    best = via_match;
    return EditOp::match;
  }
  if (via_del_a <= via_del_b) {
    best = via_del_a;
    return EditOp::delete_a;
  }
  best = via_del_b;
  return EditOp::delete_b;
}

/// `cell(i, j)` -> StepCosts for 1 <= i <= p, 1 <= j <= q.
/// `border_a(i)` / `border_b(j)` -> delete costs along column 0 / row 0,
/// consulted only for Border::cumulative.
template <class CellFn, class BorderA, class BorderB>
DpRun run_edit_dp(std::size_t p, std::size_t q, const DpOptions& opts, CellFn&& cell,
                  BorderA&& border_a, BorderB&& border_b) {
  const bool cumulative = opts.border == Border::cumulative;
  auto column_range = [&](std::size_t i) {
    std::size_t lo = 1;
    std::size_t hi = q;
    if (opts.band) {
      const std::size_t w = *opts.band;
      lo = i > w ? std::max<std::size_t>(1, i - w) : 1;
      hi = std::min(q, i + w);
    }
    return std::pair{lo, hi};
  };

  if (opts.mode == StorageMode::full_matrix) {
    const std::size_t width = q + 1;
    std::vector<double> d((p + 1) * width, kInfinity);
    std::vector<EditOp> moves((p + 1) * width, EditOp::match);
    d[0] = 0.0;
    if (cumulative) {
      for (std::size_t j = 1; j <= q; ++j) {
        d[j] = d[j - 1] + border_b(j);
        moves[j] = EditOp::delete_b;
      }
      for (std::size_t i = 1; i <= p; ++i) {
        d[i * width] = d[(i - 1) * width] + border_a(i);
        moves[i * width] = EditOp::delete_a;
      }
    }
    for (std::size_t i = 1; i <= p; ++i) {
      const auto [lo, hi] = column_range(i);
      for (std::size_t j = lo; j <= hi; ++j) {
        const StepCosts c = cell(i, j);
        double best;
        moves[i * width + j] = pick(d[(i - 1) * width + j - 1] + c.match,
                                    d[(i - 1) * width + j] + c.delete_a,
                                    d[i * width + j - 1] + c.delete_b, best);
        d[i * width + j] = best;
      }
    }
    return DpRun(p, q, std::move(d), std::move(moves));
  }

  std::vector<double> prev(q + 1, kInfinity);
  std::vector<double> cur(q + 1, kInfinity);
  prev[0] = 0.0;
  if (cumulative) {
    for (std::size_t j = 1; j <= q; ++j) prev[j] = prev[j - 1] + border_b(j);
  }
  for (std::size_t i = 1; i <= p; ++i) {
    cur[0] = cumulative ? prev[0] + border_a(i) : kInfinity;
    const auto [lo, hi] = column_range(i);
    if (lo > hi) {
      std::fill(cur.begin() + 1, cur.end(), kInfinity);
      std::swap(prev, cur);
      continue;
    }
    if (lo > 1) cur[lo - 1] = kInfinity;
    if (hi < q) cur[hi + 1] = kInfinity;
    for (std::size_t j = lo; j <= hi; ++j) {
      const StepCosts c = cell(i, j);
      double best;
      pick(prev[j - 1] + c.match, prev[j] + c.delete_a, cur[j - 1] + c.delete_b, best);
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  return DpRun(p, q, prev[q]);
}

}  // namespace elastika::detail
