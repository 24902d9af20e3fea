// Brute-force reference implementations used only by the tests. They
// enumerate every candidate (path, subsequence, segmentation, alignment) and
// share no code with the library beyond the TimeSeries container.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "elastika/series.hpp"

namespace oracle {

using elastika::TimeSeries;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double norm_diff(const std::vector<double>& x, const std::vector<double>& y, int p) {
  double acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) acc += std::pow(std::fabs(x[k] - y[k]), p);
  return std::pow(acc, 1.0 / p);
}

// Sample i (1-based) of a series; index 0 is the zero vector stamped 0.
inline std::vector<double> sample(const TimeSeries& s, std::size_t i) {
  if (i == 0) return std::vector<double>(s.dim(), 0.0);
  std::vector<double> v(s.dim());
  for (std::size_t k = 0; k < s.dim(); ++k) v[k] = s.values()[(i - 1) * s.dim() + k];
  return v;
}

inline double stamp(const TimeSeries& s, std::size_t i) { return i == 0 ? 0.0 : s.stamps()[i - 1]; }

// Step costs keyed by the landing cell (i, j).
struct StepCosts {
  std::function<double(std::size_t, std::size_t)> match;
  std::function<double(std::size_t, std::size_t)> delete_a;
  std::function<double(std::size_t, std::size_t)> delete_b;
};

// Minimum total over every monotone lattice path from `start` to (p, q) whose
// steps are (1,1), (1,0) or (0,1). `allowed(i, j)` filters visited cells.
inline double min_lattice_path(std::size_t p, std::size_t q, std::size_t start_i, std::size_t start_j,
                               double start_cost, const StepCosts& costs,
                               const std::function<bool(std::size_t, std::size_t)>& allowed =
                                   [](std::size_t, std::size_t) { return true; }) {
  double best = kInf;
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double acc) {
    if (!allowed(i, j)) return;
    if (i == p && j == q) {
      best = std::min(best, acc);
      return;
    }
    if (i < p && j < q) walk(i + 1, j + 1, acc + costs.match(i + 1, j + 1));
    if (i < p) walk(i + 1, j, acc + costs.delete_a(i + 1, j));
    if (j < q) walk(i, j + 1, acc + costs.delete_b(i, j + 1));
  };
  walk(start_i, start_j, start_cost);
  return best;
}

inline double twed(const TimeSeries& a, const TimeSeries& b, double lambda, double nu, int p_norm) {
  if (a.size() == 0 && b.size() == 0) return 0.0;
  if (a.size() == 0 || b.size() == 0) return kInf;
  StepCosts c;
  c.match = [&](std::size_t i, std::size_t j) {
    return norm_diff(sample(a, i), sample(b, j), p_norm) + norm_diff(sample(a, i - 1), sample(b, j - 1), p_norm) +
           nu * (std::fabs(stamp(a, i) - stamp(b, j)) + std::fabs(stamp(a, i - 1) - stamp(b, j - 1)));
  };
  c.delete_a = [&](std::size_t i, std::size_t) {
    return norm_diff(sample(a, i), sample(a, i - 1), p_norm) + nu * std::fabs(stamp(a, i) - stamp(a, i - 1)) + lambda;
  };
  c.delete_b = [&](std::size_t, std::size_t j) {
    return norm_diff(sample(b, j), sample(b, j - 1), p_norm) + nu * std::fabs(stamp(b, j) - stamp(b, j - 1)) + lambda;
  };
  // Paths may not run along the borders: the first step from (0,0) must be a
  // match (border cells other than the origin are unreachable).
  return min_lattice_path(a.size(), b.size(), 0, 0, 0.0, c, [](std::size_t i, std::size_t j) {
    return (i == 0) == (j == 0);
  });
}

inline double dtw(const TimeSeries& a, const TimeSeries& b, int p_norm, long corridor = -1) {
  auto cell = [&](std::size_t i, std::size_t j) { return norm_diff(sample(a, i), sample(b, j), p_norm); };
  StepCosts c{cell, cell, cell};
  auto inside = [&](std::size_t i, std::size_t j) {
    return corridor < 0 || std::labs(long(i) - long(j)) <= corridor;
  };
  if (!inside(1, 1)) return kInf;
  return min_lattice_path(a.size(), b.size(), 1, 1, cell(1, 1), c, inside);
}

inline double erp(const TimeSeries& a, const TimeSeries& b, int p_norm) {
  const std::vector<double> gap(std::max<std::size_t>(a.dim(), 1), 0.0);
  StepCosts c;
  c.match = [&](std::size_t i, std::size_t j) { return norm_diff(sample(a, i), sample(b, j), p_norm); };
  c.delete_a = [&](std::size_t i, std::size_t) { return norm_diff(sample(a, i), gap, p_norm); };
  c.delete_b = [&](std::size_t, std::size_t j) { return norm_diff(sample(b, j), gap, p_norm); };
  return min_lattice_path(a.size(), b.size(), 0, 0, 0.0, c);
}

// Point-pattern matching over ascending lists; a phantom 0 precedes both.
inline double ppm(const std::vector<double>& a, const std::vector<double>& b) {
  auto at = [](const std::vector<double>& v, std::size_t i) { return i == 0 ? 0.0 : v[i - 1]; };
  StepCosts c;
  c.match = [&](std::size_t i, std::size_t j) {
    return std::fabs((at(a, i) - at(a, i - 1)) - (at(b, j) - at(b, j - 1)));
  };
  c.delete_a = [&](std::size_t i, std::size_t) { return std::fabs(at(a, i) - at(a, i - 1)); };
  c.delete_b = [&](std::size_t, std::size_t j) { return std::fabs(at(b, j) - at(b, j - 1)); };
  return min_lattice_path(a.size(), b.size(), 0, 0, 0.0, c);
}

// Longest common subsequence by trying every subset of A's indices against
// every equally sized subset of B's indices.
inline std::size_t lcss(const TimeSeries& a, const TimeSeries& b, double epsilon, double delta, int p_norm) {
  const std::size_t p = a.size(), q = b.size();
  std::size_t best = 0;
  for (unsigned ma = 0; ma < (1u << p); ++ma) {
    std::vector<std::size_t> ia;
    for (std::size_t i = 0; i < p; ++i) if (ma >> i & 1u) ia.push_back(i + 1);
    if (ia.size() <= best) continue;
    for (unsigned mb = 0; mb < (1u << q); ++mb) {
      std::vector<std::size_t> ib;
      for (std::size_t j = 0; j < q; ++j) if (mb >> j & 1u) ib.push_back(j + 1);
      if (ib.size() != ia.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < ia.size() && ok; ++k) {
        ok = norm_diff(sample(a, ia[k]), sample(b, ib[k]), p_norm) < epsilon &&
             std::fabs(double(ia[k]) - double(ib[k])) < delta;
      }
      if (ok) best = ia.size();
    }
  }
  return best;
}

// Minimum squared residual over every placement of r - 1 contiguous segments
// whose first segment holds at least two samples.
inline double segmentation_error(const std::vector<double>& x, std::size_t r) {
  const std::size_t p = x.size();
  const std::size_t segments = r - 1;
  double best = kInf;
  std::vector<std::size_t> cuts;  // exclusive end of each segment but the last
  std::function<void(std::size_t)> place = [&](std::size_t from) {
    if (cuts.size() + 1 == segments) {
      std::size_t begin = 0;
      double err = 0.0;
      std::vector<std::size_t> ends = cuts;
      ends.push_back(p);
      if (ends.front() < 2) return;
      for (std::size_t end : ends) {
        double mean = 0.0;
        for (std::size_t k = begin; k < end; ++k) mean += x[k];
        mean /= double(end - begin);
        for (std::size_t k = begin; k < end; ++k) err += (x[k] - mean) * (x[k] - mean);
        begin = end;
      }
      best = std::min(best, err);
      return;
    }
    for (std::size_t c = from; c < p; ++c) {
      cuts.push_back(c);
      place(c + 1);
      cuts.pop_back();
    }
  };
  place(1);
  return best;
}

// Best affine-gap alignment score by enumerating every column sequence.
// A run of g gap columns of one kind scores -open - (g - 1) * extend. An
// x-gap column may sit next to a y-gap column only while every earlier column
// is a gap of the same kind as the first of the pair.
inline double affine_alignment(const std::string& a, const std::string& b, double open, double extend,
                               const std::function<double(char, char)>& score) {
  enum Col { M, X, Y };
  double best = -kInf;
  std::vector<Col> cols;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t j) {
    if (i == a.size() && j == b.size()) {
      for (std::size_t k = 1; k < cols.size(); ++k) {
        const bool opposite = (cols[k] == X && cols[k - 1] == Y) || (cols[k] == Y && cols[k - 1] == X);
        if (!opposite) continue;
        for (std::size_t m = 0; m < k; ++m) if (cols[m] != cols[k - 1]) return;
      }
      double total = 0.0;
      std::size_t ia = 0, ib = 0;
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (cols[k] == M) {
          total += score(a[ia++], b[ib++]);
        } else {
          const bool continues = k > 0 && cols[k - 1] == cols[k];
          total -= continues ? extend : open;
          (cols[k] == X ? ia : ib)++;
        }
      }
      best = std::max(best, total);
      return;
    }
    if (i < a.size() && j < b.size()) { cols.push_back(M); walk(i + 1, j + 1); cols.pop_back(); }
    if (i < a.size()) { cols.push_back(X); walk(i + 1, j); cols.pop_back(); }
    if (j < b.size()) { cols.push_back(Y); walk(i, j + 1); cols.pop_back(); }
  };
  walk(0, 0);
  return best;
}

}  // namespace oracle
