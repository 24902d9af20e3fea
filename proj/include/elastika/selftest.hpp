#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace elastika {

/// Outcome of one invariant suite. `worst_slack` is the smallest observed
/// margin (right-hand side minus left-hand side) over all checked
/// inequalities; a suite passes when every margin is >= -tolerance.
struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  double worst_slack = 0.0;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr double kSlackTolerance = 1e-9;

/// Non-negativity, identity, symmetry and triangle inequality on random
/// triples (lengths 1..max_length, dimension 1 or 3, lambda in [0, 1],
/// nu in (0, 1]). `measure` is "twed" or "erp".
SuiteResult metric_axiom_suite(const std::string& measure, std::size_t triples,
                               std::size_t max_length, std::uint64_t seed);

/// dtw([1],[1,2]) = 1, dtw([1,2],[1,2,2]) = 0, dtw([1],[1,2,2]) = 2: the
/// triangle inequality fails.
SuiteResult dtw_counterexample_suite();

/// twed <= 2 * sample-wise lp distance for equal lengths and shared stamps.
SuiteResult twice_lp_suite(std::size_t instances, std::uint64_t seed);

/// twed is non-decreasing in lambda and in nu over the tuning grid values.
SuiteResult monotonicity_suite(std::size_t instances, std::uint64_t seed);

/// Approximation bound, gap bound and both lower-bound forms against exact
/// twed; the tight form must dominate the loose one.
SuiteResult bounds_suite(std::size_t instances, std::uint64_t seed);

/// ppm(a, b) equals erp over increments with a zero gap element.
SuiteResult ppm_erp_suite(std::size_t instances, std::uint64_t seed);

struct FdfSuiteOptions {
  std::size_t database_size = 500;
  std::size_t series_length = 64;
  std::size_t queries = 50;
  std::vector<double> radii{1, 2, 4, 8, 16, 32};
  double lambda = 0.01;
  double nu = 0.01;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
};

/// Filtered range queries must return exactly the linear-scan match sets.
/// `pruned_fraction_at_min_radius` is filled for the smallest radius.
SuiteResult fdf_equivalence_suite(const FdfSuiteOptions& options,
                                  double* pruned_fraction_at_min_radius = nullptr);

struct SelftestOptions {
  std::uint64_t seed = 0;
  bool quick = false;  // smaller case counts
  std::size_t workers = 1;
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& options);

/// One "PASS name ..." / "FAIL name ..." line per suite.
void print_suite(std::ostream& out, const SuiteResult& result);

}  // namespace elastika
