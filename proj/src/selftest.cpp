#include "elastika/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "elastika/approximation.hpp"
#include "elastika/distances.hpp"
#include "elastika/pruning.hpp"
#include "elastika/synthetic.hpp"

namespace elastika {

namespace {

// Records margins and remembers the first violation.
class Checker {
 public:
  explicit Checker(std::string name) : start_(std::chrono::steady_clock::now()) {
    result_.name = std::move(name);
    result_.worst_slack = kInfinity;
  }

  void expect_le(double lhs, double rhs, const std::string& what) {
    const double slack = rhs - lhs;
    if (std::isnan(slack)) {
      fail(what + ": NaN");
      return;
    }
    result_.worst_slack = std::min(result_.worst_slack, slack);
    if (slack < -kSlackTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << what << ": " << lhs << " > " << rhs;
      fail(msg.str());
    }
  }

  void expect_eq(double lhs, double rhs, double tol, const std::string& what) {
    const double slack = tol - std::fabs(lhs - rhs);
    result_.worst_slack = std::min(result_.worst_slack, slack);
    if (!(slack >= 0.0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << what << ": " << lhs << " != " << rhs;
      fail(msg.str());
    }
  }

  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }

  void next_case() { ++result_.cases; }

  SuiteResult finish() {
    if (result_.worst_slack == kInfinity) result_.worst_slack = 0.0;
    result_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  void fail(const std::string& what) {
    if (result_.passed) result_.detail = "case " + std::to_string(result_.cases) + ": " + what;
    result_.passed = false;
  }

  SuiteResult result_;
  std::chrono::steady_clock::time_point start_;
};

double measure(const std::string& name, const TimeSeries& a, const TimeSeries& b,
               const TwedParams& twed_params) {
  if (name == "twed") return twed(a, b, twed_params).cost;
  return erp(a, b, ErpParams{{}, twed_params.p_norm}).cost;
}

}  // namespace

SuiteResult metric_axiom_suite(const std::string& name, std::size_t triples,
                               std::size_t max_length, std::uint64_t seed) {
  if (name != "twed" && name != "erp") throw std::invalid_argument("metric_axiom_suite: twed or erp");
  Checker check(name + " metric axioms");
  SeriesGenerator gen(seed);
  for (std::size_t k = 0; k < triples; ++k) {
    check.next_case();
    const std::size_t dim = gen.index(0, 1) ? 3 : 1;
    const TwedParams params{gen.uniform(0.0, 1.0), 1.0 - gen.uniform(0.0, 1.0), 1};
    const TimeSeries a = gen.random_series(gen.index(1, max_length), dim);
    const TimeSeries b = gen.random_series(gen.index(1, max_length), dim);
    const TimeSeries c = gen.random_series(gen.index(1, max_length), dim);
    const double ab = measure(name, a, b, params);
    const double ba = measure(name, b, a, params);
    const double bc = measure(name, b, c, params);
    const double ac = measure(name, a, c, params);
    check.expect_le(0.0, ab, "non-negativity");
    check.expect(ab > 0.0, "distinct series at distance 0");
    check.expect_eq(measure(name, a, a, params), 0.0, 0.0, "identity");
    check.expect_eq(ab, ba, 1e-12 * std::max(1.0, ab), "symmetry");
    check.expect_le(ac, ab + bc, "triangle");
  }
  return check.finish();
}

SuiteResult dtw_counterexample_suite() {
  Checker check("dtw triangle counterexample");
  check.next_case();
  const TimeSeries a = TimeSeries::from_values({1.0});
  const TimeSeries b = TimeSeries::from_values({1.0, 2.0});
  const TimeSeries c = TimeSeries::from_values({1.0, 2.0, 2.0});
  const DtwParams params{std::nullopt, 2};
  const double ab = dtw(a, b, params).cost;
  const double bc = dtw(b, c, params).cost;
  const double ac = dtw(a, c, params).cost;
  check.expect_eq(ab, 1.0, 0.0, "dtw(A,B)");
  check.expect_eq(bc, 0.0, 0.0, "dtw(B,C)");
  check.expect_eq(ac, 2.0, 0.0, "dtw(A,C)");
  check.expect(ac > ab + bc, "triangle inequality should fail");
  return check.finish();
}

SuiteResult twice_lp_suite(std::size_t instances, std::uint64_t seed) {
  Checker check("twed <= 2 lp");
  SeriesGenerator gen(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    check.next_case();
    const std::size_t n = gen.index(1, 30);
    const std::size_t dim = gen.index(0, 1) ? 3 : 1;
    const int p_norm = gen.index(0, 1) ? 2 : 1;
    const TwedParams params{gen.uniform(0.0, 1.0), 1.0 - gen.uniform(0.0, 1.0), p_norm};
    const TimeSeries a = gen.random_series(n, dim);
    const TimeSeries other = gen.random_series(n, dim);
    const auto stamps = a.stamps();
    const TimeSeries b(dim, {other.values().begin(), other.values().end()},
                       {stamps.begin(), stamps.end()});
    check.expect_le(twed(a, b, params).cost, 2.0 * lp_series_distance(a, b, p_norm), "bound");
  }
  return check.finish();
}

SuiteResult monotonicity_suite(std::size_t instances, std::uint64_t seed) {
  Checker check("twed monotone in lambda, nu");
  SeriesGenerator gen(seed);
  const double nus[] = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  const double lambdas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t k = 0; k < instances; ++k) {
    check.next_case();
    const std::size_t dim = gen.index(0, 1) ? 3 : 1;
    const TimeSeries a = gen.random_series(gen.index(1, 20), dim);
    const TimeSeries b = gen.random_series(gen.index(1, 20), dim);
    double table[6][5];
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 5; ++j) table[i][j] = twed(a, b, TwedParams{lambdas[j], nus[i], 1}).cost;
    }
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 5; ++j) {
        if (i + 1 < 6) check.expect_le(table[i][j], table[i + 1][j], "nu step");
        if (j + 1 < 5) check.expect_le(table[i][j], table[i][j + 1], "lambda step");
      }
    }
  }
  return check.finish();
}

SuiteResult bounds_suite(std::size_t instances, std::uint64_t seed) {
  Checker check("approximation and lower bounds");
  SeriesGenerator gen(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    check.next_case();
    const TwedParams params{gen.uniform(0.0, 1.0), 1.0 - gen.uniform(0.0, 1.0), 1};
    const TimeSeries a = gen.random_series(gen.index(4, 40), 1, 1.0, gen.index(0, 3) == 0);
    const TimeSeries b = gen.random_series(gen.index(4, 40), 1, 1.0, gen.index(0, 3) == 0);
    const auto approx_a = pwca_optimal(a, gen.index(2, a.size() - 1));
    const auto approx_b = pwca_optimal(b, gen.index(2, b.size() - 1));

    const double approx_cost_a = approximation_bound(a.size(), approx_a.r, params.lambda, params.nu, approx_a.delta_t_avg);
    const double approx_cost_b = approximation_bound(b.size(), approx_b.r, params.lambda, params.nu, approx_b.delta_t_avg);
    check.expect_le(twed(approx_a.full, approx_a.extremities, params).cost, approx_cost_a, "approximation bound A");
    check.expect_le(twed(approx_b.full, approx_b.extremities, params).cost, approx_cost_b, "approximation bound B");

    const double exact = twed(a, b, params).cost;
    const double coarse = twed(approx_a.extremities, approx_b.extremities, params).cost;
    check.expect_le(std::fabs(exact - coarse), gap_bound(a, b, approx_a, approx_b, params), "gap bound");

    const double tight = coarse - twed(approx_a.extremities, a, params).cost -
                         twed(approx_b.extremities, b, params).cost;
    const double loose = coarse - (approx_cost_a + 2.0 * approx_a.lp_error) - (approx_cost_b + 2.0 * approx_b.lp_error);
    check.expect_le(tight, exact, "tight lower bound");
    check.expect_le(loose, exact, "loose lower bound");
    check.expect_le(loose, tight, "tight dominates loose");

    const RangeIndexEntry ea = index_series(0, a, params, true);
    const RangeIndexEntry eb = index_series(1, b, params, true);
    const std::size_t shared = std::min(ea.levels.size(), eb.levels.size());
    for (std::size_t level = 0; level < shared; ++level) {
      const double lb_tight = lower_bound(ea, eb, level, BoundForm::tight);
      const double lb_loose = lower_bound(ea, eb, level, BoundForm::loose);
      check.expect_le(lb_tight, exact, "indexed tight bound");
      check.expect_le(lb_loose, lb_tight, "indexed tight dominates loose");
    }
  }
  return check.finish();
}

SuiteResult ppm_erp_suite(std::size_t instances, std::uint64_t seed) {
  Checker check("ppm equals erp on increments");
  SeriesGenerator gen(seed);
  auto ascending = [&](std::size_t n) {
    std::vector<double> v(n);
    double x = gen.uniform(-1.0, 1.0);
    for (double& e : v) {
      e = x;
      x += gen.uniform(0.01, 2.0);
    }
    return v;
  };
  auto increments = [](const std::vector<double>& v) {
    std::vector<double> inc(v.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      inc[i] = v[i] - prev;
      prev = v[i];
    }
    return TimeSeries::from_values(std::move(inc));
  };
  for (std::size_t k = 0; k < instances; ++k) {
    check.next_case();
    const auto a = ascending(gen.index(1, 20));
    const auto b = ascending(gen.index(1, 20));
    const double lhs = ppm(a, b).cost;
    const double rhs = erp(increments(a), increments(b), ErpParams{{}, 1}).cost;
    check.expect_eq(lhs, rhs, 1e-9 * std::max(1.0, rhs), "ppm vs erp");
  }
  return check.finish();
}

SuiteResult fdf_equivalence_suite(const FdfSuiteOptions& options,
                                  double* pruned_fraction_at_min_radius) {
  Checker check("filtered range query equals linear scan");
  if (options.radii.empty()) throw std::invalid_argument("fdf_equivalence_suite: no radii");
  const auto db = synthetic_database(options.database_size, options.series_length, options.seed);
  const auto queries =
      synthetic_database(options.queries, options.series_length, options.seed ^ 0x9e3779b97f4a7c15ULL);
  const RangeIndex index = build_index(db, options.lambda, options.nu, {true, options.workers});
  const double min_radius = *std::min_element(options.radii.begin(), options.radii.end());
  std::size_t pruned = 0, considered = 0;
  for (const auto& q : queries) {
    const RangeIndexEntry entry = index_series(db.size(), q, index.params, true);
    for (double radius : options.radii) {
      check.next_case();
      const auto fast = fdf_range_query(entry, index, radius, options.workers);
      const auto slow = linear_scan_range_query(q, db, radius, index.params, options.workers);
      check.expect(fast.match_ids() == slow.match_ids(),
                   "match sets differ at radius " + std::to_string(radius));
      check.expect(fast.pruned_total() + fast.exact_evaluations == db.size(), "candidate accounting");
      if (radius == min_radius) {
        pruned += fast.pruned_total();
        considered += db.size();
      }
    }
  }
  const double fraction = considered ? double(pruned) / double(considered) : 0.0;
  if (pruned_fraction_at_min_radius) *pruned_fraction_at_min_radius = fraction;
  SuiteResult result = check.finish();
  result.detail += (result.detail.empty() ? "" : "; ") + std::string("pruned fraction at R=") +
                   std::to_string(min_radius) + ": " + std::to_string(fraction);
  return result;
}

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
  const std::size_t scale = options.quick ? 10 : 1;
  const std::uint64_t s = options.seed;
  std::vector<SuiteResult> results;
  results.push_back(metric_axiom_suite("twed", 1000 / scale, 30, s));
  results.push_back(metric_axiom_suite("erp", 1000 / scale, 30, s + 1));
  results.push_back(dtw_counterexample_suite());
  results.push_back(twice_lp_suite(500 / scale, s + 2));
  results.push_back(monotonicity_suite(500 / scale, s + 3));
  results.push_back(bounds_suite(500 / scale, s + 4));
  results.push_back(ppm_erp_suite(200 / scale, s + 5));
  FdfSuiteOptions fdf;
  fdf.database_size = options.quick ? 100 : 200;
  fdf.queries = options.quick ? 5 : 10;
  fdf.workers = options.workers;
  fdf.seed = s + 6;
  results.push_back(fdf_equivalence_suite(fdf));
  return results;
}

void print_suite(std::ostream& out, const SuiteResult& result) {
  out << (result.passed ? "PASS " : "FAIL ") << result.name << " (cases=" << result.cases
      << ", worst_slack=" << result.worst_slack << ", " << result.seconds << " s)";
  if (!result.detail.empty()) out << " " << result.detail;
  out << '\n';
}

}  // namespace elastika
