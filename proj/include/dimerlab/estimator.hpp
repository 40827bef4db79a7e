#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimerlab/errors.hpp"
#include "dimerlab/expansions.hpp"
#include "dimerlab/lattice.hpp"
#include "dimerlab/matching.hpp"

namespace dimerlab {

// ln of a huge positive count without overflow: n = mant * 2^exp with
// mant in [0.5, 1), so ln n = ln mant + exp * ln 2.
inline double log_bigcount(const BigCount& n) {
  if (n <= 0)
    throw std::domain_error("log_bigcount: argument must be positive");
  if (n == 1) return 0.0;
  signed long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  long double value = std::log(static_cast<long double>(mant)) +
                      static_cast<long double>(exp2) *
                          std::numbers::ln2_v<long double>;
  return static_cast<double>(value);
}

// Dimer count nearest p*V/2, with half-integer ties broken downward:
// k = ceil(p*V/2 - 1/2).
inline long long density_to_k(double p, long long volume) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("density_to_k: p must lie in [0,1]");
  long double x = static_cast<long double>(p) * volume / 2.0L;
  long double k = std::ceil(x - 0.5L);
  if (k < 0.0L) k = 0.0L;
  return static_cast<long long>(k);
}

// Finite-box density point: ln(counts[k]) / V at the dimer count matching p.
struct EstimatePoint {
  LatticeSpec spec;
  long long k_used = 0;
  double raw = 0.0;
};

inline std::pair<long long, double> finite_lambda(const LatticeSpec& spec,
                                                  double p,
                                                  const CountingLimits& limits = {}) {
  long long volume = spec.volume();
  long long k = density_to_k(p, volume);
  MatchingPolynomial poly = matching_polynomial(spec, k, limits);
  const BigCount& count = poly.counts.at(static_cast<std::size_t>(k));
  if (count == 0)
    throw infeasible_error("no matchings with " + std::to_string(k) +
                           " dimers on " + spec.str());
  return {k, log_bigcount(count) / static_cast<double>(volume)};
}

struct EstimateSeries {
  int d = 0;
  double p = 0.0;
  std::vector<EstimatePoint> points;
  double extrapolated = 0.0;
  double fit_residual = 0.0;
};

namespace detail {

inline void validate_sizes(const std::vector<int>& sizes, std::size_t min_count) {
  if (sizes.size() < min_count)
    throw validation_error("need at least " + std::to_string(min_count) +
                           " sizes, got " + std::to_string(sizes.size()));
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1)
      throw validation_error("sizes must be positive, got " +
                             std::to_string(sizes[i]));
    if (i > 0 && sizes[i] <= sizes[i - 1])
      throw validation_error("sizes must be strictly increasing");
  }
}

// Surface proxy: cells within distance 1 of the boundary of an L^d box.
inline double surface_cells(int side, int d) {
  double inner = side > 2 ? std::pow(static_cast<double>(side - 2), d) : 0.0;
  return std::pow(static_cast<double>(side), d) - inner;
}

}  // namespace detail

// Bulk estimate from a sweep of hypercube sizes: least-squares fit of
//   ln N_k(L^d) = lambda * V + beta * A + gamma
// where A counts boundary-layer cells.  Solved by complete orthogonal
// decomposition so the rank-deficient d=1 design (A is constant there,
// collinear with the intercept) still yields the minimum-norm solution;
// lambda itself stays identifiable as long as V is not collinear with
// {A, 1}, which is checked.
inline EstimateSeries extrapolate_lambda(int d, double p,
                                         const std::vector<int>& sizes,
                                         const CountingLimits& limits = {}) {
  if (d < 1) throw std::domain_error("extrapolate_lambda: d must be >= 1");
  detail::validate_sizes(sizes, 3);

  EstimateSeries series;
  series.d = d;
  series.p = p;

  const int n = static_cast<int>(sizes.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd target(n);
  for (int i = 0; i < n; ++i) {
    LatticeSpec spec = hypercube(sizes[static_cast<std::size_t>(i)], d);
    auto [k, raw] = finite_lambda(spec, p, limits);
    double volume = static_cast<double>(spec.volume());
    design(i, 0) = volume;
    design(i, 1) = detail::surface_cells(sizes[static_cast<std::size_t>(i)], d);
    design(i, 2) = 1.0;
    target(i) = raw * volume;  // ln N_k
    series.points.push_back(EstimatePoint{std::move(spec), k, raw});
  }

  // lambda is unidentifiable iff the volume column lies in span{A, 1}.
  Eigen::MatrixXd rest = design.rightCols(2);
  Eigen::VectorXd vcol = design.col(0);
  Eigen::VectorXd proj =
      rest * rest.completeOrthogonalDecomposition().solve(vcol);
  if ((vcol - proj).norm() <= 1e-9 * vcol.norm())
    throw validation_error(
        "fit design is collinear; volume column carries no information");

  Eigen::Vector3d beta =
      design.completeOrthogonalDecomposition().solve(target);
  series.extrapolated = beta(0);
  series.fit_residual = (design * beta - target).cwiseAbs().maxCoeff();
  return series;
}

// Side-by-side comparison of a lattice estimate against the closed forms.
// With >= 3 sizes the estimate is the extrapolated lambda; with 1 or 2 it
// falls back to the largest box's finite value.
struct CompareReport {
  int d = 0;
  double p = 0.0;
  std::string method;  // "extrapolated" or "largest-size"
  std::vector<EstimatePoint> points;
  double estimate = 0.0;
  std::optional<double> fit_residual;
  BoundsPair density_bounds;               // valid for every p
  std::optional<BoundsPair> p1_bounds;     // p = 1 only
  bool inside_density = false;
  std::optional<bool> inside_p1;
  double series_value = 0.0;  // density power series, kmax = 6
  double series_delta = 0.0;
  std::optional<double> series2_value;  // d = 2 extended series, kmax = 7
  std::optional<double> series2_delta;
};

inline CompareReport compare_report(int d, double p,
                                    const std::vector<int>& sizes,
                                    const CountingLimits& limits = {}) {
  if (d < 1) throw std::domain_error("compare_report: d must be >= 1");

  CompareReport report;
  report.d = d;
  report.p = p;

  if (sizes.size() >= 3) {
    EstimateSeries series = extrapolate_lambda(d, p, sizes, limits);
    report.points = std::move(series.points);
    report.estimate = series.extrapolated;
    report.fit_residual = series.fit_residual;
    report.method = "extrapolated";
  } else {
    detail::validate_sizes(sizes, 1);
    for (int side : sizes) {
      LatticeSpec spec = hypercube(side, d);
      auto [k, raw] = finite_lambda(spec, p, limits);
      report.points.push_back(EstimatePoint{std::move(spec), k, raw});
    }
    report.estimate = report.points.back().raw;
    report.method = "largest-size";
  }

  report.density_bounds = fklm_bounds(d, p);
  report.inside_density = report.density_bounds.lower <= report.estimate &&
                          report.estimate <= report.density_bounds.upper;
  if (p == 1.0) {
    report.p1_bounds = minc_bounds(d);
    report.inside_p1 = report.p1_bounds->lower <= report.estimate &&
                       report.estimate <= report.p1_bounds->upper;
  }

  report.series_value = lambda_dp_pseries(d, p, 6);
  report.series_delta = report.estimate - report.series_value;
  if (d == 2) {
    report.series2_value = lambda_2p_series(p, 7);
    report.series2_delta = report.estimate - *report.series2_value;
  }
  return report;
}

}  // namespace dimerlab
