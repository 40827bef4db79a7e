#pragma once

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimerlab/errors.hpp"
#include "dimerlab/exact.hpp"
#include "dimerlab/polynomial.hpp"

namespace dimerlab {

struct BoundsPair {
  double lower = 0.0;
  double upper = 0.0;
};

// Free energy per site of the mean-field (Bethe-like) monomer-dimer gas at
// dimer density p on a d-dimensional lattice:
//   (1/2) * (p ln(2d) - p ln p - 2(1-p) ln(1-p) - p)
// with x ln x read as 0 at the endpoints.  Exact 0 at p=0.
inline double mean_field(int d, double p) {
  if (d < 1) throw std::domain_error("mean_field: d must be >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("mean_field: p must lie in [0,1]");
  long double pl = p;
  long double t = pl * std::log(2.0L * static_cast<long double>(d)) - pl;
  if (p > 0.0) t -= pl * std::log(pl);
  if (p < 1.0) t -= 2.0L * (1.0L - pl) * std::log(1.0L - pl);
  return static_cast<double>(t / 2.0L);
}

// The exact coefficient tables behind the series and bounds.  Immutable,
// built once; every accessor hands out exact rationals.
class CoefficientTable {
 public:
  static const CoefficientTable& instance() {
    static const CoefficientTable table;
    return table;
  }

  // 1/d-expansion coefficients of the dimer constant: c_1..c_3.
  Rational c(int k) const {
    if (k < 1 || k > 3)
      throw capacity_error("order " + std::to_string(k) +
                           " beyond the tabulated 1/d coefficients (max 3)");
    return c_[static_cast<std::size_t>(k - 1)];
  }

  // Density-series coefficient a_k as a polynomial in 1/d: map j -> coeff
  // of (1/d)^j.  Tabulated for k = 2..6.
  const std::map<int, Rational>& a_row(int k) const {
    auto it = a_.find(k);
    if (it == a_.end())
      throw capacity_error("kmax " + std::to_string(k) +
                           " beyond the tabulated density coefficients (2..6)");
    return it->second;
  }

  // a_k evaluated at a concrete dimension, exactly.
  Rational a_at(int k, int d) const {
    Rational sum(0);
    Rational inv_d = rational(1, d);
    for (const auto& [j, coeff] : a_row(k))
      sum += coeff * rational_pow(inv_d, static_cast<unsigned long>(j));
    return sum;
  }

  // Coefficient of p^k in the d=2 density series: 2*b_k / (k(k-1) 4^k),
  // tabulated numerators for k = 2..7 (k=7 exists only at d=2).
  Rational series2_coefficient(int k) const {
    auto it = series2_num_.find(k);
    if (it == series2_num_.end())
      throw capacity_error("kmax " + std::to_string(k) +
                           " beyond the tabulated d=2 series (2..7)");
    return rational(2 * it->second, static_cast<long>(k) * (k - 1)) *
           rational_pow(rational(1, 4), static_cast<unsigned long>(k));
  }

  // Correction polynomial multiplying (1/d)^j in the density expansion,
  // j = 1..3.  Reduces to c_j at p=1.
  const PPoly& correction_poly(int j) const {
    if (j < 1 || j > 3)
      throw capacity_error("order " + std::to_string(j) +
                           " beyond the tabulated correction polynomials (max 3)");
    return corr_[static_cast<std::size_t>(j - 1)];
  }

  // The a_k table reassembled as a series in 1/d with polynomial-in-p
  // coefficients; collect(j) should reproduce correction_poly(j).
  DSeries assemble_dseries() const {
    DSeries series;
    for (const auto& [k, row] : a_)
      for (const auto& [j, coeff] : row)
        series.add(static_cast<unsigned>(j), static_cast<unsigned>(k), coeff);
    return series;
  }

  const std::map<int, std::map<int, Rational>>& a_table() const { return a_; }
  const std::map<int, long>& series2_numerators() const { return series2_num_; }

 private:
  CoefficientTable() {
    c_ = {rational(1, 8), rational(5, 96), rational(5, 64)};

    a_[2] = {{1, rational(1, 8)}};
    a_[3] = {{2, rational(1, 48)}};
    a_[4] = {{2, rational(1, 32)}, {3, rational(-5, 192)}};
    a_[5] = {{3, rational(1, 16)}, {4, rational(-39, 640)}};
    a_[6] = {{3, rational(1, 24)}, {4, rational(-1, 32)}, {5, rational(-19, 1920)}};

    series2_num_ = {{2, 1}, {3, 1}, {4, 7}, {5, 41}, {6, 181}, {7, 757}};

    corr_[0] = PPoly::monomial(2, rational(1, 8));
    corr_[1] = PPoly::monomial(3, rational(1, 48));
    corr_[1].add_term(4, rational(1, 32));
    corr_[2] = PPoly::monomial(4, rational(-5, 192));
    corr_[2].add_term(5, rational(1, 16));
    corr_[2].add_term(6, rational(1, 24));
  }

  std::array<Rational, 3> c_;
  std::map<int, std::map<int, Rational>> a_;
  std::map<int, long> series2_num_;
  std::array<PPoly, 3> corr_;
};

namespace detail {

inline long double minc_gap(int d) {
  long double dl = d;
  return std::log(4.0L * std::numbers::pi_v<long double> * dl) / (4.0L * dl);
}

inline long double inv_48d2(int d) {
  long double dl = d;
  return 1.0L / (48.0L * dl * dl);
}

}  // namespace detail

// Two-sided bounds on the dimer constant lambda_d:
//   (1/2)(ln 2d - 1) <= lambda_d <= (1/2)(ln 2d - 1) + ln(4 pi d)/(4d) + 1/(48 d^2)
// The lower bound is exactly the p=1 mean field.
inline BoundsPair minc_bounds(int d) {
  double lower = mean_field(d, 1.0);
  long double upper = lower + detail::minc_gap(d) + detail::inv_48d2(d);
  return {lower, static_cast<double>(upper)};
}

// Density-resolved bounds on lambda_d(p): mean field from below, plus a
// p-proportional gap from above.  At p=1 the upper bound is tighter than
// the p=1-only one (the 1/(48 d^2) term enters with the opposite sign).
inline BoundsPair fklm_bounds(int d, double p) {
  double lower = mean_field(d, p);
  long double gap =
      static_cast<long double>(p) * (detail::minc_gap(d) - detail::inv_48d2(d));
  return {lower, static_cast<double>(lower + gap)};
}

// Truncated 1/d expansion of the dimer constant, orders 0..3.
inline double lambda_d_asymptotic(int d, int order) {
  if (d < 1) throw std::domain_error("lambda_d_asymptotic: d must be >= 1");
  if (order < 0 || order > 3)
    throw capacity_error("order " + std::to_string(order) +
                         " beyond the tabulated 1/d coefficients (0..3)");
  const auto& table = CoefficientTable::instance();
  Rational corr(0);
  Rational inv_d = rational(1, d);
  for (int k = 1; k <= order; ++k)
    corr += table.c(k) * rational_pow(inv_d, static_cast<unsigned long>(k));
  return mean_field(d, 1.0) + to_double(corr);
}

// Truncated 1/d expansion at density p; reduces bit-for-bit to
// lambda_d_asymptotic at p=1 because the correction polynomials evaluate
// to the same exact rationals there.
inline double lambda_dp_asymptotic(int d, double p, int order) {
  if (d < 1) throw std::domain_error("lambda_dp_asymptotic: d must be >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("lambda_dp_asymptotic: p must lie in [0,1]");
  if (order < 0 || order > 3)
    throw capacity_error("order " + std::to_string(order) +
                         " beyond the tabulated correction polynomials (0..3)");
  const auto& table = CoefficientTable::instance();
  Rational prat = rational_from_double(p);
  Rational corr(0);
  Rational inv_d = rational(1, d);
  for (int j = 1; j <= order; ++j)
    corr += table.correction_poly(j).eval(prat) *
            rational_pow(inv_d, static_cast<unsigned long>(j));
  return mean_field(d, p) + to_double(corr);
}

// Density power series: mean field plus sum_{k=2}^{kmax} a_k(d) p^k,
// kmax = 2..6.
inline double lambda_dp_pseries(int d, double p, int kmax) {
  if (d < 1) throw std::domain_error("lambda_dp_pseries: d must be >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("lambda_dp_pseries: p must lie in [0,1]");
  if (kmax < 2 || kmax > 6)
    throw capacity_error("kmax " + std::to_string(kmax) +
                         " beyond the tabulated density coefficients (2..6)");
  const auto& table = CoefficientTable::instance();
  Rational prat = rational_from_double(p);
  Rational corr(0);
  for (int k = 2; k <= kmax; ++k)
    corr += table.a_at(k, d) * rational_pow(prat, static_cast<unsigned long>(k));
  return mean_field(d, p) + to_double(corr);
}

// d=2 density series with its one extra tabulated order, kmax = 2..7.
// For kmax <= 6 this equals lambda_dp_pseries(2, p, kmax) exactly.
inline double lambda_2p_series(double p, int kmax) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("lambda_2p_series: p must lie in [0,1]");
  if (kmax < 2 || kmax > 7)
    throw capacity_error("kmax " + std::to_string(kmax) +
                         " beyond the tabulated d=2 series (2..7)");
  const auto& table = CoefficientTable::instance();
  Rational prat = rational_from_double(p);
  Rational corr(0);
  for (int k = 2; k <= kmax; ++k)
    corr += table.series2_coefficient(k) *
            rational_pow(prat, static_cast<unsigned long>(k));
  return mean_field(2, p) + to_double(corr);
}

// Exact d=2 dimer constant via the alternating series
//   lambda_2 = (1/pi) sum_{k>=0} (-1)^k / (2k+1)^2,
// summed until the next term drops below tol.
inline double lambda2_exact(double tol) {
  if (!(tol > 0.0)) throw std::domain_error("lambda2_exact: tol must be > 0");
  const long double pi = std::numbers::pi_v<long double>;
  long double sum = 0.0L;
  for (long k = 0;; ++k) {
    long double denom = static_cast<long double>(2 * k + 1);
    long double term = 1.0L / (denom * denom);
    sum += (k % 2 == 0) ? term : -term;
    long double next_denom = static_cast<long double>(2 * k + 3);
    if (1.0L / (next_denom * next_denom * pi) < static_cast<long double>(tol))
      break;
  }
  return static_cast<double>(sum / pi);
}

// --- Cross-check reports ------------------------------------------------

// The a_k table regrouped by powers of 1/d must reproduce the correction
// polynomials of the 1/d expansion, term by term.
struct RearrangementRow {
  int j = 0;
  PPoly expected;
  PPoly collected;
  bool equal = false;
};

inline std::vector<RearrangementRow> rearrangement_check() {
  const auto& table = CoefficientTable::instance();
  DSeries series = table.assemble_dseries();
  std::vector<RearrangementRow> rows;
  for (int j = 1; j <= 3; ++j) {
    RearrangementRow row;
    row.j = j;
    row.expected = table.correction_poly(j);
    row.collected = series.collect(static_cast<unsigned>(j));
    row.equal = row.expected == row.collected;
    rows.push_back(std::move(row));
  }
  return rows;
}

// a_k(2) must equal the d=2 series coefficient for k = 2..6; k = 7 has no
// general-d counterpart and is reported as d=2-only.
struct D2ConsistencyRow {
  int k = 0;
  std::optional<Rational> a_at_2;
  Rational series2;
  std::optional<bool> equal;
  bool d2_only = false;
};

inline std::vector<D2ConsistencyRow> d2_consistency_check() {
  const auto& table = CoefficientTable::instance();
  std::vector<D2ConsistencyRow> rows;
  for (int k = 2; k <= 7; ++k) {
    D2ConsistencyRow row;
    row.k = k;
    row.series2 = table.series2_coefficient(k);
    if (k <= 6) {
      row.a_at_2 = table.a_at(k, 2);
      row.equal = (*row.a_at_2 == row.series2);
    } else {
      row.d2_only = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// At p=1 the correction polynomials must collapse to the 1/d coefficients.
struct P1ReductionRow {
  int j = 0;
  Rational expected;
  Rational at_p1;
  bool equal = false;
};

inline std::vector<P1ReductionRow> p1_reduction_check() {
  const auto& table = CoefficientTable::instance();
  std::vector<P1ReductionRow> rows;
  for (int j = 1; j <= 3; ++j) {
    P1ReductionRow row;
    row.j = j;
    row.expected = table.c(j);
    row.at_p1 = table.correction_poly(j).eval(Rational(1));
    row.equal = (row.expected == row.at_p1);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dimerlab
