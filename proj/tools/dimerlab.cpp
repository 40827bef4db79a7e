// dimerlab command-line front end.
//
// Subcommands:
//   count     exact matching polynomial of a box
//   eval      closed-form bounds, series, and expansions
//   check     internal consistency of the coefficient tables
//   estimate  finite-box density estimates vs. the closed forms
//
// Output is a single JSON record on stdout (insertion-ordered keys, so
// identical invocations are byte-identical); estimate also offers --csv.
// Exit codes: 0 success / all checks equal, 1 check mismatch, 2 usage or
// validation problem, 3 capacity guard or infeasible request.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dimerlab/dimerlab.hpp"
#include "dimerlab/json_export.hpp"

namespace {

using nlohmann::ordered_json;

// Fixed 12-significant-digit rendering; emitted as JSON strings so the
// precision is pinned rather than left to the serializer.
std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

dimerlab::CountingLimits limits_from_env() {
  dimerlab::CountingLimits limits;
  const char* raw = std::getenv("DIMERLAB_MAX_FRONTIER_BITS");
  if (raw == nullptr || *raw == '\0') return limits;
  char* end = nullptr;
  long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0')
    throw dimerlab::capacity_error(
        std::string("DIMERLAB_MAX_FRONTIER_BITS must be an integer, got '") +
        raw + "'");
  if (value < 1 || value > dimerlab::kHardFrontierCeiling)
    throw dimerlab::capacity_error(
        "DIMERLAB_MAX_FRONTIER_BITS=" + std::string(raw) +
        " outside the supported range 1.." +
        std::to_string(dimerlab::kHardFrontierCeiling));
  limits.max_frontier_bits = static_cast<int>(value);
  return limits;
}

void emit(const ordered_json& record) { std::cout << record.dump(2) << "\n"; }

ordered_json counts_json(const std::vector<dimerlab::BigCount>& counts) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : counts) arr.push_back(c.get_str());
  return arr;
}

ordered_json points_json(const std::vector<dimerlab::EstimatePoint>& points) {
  ordered_json arr = ordered_json::array();
  for (const auto& pt : points) {
    ordered_json row;
    row["spec"] = pt.spec.str();
    row["volume"] = pt.spec.volume();
    row["k_used"] = pt.k_used;
    row["raw"] = fmt12(pt.raw);
    arr.push_back(std::move(row));
  }
  return arr;
}

// ---- count ---------------------------------------------------------------

int cmd_count(const std::string& spec_text, std::optional<long long> max_k,
              bool oracle) {
  dimerlab::LatticeSpec spec = dimerlab::LatticeSpec::parse(spec_text);
  dimerlab::CountingLimits limits = limits_from_env();
  dimerlab::MatchingPolynomial poly =
      dimerlab::matching_polynomial(spec, max_k, limits);

  ordered_json record;
  record["command"] = "count";
  record["inputs"]["spec"] = spec.str();
  if (max_k) record["inputs"]["max_k"] = *max_k;
  record["inputs"]["oracle"] = oracle;
  record["results"]["volume"] = poly.volume;
  record["results"]["truncated"] = poly.truncated;
  record["results"]["counts"] = counts_json(poly.counts);
  if (oracle) {
    dimerlab::MatchingPolynomial ref = dimerlab::brute_force_matchings(spec);
    ref.counts.resize(poly.counts.size());
    record["results"]["oracle_counts"] = counts_json(ref.counts);
    record["results"]["oracle_match"] = ref.counts == poly.counts;
  }
  record["provenance"] = ordered_json::array();
  emit(record);
  return 0;
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string formula;
  std::optional<int> d;
  std::optional<double> p;
  std::optional<int> order;
  std::optional<int> kmax;
  std::optional<double> tol;
};

[[noreturn]] void eval_usage(const std::string& formula, const std::string& what) {
  throw dimerlab::validation_error("formula '" + formula + "': " + what);
}

// Each formula takes an exact parameter set; anything missing or extra is
// a usage error so typos cannot silently pick up defaults.
void require_params(const EvalArgs& args, bool need_d, bool need_p,
                    bool allow_order, bool allow_kmax, bool allow_tol) {
  if (need_d && !args.d) eval_usage(args.formula, "missing --d");
  if (!need_d && args.d) eval_usage(args.formula, "--d does not apply");
  if (need_p && !args.p) eval_usage(args.formula, "missing --p");
  if (!need_p && args.p) eval_usage(args.formula, "--p does not apply");
  if (!allow_order && args.order) eval_usage(args.formula, "--order does not apply");
  if (!allow_kmax && args.kmax) eval_usage(args.formula, "--kmax does not apply");
  if (!allow_tol && args.tol) eval_usage(args.formula, "--tol does not apply");
}

int cmd_eval(const EvalArgs& args) {
  ordered_json inputs;
  inputs["formula"] = args.formula;
  if (args.d) inputs["d"] = *args.d;
  if (args.p) inputs["p"] = fmt12(*args.p);
  if (args.order) inputs["order"] = *args.order;
  if (args.kmax) inputs["kmax"] = *args.kmax;
  if (args.tol) inputs["tol"] = fmt12(*args.tol);

  ordered_json results;
  if (args.formula == "mean-field") {
    require_params(args, true, true, false, false, false);
    results["value"] = fmt12(dimerlab::mean_field(*args.d, *args.p));
  } else if (args.formula == "eq3") {
    require_params(args, true, false, false, false, false);
    dimerlab::BoundsPair b = dimerlab::minc_bounds(*args.d);
    results["lower"] = fmt12(b.lower);
    results["upper"] = fmt12(b.upper);
  } else if (args.formula == "eq4") {
    require_params(args, true, true, false, false, false);
    dimerlab::BoundsPair b = dimerlab::fklm_bounds(*args.d, *args.p);
    results["lower"] = fmt12(b.lower);
    results["upper"] = fmt12(b.upper);
  } else if (args.formula == "eq6") {
    require_params(args, true, false, true, false, false);
    int order = args.order.value_or(3);
    results["value"] = fmt12(dimerlab::lambda_d_asymptotic(*args.d, order));
  } else if (args.formula == "eq8") {
    require_params(args, true, true, true, false, false);
    int order = args.order.value_or(3);
    results["value"] =
        fmt12(dimerlab::lambda_dp_asymptotic(*args.d, *args.p, order));
  } else if (args.formula == "eq9") {
    require_params(args, true, true, false, true, false);
    int kmax = args.kmax.value_or(6);
    results["value"] = fmt12(dimerlab::lambda_dp_pseries(*args.d, *args.p, kmax));
  } else if (args.formula == "eq16") {
    require_params(args, false, true, false, true, false);
    int kmax = args.kmax.value_or(7);
    results["value"] = fmt12(dimerlab::lambda_2p_series(*args.p, kmax));
  } else if (args.formula == "eq15") {
    require_params(args, false, false, false, false, true);
    double tol = args.tol.value_or(1e-9);
    results["value"] = fmt12(dimerlab::lambda2_exact(tol));
  } else {
    eval_usage(args.formula, "unknown formula");
  }

  ordered_json record;
  record["command"] = "eval";
  record["inputs"] = std::move(inputs);
  record["results"] = std::move(results);
  record["provenance"] = ordered_json::array({args.formula});
  emit(record);
  return 0;
}

// ---- check ---------------------------------------------------------------

ordered_json rearrange_json(bool& all_equal) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : dimerlab::rearrangement_check()) {
    ordered_json r;
    r["j"] = row.j;
    r["expected"] = row.expected.str();
    r["collected"] = row.collected.str();
    r["equal"] = row.equal;
    all_equal = all_equal && row.equal;
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered_json d2_json(bool& all_equal) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : dimerlab::d2_consistency_check()) {
    ordered_json r;
    r["k"] = row.k;
    if (row.a_at_2) r["a_k_at_d2"] = dimerlab::to_string(*row.a_at_2);
    r["series"] = dimerlab::to_string(row.series2);
    if (row.equal) {
      r["equal"] = *row.equal;
      all_equal = all_equal && *row.equal;
    }
    if (row.d2_only) r["d2_only"] = true;
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered_json p1_json(bool& all_equal) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : dimerlab::p1_reduction_check()) {
    ordered_json r;
    r["j"] = row.j;
    r["expected"] = dimerlab::to_string(row.expected);
    r["at_p1"] = dimerlab::to_string(row.at_p1);
    r["equal"] = row.equal;
    all_equal = all_equal && row.equal;
    rows.push_back(std::move(r));
  }
  return rows;
}

int cmd_check(const std::string& which, bool tables) {
  ordered_json results;
  ordered_json provenance = ordered_json::array();
  bool all_equal = true;
  if (which == "rearrange" || which == "all") {
    results["rearrange"] = rearrange_json(all_equal);
    provenance.push_back("eq8");
    provenance.push_back("eq9");
  }
  if (which == "d2" || which == "all") {
    results["d2"] = d2_json(all_equal);
    provenance.push_back("eq9");
    provenance.push_back("eq16");
  }
  if (which == "p1-reduction" || which == "all") {
    results["p1_reduction"] = p1_json(all_equal);
    provenance.push_back("eq6");
    provenance.push_back("eq8");
  }
  results["all_equal"] = all_equal;
  if (tables) results["tables"] = dimerlab::coefficient_table_json();

  ordered_json record;
  record["command"] = "check";
  record["inputs"]["which"] = which;
  record["results"] = std::move(results);
  record["provenance"] = std::move(provenance);
  emit(record);
  return all_equal ? 0 : 1;
}

// ---- estimate ------------------------------------------------------------

void emit_csv(const std::vector<dimerlab::EstimatePoint>& points) {
  std::cout << "spec,volume,k_used,raw\n";
  for (const auto& pt : points)
    std::cout << pt.spec.str() << "," << pt.spec.volume() << "," << pt.k_used
              << "," << fmt12(pt.raw) << "\n";
}

int cmd_estimate(int d, double p, const std::vector<int>& sizes, bool compare,
                 bool csv) {
  dimerlab::CountingLimits limits = limits_from_env();

  ordered_json record;
  record["command"] = "estimate";
  record["inputs"]["d"] = d;
  record["inputs"]["p"] = fmt12(p);
  record["inputs"]["sizes"] = sizes;
  record["inputs"]["compare"] = compare;

  ordered_json results;
  ordered_json provenance = ordered_json::array();
  if (compare) {
    dimerlab::CompareReport report = dimerlab::compare_report(d, p, sizes, limits);
    if (csv) {
      emit_csv(report.points);
      return 0;
    }
    results["points"] = points_json(report.points);
    results["method"] = report.method;
    results["estimate"] = fmt12(report.estimate);
    if (report.fit_residual) results["fit_residual"] = fmt12(*report.fit_residual);
    results["bounds"]["lower"] = fmt12(report.density_bounds.lower);
    results["bounds"]["upper"] = fmt12(report.density_bounds.upper);
    results["inside_bounds"] = report.inside_density;
    provenance.push_back("eq4");
    if (report.p1_bounds) {
      results["p1_bounds"]["lower"] = fmt12(report.p1_bounds->lower);
      results["p1_bounds"]["upper"] = fmt12(report.p1_bounds->upper);
      results["inside_p1_bounds"] = *report.inside_p1;
      provenance.push_back("eq3");
    }
    results["series"] = fmt12(report.series_value);
    results["series_delta"] = fmt12(report.series_delta);
    provenance.push_back("eq9");
    if (report.series2_value) {
      results["series2"] = fmt12(*report.series2_value);
      results["series2_delta"] = fmt12(*report.series2_delta);
      provenance.push_back("eq16");
    }
  } else {
    dimerlab::EstimateSeries series =
        dimerlab::extrapolate_lambda(d, p, sizes, limits);
    if (csv) {
      emit_csv(series.points);
      return 0;
    }
    results["points"] = points_json(series.points);
    results["extrapolated"] = fmt12(series.extrapolated);
    results["fit_residual"] = fmt12(series.fit_residual);
  }

  record["results"] = std::move(results);
  record["provenance"] = std::move(provenance);
  emit(record);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dimer/monomer-dimer counts, series, and estimates"};
  app.require_subcommand(1);

  // count
  auto* count = app.add_subcommand("count", "Matching polynomial of a box");
  std::string count_spec;
  count->add_option("spec", count_spec, "box extents, e.g. 8x8 or 2x3x4")
      ->required();
  long long count_max_k = -1;
  auto* count_max_opt =
      count->add_option("--max-k", count_max_k, "truncate counts at this k");
  bool count_oracle = false;
  count->add_flag("--oracle", count_oracle,
                  "cross-check against the brute-force oracle (<= 24 cells)");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a closed form");
  EvalArgs eval_args;
  std::string eval_formula;
  eval->add_option("--formula", eval_formula,
                   "one of mean-field|eq3|eq4|eq6|eq8|eq9|eq16|eq15")
      ->required();
  int eval_d = 0;
  auto* eval_d_opt = eval->add_option("--d", eval_d, "dimension");
  double eval_p = 0.0;
  auto* eval_p_opt = eval->add_option("--p", eval_p, "dimer density in [0,1]");
  int eval_order = 0;
  auto* eval_order_opt = eval->add_option("--order", eval_order, "truncation order");
  int eval_kmax = 0;
  auto* eval_kmax_opt = eval->add_option("--kmax", eval_kmax, "series cutoff");
  double eval_tol = 0.0;
  auto* eval_tol_opt = eval->add_option("--tol", eval_tol, "stop tolerance");

  // check
  auto* check = app.add_subcommand("check", "Coefficient-table cross-checks");
  std::string check_which = "all";
  check->add_option("--which", check_which, "rearrange|d2|p1-reduction|all")
      ->check(CLI::IsMember({"rearrange", "d2", "p1-reduction", "all"}));
  bool check_tables = false;
  check->add_flag("--tables", check_tables,
                  "include the exact coefficient tables in the output");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Finite-box bulk estimates");
  int est_d = 0;
  estimate->add_option("--d", est_d, "dimension")->required();
  double est_p = 0.0;
  estimate->add_option("--p", est_p, "dimer density in [0,1]")->required();
  std::vector<int> est_sizes;
  estimate->add_option("--sizes", est_sizes, "hypercube sides, e.g. 8,10,12")
      ->required()
      ->delimiter(',');
  bool est_compare = false;
  estimate->add_flag("--compare", est_compare,
                     "compare against bounds and series");
  bool est_csv = false;
  estimate->add_flag("--csv", est_csv, "emit the per-size table as CSV");

  try {
    app.parse(argc, argv);

    if (count->parsed()) {
      std::optional<long long> max_k;
      if (count_max_opt->count() > 0) max_k = count_max_k;
      return cmd_count(count_spec, max_k, count_oracle);
    }
    if (eval->parsed()) {
      eval_args.formula = eval_formula;
      if (eval_d_opt->count() > 0) eval_args.d = eval_d;
      if (eval_p_opt->count() > 0) eval_args.p = eval_p;
      if (eval_order_opt->count() > 0) eval_args.order = eval_order;
      if (eval_kmax_opt->count() > 0) eval_args.kmax = eval_kmax;
      if (eval_tol_opt->count() > 0) eval_args.tol = eval_tol;
      return cmd_eval(eval_args);
    }
    if (check->parsed()) return cmd_check(check_which, check_tables);
    if (estimate->parsed())
      return cmd_estimate(est_d, est_p, est_sizes, est_compare, est_csv);
    return 2;  // unreachable: require_subcommand
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const dimerlab::infeasible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dimerlab::capacity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dimerlab::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
