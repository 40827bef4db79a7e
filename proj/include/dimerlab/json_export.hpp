#pragma once

// JSON export of the exact coefficient tables.  Kept out of the core
// headers so library consumers without the vendored json.hpp can still use
// everything else.

#include <json.hpp>

#include "dimerlab/expansions.hpp"

namespace dimerlab {

inline nlohmann::ordered_json rational_json(const Rational& r) {
  nlohmann::ordered_json j;
  j["num"] = r.get_num().get_str();
  j["den"] = r.get_den().get_str();
  return j;
}

inline nlohmann::ordered_json coefficient_table_json() {
  const auto& table = CoefficientTable::instance();
  nlohmann::ordered_json j;

  auto inv_d = nlohmann::ordered_json::object();
  for (int k = 1; k <= 3; ++k) inv_d[std::to_string(k)] = rational_json(table.c(k));
  j["inv_d_coefficients"] = std::move(inv_d);

  auto density = nlohmann::ordered_json::object();
  for (const auto& [k, row] : table.a_table()) {
    auto row_json = nlohmann::ordered_json::object();
    for (const auto& [jj, coeff] : row)
      row_json[std::to_string(jj)] = rational_json(coeff);
    density[std::to_string(k)] = std::move(row_json);
  }
  j["density_coefficients"] = std::move(density);

  auto series2 = nlohmann::ordered_json::object();
  for (int k = 2; k <= 7; ++k)
    series2[std::to_string(k)] = rational_json(table.series2_coefficient(k));
  j["d2_series_coefficients"] = std::move(series2);

  return j;
}

}  // namespace dimerlab
