#pragma once

#include <string>

#include <json.hpp>

#include "bmrates/chaos.hpp"
#include "bmrates/rates.hpp"
#include "bmrates/simulate.hpp"

namespace bmrates {

// 17 significant digits; round-trips any double.
std::string format_double(double x);

// Flat grid row: q, H, n, v_n, kappa3, kappa4_lo, kappa4_hi, gamma1_var.
// gamma1_var is empty in bracket mode.
std::string report_csv_header();
std::string report_csv_row(const CumulantReport& rep);

nlohmann::json report_to_json(const CumulantReport& rep);
nlohmann::json verdict_to_json(const RateVerdict& v);
nlohmann::json estimate_to_json(const McEstimate& e);

}  // namespace bmrates
