#include "bmrates/io.hpp"

#include <cmath>
#include <cstdio>

namespace bmrates {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string report_csv_header() {
    return "q,H,n,v_n,kappa3,kappa4_lo,kappa4_hi,gamma1_var";
}

std::string report_csv_row(const CumulantReport& rep) {
    std::string row;
    row += std::to_string(rep.q);
    row += ',';
    row += std::isnan(rep.hurst) ? std::string() : format_double(rep.hurst);
    row += ',';
    row += std::to_string(rep.n);
    row += ',';
    row += format_double(rep.v_n);
    row += ',';
    row += format_double(rep.kappa3);
    row += ',';
    row += format_double(rep.kappa4_lower);
    row += ',';
    row += format_double(rep.kappa4_upper);
    row += ',';
    if (rep.gamma1_variance) row += format_double(*rep.gamma1_variance);
    return row;
}

nlohmann::json report_to_json(const CumulantReport& rep) {
    nlohmann::json j;
    j["spec"] = {{"q", rep.q}, {"n", rep.n}, {"model", rep.model_label}};
    if (!std::isnan(rep.hurst)) j["spec"]["hurst"] = rep.hurst;
    j["v_n"] = rep.v_n;
    j["kappa3"] = rep.kappa3;
    j["kappa4"] = {{"lower", rep.kappa4_lower},
                   {"upper", rep.kappa4_upper},
                   {"exact", rep.kappa4_exact}};
    if (rep.gamma1_variance) j["gamma1_variance"] = *rep.gamma1_variance;
    nlohmann::json contractions = nlohmann::json::array();
    for (const auto& c : rep.contractions) {
        nlohmann::json jc{{"r", c.r}, {"nonsym", c.nonsym}};
        if (c.sym) jc["sym"] = *c.sym;
        contractions.push_back(jc);
    }
    j["contraction_norms"] = contractions;
    j["kappa3_upper_bound"] = rep.kappa3_upper_bound;
    j["kappa4_structural"] = rep.kappa4_structural;
    j["dtv_upper"] = rep.dtv_upper;
    j["method"] = {{"v_n", rep.vn_method},
                   {"kappa3", rep.kappa3_method},
                   {"kappa4", rep.kappa4_method},
                   {"contractions", rep.contraction_method}};
    return j;
}

nlohmann::json verdict_to_json(const RateVerdict& v) {
    return nlohmann::json{{"fitted", v.fitted},
                          {"half_width", v.half_width},
                          {"exponent", v.law.exponent},
                          {"log_power", v.law.log_power},
                          {"regime", v.law.regime},
                          {"tolerance", v.tolerance},
                          {"boundary", v.boundary_widened},
                          {"pass", v.pass},
                          {"max_residual", v.max_residual},
                          {"rmse", v.rmse}};
}

nlohmann::json estimate_to_json(const McEstimate& e) {
    return nlohmann::json{{"value", e.value},
                          {"std_error", e.std_error},
                          {"replicates", e.replicates},
                          {"seed", e.seed}};
}

}  // namespace bmrates
