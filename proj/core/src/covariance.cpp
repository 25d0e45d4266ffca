#include "bmrates/covariance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bmrates {

namespace {

void check_hurst(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("Hurst index must lie in (0, 1)");
}

// (1+u)^{2H} + (1-u)^{2H} - 2 as a series in u^2; the generalized binomial
// coefficients are built incrementally. Converges fast for |u| <= 1/32.
double second_difference_series(double two_h, double u) {
    double coeff = 1.0;  // C(2H, j) running value
    double upow = 1.0;
    double acc = 0.0;
    for (int j = 1; j <= 24; ++j) {
        coeff *= (two_h - (j - 1)) / j;
        upow *= u;
        if (j % 2 == 0) {
            double term = 2.0 * coeff * upow;
            acc += term;
            if (std::abs(term) < 1e-18 * std::abs(acc)) break;
        }
    }
    return acc;
}

}  // namespace

double fgn_rho(double hurst, std::int64_t k) {
    check_hurst(hurst);
    std::int64_t a = k < 0 ? -k : k;
    if (a == 0) return 1.0;
    const double two_h = 2.0 * hurst;
    const double x = static_cast<double>(a);
    if (a < 32) {
        return 0.5 * (std::pow(x + 1.0, two_h) - 2.0 * std::pow(x, two_h) +
                      std::pow(x - 1.0, two_h));
    }
    // rho(k) = k^{2H} [(1+1/k)^{2H} + (1-1/k)^{2H} - 2] / 2
    return 0.5 * std::pow(x, two_h) * second_difference_series(two_h, 1.0 / x);
}

double fgn_rho_asymptotic(double hurst, std::int64_t k) {
    check_hurst(hurst);
    if (k == 0)
        throw std::invalid_argument("fgn_rho_asymptotic: k = 0 is not meaningful");
    const double x = static_cast<double>(k < 0 ? -k : k);
    return hurst * (2.0 * hurst - 1.0) * std::pow(x, 2.0 * hurst - 2.0);
}

CovarianceModel::CovarianceModel(Kind kind, double hurst, std::vector<double> table)
    : kind_(kind), hurst_(hurst), table_(std::move(table)) {}

CovarianceModel CovarianceModel::white_noise() {
    return CovarianceModel(Kind::WhiteNoise, 0.0, {});
}

CovarianceModel CovarianceModel::fgn(double hurst) {
    check_hurst(hurst);
    return CovarianceModel(Kind::Fgn, hurst, {});
}

CovarianceModel CovarianceModel::table(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("table model: need at least rho(0)");
    if (values[0] != 1.0)
        throw std::invalid_argument("table model: rho(0) must equal 1");
    for (double v : values)
        if (!(std::abs(v) <= 1.0))
            throw std::invalid_argument("table model: |rho(k)| must be <= 1");
    return CovarianceModel(Kind::Table, 0.0, std::move(values));
}

CovarianceModel CovarianceModel::table_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("table model: cannot open " + path);
    std::vector<double> values;
    std::string line;
    std::int64_t expected_lag = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::int64_t lag;
        double value;
        if (!(ls >> lag)) continue;  // blank or comment-only line
        if (!(ls >> value))
            throw std::runtime_error("table model: malformed line in " + path);
        if (lag != expected_lag)
            throw std::runtime_error(
                "table model: lags must be contiguous from 0 (saw " +
                std::to_string(lag) + ", expected " + std::to_string(expected_lag) + ")");
        values.push_back(value);
        ++expected_lag;
    }
    return table(std::move(values));
}

double CovarianceModel::rho(std::int64_t k) const {
    std::int64_t a = k < 0 ? -k : k;
    switch (kind_) {
        case Kind::WhiteNoise:
            return a == 0 ? 1.0 : 0.0;
        case Kind::Fgn:
            return fgn_rho(hurst_, a);
        case Kind::Table:
            return a < static_cast<std::int64_t>(table_.size()) ? table_[a] : 0.0;
    }
    return 0.0;
}

std::int64_t CovarianceModel::support() const {
    switch (kind_) {
        case Kind::WhiteNoise:
            return 1;
        case Kind::Fgn:
            return -1;
        case Kind::Table:
            return static_cast<std::int64_t>(table_.size());
    }
    return -1;
}

std::string CovarianceModel::label() const {
    switch (kind_) {
        case Kind::WhiteNoise:
            return "white";
        case Kind::Fgn: {
            std::ostringstream out;
            out << "fgn(H=" << hurst_ << ")";
            return out.str();
        }
        case Kind::Table:
            return "table(" + std::to_string(table_.size()) + " lags)";
    }
    return "?";
}

double lp_partial_norm(const CovarianceModel& model, double p, std::int64_t n) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_partial_norm: p must be positive");
    if (n < 1) throw std::invalid_argument("lp_partial_norm: n must be >= 1");
    std::int64_t top = n - 1;
    if (std::int64_t s = model.support(); s >= 0 && s - 1 < top) top = s - 1;
    double acc = 1.0;  // |rho(0)|^p
    for (std::int64_t k = 1; k <= top; ++k)
        acc += 2.0 * std::pow(std::abs(model.rho(k)), p);
    return acc;
}

}  // namespace bmrates
