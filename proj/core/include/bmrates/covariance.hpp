#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bmrates {

// Exact fractional-Gaussian-noise covariance
//   rho(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2,  0 < H < 1.
// Large lags switch to a series form of the second difference to avoid the
// cancellation of three nearly equal powers.
double fgn_rho(double hurst, std::int64_t k);

// The tail equivalent H(2H-1)|k|^{2H-2}. Diagnostic only; requires H != 1/2
// and k != 0.
double fgn_rho_asymptotic(double hurst, std::int64_t k);

// Stationary covariance sequence with rho(0) = 1, rho(-k) = rho(k) and
// |rho(k)| <= 1. Immutable after construction.
class CovarianceModel {
public:
    enum class Kind { WhiteNoise, Fgn, Table };

    static CovarianceModel white_noise();
    static CovarianceModel fgn(double hurst);
    // Values are rho(0), rho(1), ..., rho(L); zero beyond the last lag.
    static CovarianceModel table(std::vector<double> values);
    // Two-column text file "lag value" with lags contiguous from 0.
    static CovarianceModel table_from_file(const std::string& path);

    double rho(std::int64_t k) const;

    Kind kind() const { return kind_; }
    double hurst() const { return hurst_; }
    const std::vector<double>& table_values() const { return table_; }
    // Smallest L with rho(k) = 0 for all |k| >= L, or -1 if unbounded support.
    std::int64_t support() const;

    std::string label() const;

private:
    CovarianceModel(Kind kind, double hurst, std::vector<double> table);

    Kind kind_;
    double hurst_ = 0.0;
    std::vector<double> table_;
};

// Partial lp sum  sum_{|k| < n} |rho(k)|^p, p > 0, n >= 1.
double lp_partial_norm(const CovarianceModel& model, double p, std::int64_t n);

}  // namespace bmrates
