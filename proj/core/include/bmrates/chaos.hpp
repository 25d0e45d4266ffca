#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bmrates/covariance.hpp"

namespace bmrates {

inline constexpr std::int64_t kMaxChaosLength = std::int64_t{1} << 14;

// The normalized Hermite partial sum F_n = (n v_n)^{-1/2} sum_{k<n} H_q(X_k)
// over a stationary Gaussian sequence with covariance rho.
struct ChaosSumSpec {
    int q;
    std::int64_t n;
    CovarianceModel model;

    ChaosSumSpec(int q_, std::int64_t n_, CovarianceModel model_);
};

// Window-overlap weight for reindexed lag sums: the fraction of base points
// j in [0, n) for which j+k and j+l also fall in [0, n). Always in [0, 1];
// the max/min expression is clamped at zero where no base point qualifies.
inline double trapezoid_weight(std::int64_t n, std::int64_t k, std::int64_t l) {
    std::int64_t hi = std::max({k, l, std::int64_t{0}});
    std::int64_t lo = std::min({k, l, std::int64_t{0}});
    std::int64_t count = n - hi + lo;
    return count > 0 ? static_cast<double>(count) / static_cast<double>(n) : 0.0;
}

// Three-lag variant, same convention.
inline double trapezoid_weight(std::int64_t n, std::int64_t j, std::int64_t k,
                               std::int64_t l) {
    std::int64_t hi = std::max({j, k, l, std::int64_t{0}});
    std::int64_t lo = std::min({j, k, l, std::int64_t{0}});
    std::int64_t count = n - hi + lo;
    return count > 0 ? static_cast<double>(count) / static_cast<double>(n) : 0.0;
}

struct ContractionNorms {
    int r;
    double nonsym;               // ||f (x)_r f||^2
    std::optional<double> sym;   // ||f ~(x)_r f||^2 when computed exactly
};

struct CumulantReport {
    int q = 0;
    std::int64_t n = 0;
    std::string model_label;
    double hurst = 0.0;  // 0.5 for white noise; NaN for table models

    double v_n = 0.0;
    double kappa3 = 0.0;
    double kappa4_lower = 0.0;
    double kappa4_upper = 0.0;
    bool kappa4_exact = false;
    std::optional<double> gamma1_variance;
    std::vector<ContractionNorms> contractions;
    double kappa3_upper_bound = 0.0;
    double kappa4_structural = 0.0;
    double dtv_upper = 0.0;  // 2 sqrt((q-1)/(3q) kappa4_upper)

    std::string vn_method = "exact-lag-sum";
    std::string kappa3_method = "exact-lag-sum";
    std::string kappa4_method;       // "exact-lag-sum" or "bracket"
    std::string contraction_method = "toeplitz-trace";

    double kappa4_mid() const { return 0.5 * (kappa4_lower + kappa4_upper); }
};

}  // namespace bmrates
