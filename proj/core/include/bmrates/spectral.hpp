#pragma once

#include <cstdint>
#include <vector>

#include "bmrates/covariance.hpp"

namespace bmrates {

// Truncated spectral density of rho^p on a uniform torus grid:
//   g_p(t) = rho(0)^p + 2 sum_{k=1}^{K} rho(k)^p cos(k t).
// tail_bound reports 2 sum_{k>K} |rho(k)|^p estimated by integral
// comparison; tail_finite is false when that series cannot be bounded
// (rho^p not summable), in which case the grid values are still filled but
// integrals are refused.
struct SpectralDensity {
    std::vector<double> values;  // g_p at t_j = 2*pi*j/G
    double power = 1.0;
    std::int64_t truncation = 0;
    double tail_bound = 0.0;
    bool tail_finite = true;
};

inline constexpr std::int64_t kDefaultSpectralTruncation = std::int64_t{1} << 16;
inline constexpr int kDefaultTorusGrid = 4096;

// Integer p is applied as a signed power; fractional p requires rho >= 0 on
// the truncation range. The grid size must be a power of two.
SpectralDensity spectral_power(const CovarianceModel& model, double p,
                               std::int64_t truncation = kDefaultSpectralTruncation,
                               int grid = kDefaultTorusGrid);

// Trapezoid rule for int_T g(t)^m dt on the uniform periodic grid. Exact for
// trigonometric polynomials of degree below the grid size. Throws
// std::domain_error when g carries no finite tail bound.
double torus_integral(const SpectralDensity& g, int m);

}  // namespace bmrates
