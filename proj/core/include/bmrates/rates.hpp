#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "bmrates/chaos.hpp"
#include "bmrates/spectral.hpp"

namespace bmrates {

// Theoretical decay law c * n^exponent * log^{log_power} n for a cumulant
// along an fGN n-grid. regime spells out the branch condition on H;
// near_boundary marks H within 0.02 of an interior branch point, where
// finite-n log corrections contaminate fitted slopes.
struct RateLaw {
    double exponent = 0.0;
    int log_power = 0;
    std::string regime;
    bool near_boundary = false;
};

// kappa_3 branches (q even):
//   H < 1-2/(3q)  ->  n^{-1/2}
//   H = 1-2/(3q)  ->  n^{-1/2} log^2 n
//   H > 1-2/(3q)  ->  n^{3/2-3q+3qH},   valid up to H < 1-1/(2q).
RateLaw rate_kappa3(int q, double hurst);

// kappa_4 branches; for q in {2,3}:
//   H < 1-3/(4q) -> n^{-1};  H = 1-3/(4q) -> n^{-1} log^3 n;
//   H > 1-3/(4q) -> n^{4qH-4q+2};
// and for q > 3:
//   H < 3/4 -> n^{-1};  H = 3/4 -> n^{-1} log n;
//   3/4 < H < 1-1/(2q-2) -> n^{4H-4};  H = 1-1/(2q-2) -> n^{4H-4} log^2 n;
//   H > 1-1/(2q-2) -> n^{4qH-4q+2}.  All valid up to H < 1-1/(2q).
RateLaw rate_kappa4(int q, double hurst);

// Limit of sqrt(n) kappa_3(F_n) when rho^{3q/4} is summable (fGN:
// H < 1-2/(3q)); q must be even. Evaluated from torus integrals of the
// truncated spectral density of rho^{q/2}.
double limit_kappa3(int q, const CovarianceModel& model,
                    std::int64_t truncation = kDefaultSpectralTruncation,
                    int grid = kDefaultTorusGrid);

// Limit of n kappa_4(F_n) for q = 2 when rho^{4/3} is summable (fGN:
// H < 5/8): 24 pi * int g^4 / (int g^2)^2.
double limit_kappa4_q2(const CovarianceModel& model,
                       std::int64_t truncation = kDefaultSpectralTruncation,
                       int grid = kDefaultTorusGrid);

struct RateVerdict {
    double fitted = 0.0;
    double half_width = 0.0;  // 2 x standard error of the slope
    RateLaw law;
    double tolerance = 0.1;
    bool boundary_widened = false;
    bool pass = false;
    double max_residual = 0.0;
    double rmse = 0.0;
};

// Least-squares slope of log(value / log^{log_power} n) against log n,
// compared to the law's exponent. Needs at least 5 grid points and strictly
// positive values; near-boundary laws get the widened 0.2 tolerance.
RateVerdict fit_slope(std::span<const std::int64_t> ns, std::span<const double> values,
                      const RateLaw& law, double tolerance = 0.1);

// Branch comparison alone: true when the kappa_4 law decays strictly slower
// than the kappa_3 law at (q, H). q must be even and H inside the table
// range.
bool surprise_regime(int q, double hurst);

struct SurpriseReport {
    RateLaw kappa3_law;
    RateLaw kappa4_law;
    double exponent_gap = 0.0;  // kappa4 exponent - kappa3 exponent
    bool surprise = false;
    RateVerdict kappa3_fit;
    RateVerdict kappa4_lower_fit;
    RateVerdict kappa4_upper_fit;
};

// Confirms the branch comparison with fitted slopes from exact engine
// kappa_3 values and kappa_4 bracket endpoints. Requires even q >= 6.
SurpriseReport surprise_check(int q, double hurst, std::span<const std::int64_t> k3_ns,
                              std::span<const std::int64_t> k4_ns,
                              unsigned workers = 0);

}  // namespace bmrates
