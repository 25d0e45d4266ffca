#include "bmrates/rates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bmrates/cumulants.hpp"

namespace bmrates {

namespace {

constexpr double kBranchEps = 1e-12;
constexpr double kBoundaryWindow = 0.02;

void check_rate_range(int q, double hurst) {
    double top = 1.0 - 1.0 / (2.0 * q);
    if (!(hurst > 0.0) || hurst >= top - kBranchEps)
        throw std::domain_error(
            "outside rate-table regime: need 0 < H < 1 - 1/(2q) = " +
            std::to_string(top));
}

bool near(double hurst, double b) { return std::abs(hurst - b) < kBoundaryWindow; }

}  // namespace

RateLaw rate_kappa3(int q, double hurst) {
    if (q < 2 || q % 2 != 0)
        throw std::invalid_argument("rate_kappa3: q must be even (kappa3 vanishes for odd q)");
    check_rate_range(q, hurst);
    const double b = 1.0 - 2.0 / (3.0 * q);
    RateLaw law;
    law.near_boundary = near(hurst, b);
    if (hurst < b - kBranchEps) {
        law.exponent = -0.5;
        law.log_power = 0;
        law.regime = "H < 1-2/(3q)";
    } else if (hurst <= b + kBranchEps) {
        law.exponent = -0.5;
        law.log_power = 2;
        law.regime = "H = 1-2/(3q)";
    } else {
        law.exponent = 1.5 - 3.0 * q + 3.0 * q * hurst;
        law.log_power = 0;
        law.regime = "H > 1-2/(3q)";
    }
    return law;
}

RateLaw rate_kappa4(int q, double hurst) {
    if (q < 2) throw std::invalid_argument("rate_kappa4: q must be >= 2");
    check_rate_range(q, hurst);
    RateLaw law;
    if (q <= 3) {
        const double b = 1.0 - 3.0 / (4.0 * q);
        law.near_boundary = near(hurst, b);
        if (hurst < b - kBranchEps) {
            law.exponent = -1.0;
            law.log_power = 0;
            law.regime = "H < 1-3/(4q)";
        } else if (hurst <= b + kBranchEps) {
            law.exponent = -1.0;
            law.log_power = 3;
            law.regime = "H = 1-3/(4q)";
        } else {
            law.exponent = 4.0 * q * hurst - 4.0 * q + 2.0;
            law.log_power = 0;
            law.regime = "H > 1-3/(4q)";
        }
        return law;
    }
    const double b1 = 0.75;
    const double b2 = 1.0 - 1.0 / (2.0 * q - 2.0);
    law.near_boundary = near(hurst, b1) || near(hurst, b2);
    if (hurst < b1 - kBranchEps) {
        law.exponent = -1.0;
        law.log_power = 0;
        law.regime = "H < 3/4";
    } else if (hurst <= b1 + kBranchEps) {
        law.exponent = -1.0;
        law.log_power = 1;
        law.regime = "H = 3/4";
    } else if (hurst < b2 - kBranchEps) {
        law.exponent = 4.0 * hurst - 4.0;
        law.log_power = 0;
        law.regime = "3/4 < H < 1-1/(2q-2)";
    } else if (hurst <= b2 + kBranchEps) {
        law.exponent = 4.0 * hurst - 4.0;
        law.log_power = 2;
        law.regime = "H = 1-1/(2q-2)";
    } else {
        law.exponent = 4.0 * q * hurst - 4.0 * q + 2.0;
        law.log_power = 0;
        law.regime = "H > 1-1/(2q-2)";
    }
    return law;
}

double limit_kappa3(int q, const CovarianceModel& model, std::int64_t truncation,
                    int grid) {
    if (q < 2 || q % 2 != 0)
        throw std::invalid_argument("limit_kappa3: q must be even");
    if (model.kind() == CovarianceModel::Kind::Fgn) {
        double b = 1.0 - 2.0 / (3.0 * q);
        if (model.hurst() >= b - kBranchEps)
            throw std::domain_error(
                "limit_kappa3: rho^{3q/4} is not summable for H >= 1-2/(3q)");
    }
    SpectralDensity g = spectral_power(model, 0.5 * q, truncation, grid);
    double i3 = torus_integral(g, 3);
    double i2 = torus_integral(g, 2);
    return kappa3_prefactor(q) / std::pow(factorial(q), 1.5) *
           std::sqrt(2.0 * std::numbers::pi) * i3 / std::pow(i2, 1.5);
}

double limit_kappa4_q2(const CovarianceModel& model, std::int64_t truncation, int grid) {
    if (model.kind() == CovarianceModel::Kind::Fgn && model.hurst() >= 0.625 - kBranchEps)
        throw std::domain_error("limit_kappa4_q2: rho^{4/3} is not summable for H >= 5/8");
    SpectralDensity g = spectral_power(model, 1.0, truncation, grid);
    double i4 = torus_integral(g, 4);
    double i2 = torus_integral(g, 2);
    return 24.0 * std::numbers::pi * i4 / (i2 * i2);
}

RateVerdict fit_slope(std::span<const std::int64_t> ns, std::span<const double> values,
                      const RateLaw& law, double tolerance) {
    const std::size_t m = ns.size();
    if (m < 5 || values.size() != m)
        throw std::invalid_argument("fit_slope: need at least 5 grid points");
    std::vector<double> xs(m), ys(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(values[i] > 0.0))
            throw std::invalid_argument("fit_slope: values must be positive");
        if (ns[i] < 2) throw std::invalid_argument("fit_slope: grid points must be >= 2");
        double ln = std::log(static_cast<double>(ns[i]));
        xs[i] = ln;
        ys[i] = std::log(values[i]) - law.log_power * std::log(ln);
    }
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= m;
    ybar /= m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    const double slope = sxy / sxx;
    const double intercept = ybar - slope * xbar;

    RateVerdict v;
    v.law = law;
    double ssr = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double r = ys[i] - (intercept + slope * xs[i]);
        ssr += r * r;
        v.max_residual = std::max(v.max_residual, std::abs(r));
    }
    v.fitted = slope;
    v.rmse = std::sqrt(ssr / m);
    double slope_var = m > 2 ? ssr / (m - 2.0) / sxx : 0.0;
    v.half_width = 2.0 * std::sqrt(slope_var);
    v.boundary_widened = law.near_boundary;
    v.tolerance = v.boundary_widened ? std::max(tolerance, 0.2) : tolerance;
    v.pass = std::abs(slope - law.exponent) <= v.tolerance;
    return v;
}

bool surprise_regime(int q, double hurst) {
    RateLaw k3 = rate_kappa3(q, hurst);
    RateLaw k4 = rate_kappa4(q, hurst);
    return k4.exponent > k3.exponent + kBranchEps;
}

SurpriseReport surprise_check(int q, double hurst, std::span<const std::int64_t> k3_ns,
                              std::span<const std::int64_t> k4_ns, unsigned workers) {
    if (q < 6 || q % 2 != 0)
        throw std::invalid_argument("surprise_check: requires even q >= 6");
    SurpriseReport rep;
    rep.kappa3_law = rate_kappa3(q, hurst);
    rep.kappa4_law = rate_kappa4(q, hurst);
    rep.exponent_gap = rep.kappa4_law.exponent - rep.kappa3_law.exponent;
    rep.surprise = rep.exponent_gap > kBranchEps;

    CovarianceModel model = CovarianceModel::fgn(hurst);
    std::vector<double> k3_vals(k3_ns.size());
    for (std::size_t i = 0; i < k3_ns.size(); ++i)
        k3_vals[i] = kappa3(ChaosSumSpec(q, k3_ns[i], model), workers);
    rep.kappa3_fit = fit_slope(k3_ns, k3_vals, rep.kappa3_law);

    std::vector<double> lo(k4_ns.size()), hi(k4_ns.size());
    for (std::size_t i = 0; i < k4_ns.size(); ++i) {
        Kappa4 k4 = kappa4_bracket(ChaosSumSpec(q, k4_ns[i], model), workers);
        lo[i] = k4.lower;
        hi[i] = k4.upper;
    }
    rep.kappa4_lower_fit = fit_slope(k4_ns, lo, rep.kappa4_law);
    rep.kappa4_upper_fit = fit_slope(k4_ns, hi, rep.kappa4_law);
    return rep;
}

}  // namespace bmrates
