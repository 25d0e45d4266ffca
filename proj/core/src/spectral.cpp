#include "bmrates/spectral.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bmrates/fft.hpp"

namespace bmrates {

namespace {

bool is_integer(double p) { return p == std::floor(p); }

double signed_pow_int(double x, int e) {
    double acc = 1.0;
    double base = x;
    int k = e;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

}  // namespace

SpectralDensity spectral_power(const CovarianceModel& model, double p,
                               std::int64_t truncation, int grid) {
    if (!(p > 0.0)) throw std::invalid_argument("spectral_power: p must be positive");
    if (truncation < 1) throw std::invalid_argument("spectral_power: truncation must be >= 1");
    if (grid < 2 || (grid & (grid - 1)) != 0)
        throw std::invalid_argument("spectral_power: grid size must be a power of two");

    const bool int_power = is_integer(p);
    const int ip = int_power ? static_cast<int>(p) : 0;

    std::int64_t top = truncation;
    if (std::int64_t s = model.support(); s >= 0 && s - 1 < top) top = s - 1;

    // Fold the cosine series onto the grid; cos(k t_j) only depends on
    // k mod grid, so the folded coefficients reproduce the truncated series
    // values exactly.
    std::vector<std::complex<double>> folded(grid, 0.0);
    folded[0] += 1.0;  // rho(0)^p
    double sup_ratio = 0.0;
    const bool fgn = model.kind() == CovarianceModel::Kind::Fgn;
    const double decay = fgn ? 2.0 - 2.0 * model.hurst() : 0.0;
    for (std::int64_t k = 1; k <= top; ++k) {
        double r = model.rho(k);
        double c;
        if (int_power) {
            c = signed_pow_int(r, ip);
        } else {
            if (r < 0.0)
                throw std::invalid_argument(
                    "spectral_power: fractional power of a negative covariance value");
            c = std::pow(r, p);
        }
        std::int64_t m = k % grid;
        folded[m] += c;
        folded[(grid - m) % grid] += c;
        if (fgn) {
            double ratio = std::abs(r) * std::pow(static_cast<double>(k), decay);
            if (ratio > sup_ratio) sup_ratio = ratio;
        }
    }

    Fft fft(static_cast<std::size_t>(grid));
    fft.forward(folded.data());

    SpectralDensity g;
    g.power = p;
    g.truncation = truncation;
    g.values.resize(grid);
    for (int j = 0; j < grid; ++j) g.values[j] = folded[j].real();

    if (!fgn || top < truncation) {
        // White noise and tables are supported inside the truncation window.
        g.tail_bound = 0.0;
        g.tail_finite = true;
    } else {
        // |rho(k)| <= A k^{-(2-2H)} with A the scanned supremum of the ratio;
        // integral comparison of the tail power sum.
        double exponent = p * decay;
        if (sup_ratio == 0.0) {
            g.tail_bound = 0.0;
            g.tail_finite = true;
        } else if (exponent > 1.0) {
            double a_pow = std::pow(sup_ratio, p);
            g.tail_bound = 2.0 * a_pow *
                           std::pow(static_cast<double>(truncation), 1.0 - exponent) /
                           (exponent - 1.0);
            g.tail_finite = true;
        } else {
            g.tail_bound = std::numeric_limits<double>::infinity();
            g.tail_finite = false;
        }
    }
    return g;
}

double torus_integral(const SpectralDensity& g, int m) {
    if (m < 1) throw std::invalid_argument("torus_integral: power must be >= 1");
    if (!g.tail_finite)
        throw std::domain_error(
            "torus_integral: spectral density has no finite tail bound");
    double acc = 0.0;
    for (double v : g.values) {
        double term = 1.0;
        for (int i = 0; i < m; ++i) term *= v;
        acc += term;
    }
    return acc * (2.0 * std::numbers::pi / static_cast<double>(g.values.size()));
}

}  // namespace bmrates
