#include "bmrates/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bmrates/hermite.hpp"
#include "bmrates/parallel.hpp"
#include "bmrates/rng.hpp"

namespace bmrates {

namespace {

constexpr double kEigenvalueTolerance = 1e-9;  // relative to the largest one

std::vector<double> circulant_spectrum(const CovarianceModel& model, std::size_t m) {
    std::vector<std::complex<double>> c(m, 0.0);
    const std::size_t half = m / 2;
    c[0] = model.rho(0);
    for (std::size_t j = 1; j <= half; ++j) {
        double v = model.rho(static_cast<std::int64_t>(j));
        c[j] = v;
        if (j < m - j) c[m - j] = v;
    }
    Fft fft(m);
    fft.forward(c.data());
    std::vector<double> eig(m);
    for (std::size_t k = 0; k < m; ++k) eig[k] = c[k].real();
    return eig;
}

}  // namespace

SamplerPlan::SamplerPlan(const CovarianceModel& model, std::int64_t n)
    : model_(model), n_(n), m_(Fft::next_pow2(static_cast<std::size_t>(2 * n))), fft_(1) {
    if (n < 2) throw std::invalid_argument("SamplerPlan: need n >= 2");

    for (int attempt = 0;; ++attempt) {
        eigenvalues_ = circulant_spectrum(model_, m_);
        double max_eig = *std::max_element(eigenvalues_.begin(), eigenvalues_.end());
        double min_eig = *std::min_element(eigenvalues_.begin(), eigenvalues_.end());
        if (min_eig >= -kEigenvalueTolerance * std::max(max_eig, 1.0)) break;
        if (attempt >= 2)
            throw std::runtime_error(
                "SamplerPlan: covariance is not embeddable in a nonnegative "
                "circulant (minimum eigenvalue " + std::to_string(min_eig) +
                "); the model is not positive definite");
        m_ *= 2;
    }
    scaled_sqrt_.resize(m_);
    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m_));
    for (std::size_t k = 0; k < m_; ++k)
        scaled_sqrt_[k] = eigenvalues_[k] > 0.0 ? std::sqrt(eigenvalues_[k]) * inv_sqrt_m : 0.0;
    fft_ = Fft(m_);
}

void SamplerPlan::sample_path(std::uint64_t seed, std::uint64_t replicate,
                              std::span<double> out,
                              std::vector<std::complex<double>>& work) const {
    if (out.size() < static_cast<std::size_t>(n_))
        throw std::invalid_argument("sample_path: output span too short");
    CounterRng rng(seed, replicate);
    work.resize(m_);
    for (std::size_t k = 0; k < m_; ++k) {
        double a, b;
        rng.next_gaussian_pair(a, b);
        work[k] = {scaled_sqrt_[k] * a, scaled_sqrt_[k] * b};
    }
    fft_.forward(work.data());
    for (std::int64_t j = 0; j < n_; ++j) out[j] = work[j].real();
}

std::vector<double> SamplerPlan::sample_path(std::uint64_t seed,
                                             std::uint64_t replicate) const {
    std::vector<double> out(n_);
    std::vector<std::complex<double>> work;
    sample_path(seed, replicate, out, work);
    return out;
}

std::vector<double> sample_path_cholesky(const CovarianceModel& model, std::int64_t n,
                                         std::uint64_t seed, std::uint64_t replicate) {
    if (n < 1 || n > 256)
        throw std::invalid_argument("sample_path_cholesky: cross-check capped at n = 256");
    const std::size_t un = static_cast<std::size_t>(n);
    std::vector<double> l(un * un, 0.0);
    for (std::size_t i = 0; i < un; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = model.rho(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j));
            for (std::size_t k = 0; k < j; ++k) s -= l[i * un + k] * l[j * un + k];
            if (i == j) {
                if (s <= 0.0)
                    throw std::runtime_error("sample_path_cholesky: covariance not positive definite");
                l[i * un + i] = std::sqrt(s);
            } else {
                l[i * un + j] = s / l[j * un + j];
            }
        }
    }
    CounterRng rng(seed, replicate);
    std::vector<double> z(un);
    for (std::size_t i = 0; i + 1 < un; i += 2) rng.next_gaussian_pair(z[i], z[i + 1]);
    if (un % 2 == 1) {
        double spare;
        rng.next_gaussian_pair(z[un - 1], spare);
    }
    std::vector<double> x(un, 0.0);
    for (std::size_t i = 0; i < un; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j <= i; ++j) s += l[i * un + j] * z[j];
        x[i] = s;
    }
    return x;
}

std::vector<double> sample_fn(const SamplerPlan& plan, const ChaosSumSpec& spec,
                              double vn, std::int64_t replicates, std::uint64_t seed,
                              unsigned workers) {
    if (plan.n() != spec.n)
        throw std::invalid_argument("sample_fn: plan length does not match the spec");
    if (!(vn > 0.0)) throw std::invalid_argument("sample_fn: vn must be positive");
    std::vector<double> out(static_cast<std::size_t>(replicates));
    const double scale = 1.0 / std::sqrt(static_cast<double>(spec.n) * vn);
    const int q = spec.q;

    parallel_chunk_map(
        static_cast<std::size_t>(replicates), 64, workers,
        [&](std::size_t b, std::size_t e) {
            std::vector<double> path(static_cast<std::size_t>(spec.n));
            std::vector<std::complex<double>> work;
            for (std::size_t i = b; i < e; ++i) {
                plan.sample_path(seed, i, path, work);
                double acc = 0.0;
                for (double x : path) acc += hermite_eval(q, x);
                out[i] = scale * acc;
            }
            return 0.0;
        });
    return out;
}

namespace {

struct KStats {
    double k2, k3, k4;
};

KStats kstats_from_power_sums(double s1, double s2, double s3, double s4, double n) {
    KStats k;
    k.k2 = (n * s2 - s1 * s1) / (n * (n - 1.0));
    k.k3 = (n * n * s3 - 3.0 * n * s2 * s1 + 2.0 * s1 * s1 * s1) /
           (n * (n - 1.0) * (n - 2.0));
    k.k4 = (n * n * (n + 1.0) * s4 - 4.0 * n * (n + 1.0) * s3 * s1 -
            3.0 * n * (n - 1.0) * s2 * s2 + 12.0 * n * s2 * s1 * s1 -
            6.0 * s1 * s1 * s1 * s1) /
           (n * (n - 1.0) * (n - 2.0) * (n - 3.0));
    return k;
}

}  // namespace

EmpiricalCumulants empirical_cumulants(std::span<const double> samples,
                                       std::uint64_t seed) {
    const std::int64_t n = static_cast<std::int64_t>(samples.size());
    if (n < 1000)
        throw std::invalid_argument("empirical_cumulants: need at least 1000 samples");

    // k-statistics of order >= 2 are shift invariant; centering by the grand
    // mean keeps the power sums well conditioned.
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(n);

    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (double x : samples) {
        double c = x - mean;
        double c2 = c * c;
        s1 += c;
        s2 += c2;
        s3 += c2 * c;
        s4 += c2 * c2;
    }
    const double nd = static_cast<double>(n);
    KStats full = kstats_from_power_sums(s1, s2, s3, s4, nd);

    // Delete-one jackknife in one pass over the centered power sums.
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;  // running means of delete-one stats
    double q2 = 0.0, q3 = 0.0, q4 = 0.0;  // running sums of squares
    for (double x : samples) {
        double c = x - mean;
        double c2 = c * c;
        KStats d = kstats_from_power_sums(s1 - c, s2 - c2, s3 - c2 * c, s4 - c2 * c2,
                                          nd - 1.0);
        m2 += d.k2;
        m3 += d.k3;
        m4 += d.k4;
        q2 += d.k2 * d.k2;
        q3 += d.k3 * d.k3;
        q4 += d.k4 * d.k4;
    }
    m2 /= nd;
    m3 /= nd;
    m4 /= nd;
    auto jack_se = [nd](double mean_del, double sumsq) {
        double var = (sumsq / nd - mean_del * mean_del) * (nd - 1.0);
        return var > 0.0 ? std::sqrt(var) : 0.0;
    };

    EmpiricalCumulants out;
    out.variance = {full.k2, jack_se(m2, q2), n, seed};
    out.k3 = {full.k3, jack_se(m3, q3), n, seed};
    out.k4 = {full.k4, jack_se(m4, q4), n, seed};
    return out;
}

McEstimate empirical_distance_lower(std::span<const double> samples,
                                    const TestFunction& h, std::uint64_t seed) {
    if (!h.unit_second_derivative())
        throw std::invalid_argument(
            "empirical_distance_lower: test function lacks the certified "
            "||h''|| <= 1 flag, so |E h(F) - E h(N)| would not bound the smooth "
            "distance");
    const std::int64_t n = static_cast<std::int64_t>(samples.size());
    if (n < 2) throw std::invalid_argument("empirical_distance_lower: need >= 2 samples");
    double mean = 0.0;
    for (double x : samples) mean += h.h(x);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double x : samples) {
        double d = h.h(x) - mean;
        var += d * d;
    }
    var /= static_cast<double>(n - 1);
    McEstimate est;
    est.value = std::abs(mean - h.mean_h());
    est.std_error = std::sqrt(var / static_cast<double>(n));
    est.replicates = n;
    est.seed = seed;
    return est;
}

double mean_abs(std::span<const double> samples) {
    double acc = 0.0;
    for (double x : samples) acc += std::abs(x);
    return samples.empty() ? 0.0 : acc / static_cast<double>(samples.size());
}

std::vector<double> sample_gaussian(std::int64_t count, std::uint64_t seed) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        double a, b;
        rng.next_gaussian_pair(a, b);
        out[i] = a;
    }
    return out;
}

}  // namespace bmrates
