#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "bmrates/chaos.hpp"
#include "bmrates/fft.hpp"
#include "bmrates/stein.hpp"

namespace bmrates {

// Exact-in-law stationary Gaussian sampling by circulant embedding. The
// plan precomputes the scaled eigenvalue square roots and is immutable, so
// one plan serves any number of concurrent replicates.
class SamplerPlan {
public:
    // Embeds rho into a circulant of the next power of two >= 2n, doubling
    // the size up to twice more if the spectrum comes out negative. A
    // spectrum still negative after that (a table that is not a valid
    // covariance) raises std::runtime_error - this is the operational
    // positive-definiteness check.
    SamplerPlan(const CovarianceModel& model, std::int64_t n);

    std::int64_t n() const { return n_; }
    std::size_t embedding_size() const { return m_; }
    const CovarianceModel& model() const { return model_; }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }

    // Path of X_0..X_{n-1}, exact in law; the draw stream depends only on
    // (seed, replicate).
    void sample_path(std::uint64_t seed, std::uint64_t replicate,
                     std::span<double> out,
                     std::vector<std::complex<double>>& work) const;

    std::vector<double> sample_path(std::uint64_t seed, std::uint64_t replicate) const;

private:
    CovarianceModel model_;
    std::int64_t n_;
    std::size_t m_;
    std::vector<double> eigenvalues_;
    std::vector<double> scaled_sqrt_;  // sqrt(lambda_k / m)
    Fft fft_;
};

// O(n^3) Cholesky factor of the exact covariance; cross-check sampler for
// n <= 256.
std::vector<double> sample_path_cholesky(const CovarianceModel& model, std::int64_t n,
                                         std::uint64_t seed, std::uint64_t replicate);

// Independent replicates of F_n = (n v_n)^{-1/2} sum_k H_q(X_k). vn is the
// exact engine variance for the spec. Replicate i is a pure function of
// (seed, i) regardless of the worker count.
std::vector<double> sample_fn(const SamplerPlan& plan, const ChaosSumSpec& spec,
                              double vn, std::int64_t replicates, std::uint64_t seed,
                              unsigned workers = 0);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t replicates = 0;
    std::uint64_t seed = 0;
};

struct EmpiricalCumulants {
    McEstimate variance;  // k-statistic k2
    McEstimate k3;
    McEstimate k4;
};

// Unbiased k-statistics with delete-one jackknife standard errors.
// Requires at least 1000 samples.
EmpiricalCumulants empirical_cumulants(std::span<const double> samples,
                                       std::uint64_t seed = 0);

// |mean h(samples) - E[h(N)]| with the standard error of the mean; a lower
// bound on the smooth distance d(F, N), so h must carry the certified
// ||h''||_inf <= 1 flag.
McEstimate empirical_distance_lower(std::span<const double> samples,
                                    const TestFunction& h, std::uint64_t seed = 0);

// Mean of |samples|; enters the K = 1 + E|F| constant of the cubic
// remainder bound.
double mean_abs(std::span<const double> samples);

// iid N(0,1) draws with the same counter-stream convention as the sampler.
std::vector<double> sample_gaussian(std::int64_t count, std::uint64_t seed);

}  // namespace bmrates
