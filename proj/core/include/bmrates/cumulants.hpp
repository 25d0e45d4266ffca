#pragma once

#include <cstdint>

#include "bmrates/chaos.hpp"

namespace bmrates {

// Exact cumulants of F_n = (n v_n)^{-1/2} sum_{k<n} H_q(X_k), computed from
// the covariance sequence by stationarity-reindexed lag sums. All kernels
// accumulate fixed-size chunks that are reduced in index order, so results
// are bit-identical for any worker count.

// Largest n for which the O(n^3) symmetrized-contraction sums (and with
// them exact kappa_4 and Var(Gamma_1) for q >= 3) are computed; beyond it
// kappa_4 is reported as a bracket. q = 2 is exact at every n because the
// order-1 contraction of a symmetric two-argument kernel is already
// symmetric.
inline constexpr std::int64_t kDefaultExactCutoff = 512;

// v_n = q! sum_{|j|<n} (1 - |j|/n) rho(j)^q. Strictly positive for a valid
// model; a non-positive value raises std::logic_error.
double variance_vn(const ChaosSumSpec& spec);

// kappa_3(F_n); identically zero for odd q. For even q evaluates the
// two-lag window sum in O(n^2).
double kappa3(const ChaosSumSpec& spec, unsigned workers = 0);

// O(n^3) evaluation of kappa_3 straight from the triple index sum; test
// reference for the window-sum route.
double kappa3_direct(const ChaosSumSpec& spec);

// ||f_n (x)_r f_n||^2 for r in [1, q-1]: the four-index covariance sum,
// equal to trace((A B)^2) / (v_n^2 n^2) with A, B the Toeplitz matrices of
// rho^r and rho^{q-r}. Auto picks dense products for small n and
// FFT-accelerated circulant matvecs beyond; the explicit routes exist for
// cross-checking.
enum class TraceRoute { Auto, Dense, Fft };

double contraction_norm(const ChaosSumSpec& spec, int r, unsigned workers = 0,
                        TraceRoute route = TraceRoute::Auto);

// O(n^3) three-lag reference implementation of the same quantity.
double contraction_norm_lag_sum(const ChaosSumSpec& spec, int r);

// ||f_n ~(x)_r f_n||^2. Exact for q = 2 at any n; otherwise requires
// n <= n_exact and evaluates the leg-matching expansion (a triple-lag sum
// per pairing split). Throws std::domain_error above the cutoff.
double sym_contraction_norm(const ChaosSumSpec& spec, int r,
                            std::int64_t n_exact = kDefaultExactCutoff,
                            unsigned workers = 0);

struct Kappa4 {
    double lower;
    double upper;
    bool exact;  // lower == upper == kappa_4 when set

    double value() const { return 0.5 * (lower + upper); }
};

// Exact kappa_4 when the symmetrized norms are available, otherwise the
// bracket [L, U] built from the plain contraction norms alone.
Kappa4 kappa4(const ChaosSumSpec& spec, std::int64_t n_exact = kDefaultExactCutoff,
              unsigned workers = 0);

// Bracket endpoints from the plain contraction norms, at any n.
Kappa4 kappa4_bracket(const ChaosSumSpec& spec, unsigned workers = 0);

// Var(Gamma_1(F_n)) = Var(q^{-1} ||DF_n||^2), from the symmetrized norms;
// same availability rules as sym_contraction_norm.
double gamma1_variance(const ChaosSumSpec& spec,
                       std::int64_t n_exact = kDefaultExactCutoff,
                       unsigned workers = 0);

// Upper-bound functionals from partial lp norms. kappa3_upper_bound is tight
// enough to dominate kappa3 for every even-q spec (zero for odd q);
// kappa4_structural is the constant-free bracketed quantity, useful only
// for order comparisons.
double kappa3_upper_bound(const ChaosSumSpec& spec);
double kappa4_structural(const ChaosSumSpec& spec);

// 2q q! (q/2-1)! binom(q-1, q/2-1)^2 for even q; the kappa_3 prefactor.
double kappa3_prefactor(int q);

// Assembles every exact quantity the spec exposes for one (q, n, model).
CumulantReport cumulant_report(const ChaosSumSpec& spec,
                               std::int64_t n_exact = kDefaultExactCutoff,
                               unsigned workers = 0);

double factorial(int n);
double binomial(int n, int k);

}  // namespace bmrates
