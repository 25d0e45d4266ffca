#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bmrates/chaos.hpp"

namespace bmrates {

// Brute-force moment machinery for products of Hermite polynomials of
// jointly Gaussian variables, by enumerating pairing-diagram matrices. This
// is the ground truth the fast cumulant engine is checked against; it never
// calls the engine.

inline constexpr int kWickMaxVertices = 8;
inline constexpr int kWickMaxDegree = 12;

// Symmetric unit-diagonal correlation matrix, row-major v x v.
struct CorrelationMatrix {
    int v = 0;
    std::vector<double> entries;

    double at(int a, int b) const { return entries[static_cast<std::size_t>(a) * v + b]; }
    double& at(int a, int b) { return entries[static_cast<std::size_t>(a) * v + b]; }

    static CorrelationMatrix identity(int v);
};

// E[ prod_a H_{q_a}(X_a) ] for jointly standard Gaussian X_a with the given
// correlations: the sum over symmetric nonnegative integer matrices with
// zero diagonal and row sums q_a of
//   prod_a q_a! / prod_{a<b} m_ab!  *  prod_{a<b} corr_ab^{m_ab}.
// Rejects more than kWickMaxVertices vertices or degrees above
// kWickMaxDegree. Zero when sum q_a is odd.
double hermite_product_moment(const std::vector<int>& degrees,
                              const CorrelationMatrix& corr);

// Number of admissible diagram matrices for the given degrees.
std::int64_t diagram_count(const std::vector<int>& degrees);

// E[F_n^order] assembled tuple-by-tuple from hermite_product_moment.
// Requires n <= 6, order <= 4, q <= 6. The variance v_n used for the
// normalization is passed in (it is the one quantity shared with the
// engine, and is itself checkable through order = 2).
double oracle_moment(const ChaosSumSpec& spec, int order, double vn);

// Unnormalized E[V_n^2] = (1/n) sum_{k,l} E[H_q(X_k) H_q(X_l)] from the
// diagram formula; an engine-free route to v_n.
double oracle_variance_vn(const ChaosSumSpec& spec);

struct Cumulants4 {
    double k1, k2, k3, k4;
};

// First four cumulants from raw moments E[F], E[F^2], E[F^3], E[F^4].
Cumulants4 cumulants_from_moments(double m1, double m2, double m3, double m4);

// Raw moments E[F], ..., E[F^4] from cumulants via the moment-cumulant
// recursion; inverse of the above, used for round-trip checks.
std::array<double, 4> moments_from_cumulants(const Cumulants4& c);

}  // namespace bmrates
