#include "bmrates/wick.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bmrates {

namespace {

using u128 = unsigned __int128;

// Checked multiply; falls back to long double only for coefficient
// magnitudes no admissible oracle call ever produces.
bool mul_checked(u128& acc, std::uint64_t f) {
    if (f != 0 && acc > ~u128{0} / f) return false;
    acc *= f;
    return true;
}

constexpr int kMaxSmallFactorial = 20;

std::uint64_t small_factorial(int n) {
    static const auto table = [] {
        std::array<std::uint64_t, kMaxSmallFactorial + 1> t{};
        t[0] = 1;
        for (int i = 1; i <= kMaxSmallFactorial; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table[n];
}

struct Diagram {
    double coeff;               // prod q_a! / prod m_ab!
    std::vector<int> exps;      // exponents per (a, b) pair, a < b, row-major
};

// Enumerates symmetric zero-diagonal matrices with prescribed row sums by
// filling the upper triangle row by row. rem[b] tracks the degree still to
// be matched at vertex b.
void enumerate_rows(const std::vector<int>& degrees, int a, std::vector<int>& rem,
                    std::vector<int>& upper, std::vector<Diagram>& out) {
    const int v = static_cast<int>(degrees.size());
    if (a == v - 1) {
        if (rem[a] != 0) return;
        // Admissible matrix: coefficient prod_a q_a! / prod_{a<b} m_ab!,
        // assembled exactly as (per-vertex multinomials) * prod m_ab!. Each
        // multinomial q_i! / prod_j m_ij! is an integer because row i sums
        // to q_i.
        u128 coeff = 1;
        bool exact = true;
        long double approx = 1.0L;
        for (int i = 0; i < v; ++i) {
            std::uint64_t denom = 1;
            for (int j = 0; j < v; ++j) {
                if (j == i) continue;
                int lo = std::min(i, j), hi = std::max(i, j);
                denom *= small_factorial(upper[lo * v + hi]);
            }
            std::uint64_t multinomial = small_factorial(degrees[i]) / denom;
            if (exact) exact = mul_checked(coeff, multinomial);
            approx *= static_cast<long double>(multinomial);
        }
        for (int i = 0; i < v; ++i)
            for (int j = i + 1; j < v; ++j) {
                std::uint64_t f = small_factorial(upper[i * v + j]);
                if (exact) exact = mul_checked(coeff, f);
                approx *= static_cast<long double>(f);
            }
        Diagram d;
        d.coeff = exact ? static_cast<double>(coeff) : static_cast<double>(approx);
        d.exps.reserve(v * (v - 1) / 2);
        for (int i = 0; i < v; ++i)
            for (int j = i + 1; j < v; ++j) d.exps.push_back(upper[i * v + j]);
        out.push_back(std::move(d));
        return;
    }
    // Distribute rem[a] over columns b = a+1..v-1.
    std::vector<int> cols(v - 1 - a);
    std::iota(cols.begin(), cols.end(), a + 1);

    // Recursive split over the columns of row a.
    struct Rec {
        const std::vector<int>& degrees;
        std::vector<int>& rem;
        std::vector<int>& upper;
        std::vector<Diagram>& out;
        int a, v;
        void fill(int ci, int remaining, const std::vector<int>& cols) {
            if (ci == static_cast<int>(cols.size())) {
                if (remaining != 0) return;
                enumerate_rows(degrees, a + 1, rem, upper, out);
                return;
            }
            int b = cols[ci];
            int cap = std::min(remaining, rem[b]);
            for (int m = 0; m <= cap; ++m) {
                upper[a * v + b] = m;
                rem[b] -= m;
                fill(ci + 1, remaining - m, cols);
                rem[b] += m;
            }
            upper[a * v + b] = 0;
        }
    } rec{degrees, rem, upper, out, a, v};
    rec.fill(0, rem[a], cols);
}

const std::vector<Diagram>& diagrams_for(const std::vector<int>& degrees) {
    static std::mutex mu;
    static std::map<std::vector<int>, std::vector<Diagram>> cache;
    std::lock_guard<std::mutex> lock(mu);  // map nodes stay valid after return
    auto it = cache.find(degrees);
    if (it != cache.end()) return it->second;

    std::vector<Diagram> list;
    int total = std::accumulate(degrees.begin(), degrees.end(), 0);
    if (total % 2 == 0) {
        const int v = static_cast<int>(degrees.size());
        std::vector<int> rem = degrees;
        std::vector<int> upper(static_cast<std::size_t>(v) * v, 0);
        enumerate_rows(degrees, 0, rem, upper, list);
    }
    return cache.emplace(degrees, std::move(list)).first->second;
}

double pow_int(double x, int e) {
    double acc = 1.0, base = x;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

}  // namespace

CorrelationMatrix CorrelationMatrix::identity(int v) {
    CorrelationMatrix c;
    c.v = v;
    c.entries.assign(static_cast<std::size_t>(v) * v, 0.0);
    for (int i = 0; i < v; ++i) c.at(i, i) = 1.0;
    return c;
}

double hermite_product_moment(const std::vector<int>& degrees,
                              const CorrelationMatrix& corr) {
    const int v = static_cast<int>(degrees.size());
    if (v == 0) return 1.0;
    if (v > kWickMaxVertices)
        throw std::invalid_argument("hermite_product_moment: more than " +
                                    std::to_string(kWickMaxVertices) + " vertices");
    for (int q : degrees) {
        if (q < 1 || q > kWickMaxDegree)
            throw std::invalid_argument("hermite_product_moment: degree out of [1, " +
                                        std::to_string(kWickMaxDegree) + "]");
    }
    if (corr.v != v)
        throw std::invalid_argument("hermite_product_moment: correlation size mismatch");

    const auto& diagrams = diagrams_for(degrees);
    double total = 0.0;
    for (const auto& d : diagrams) {
        double term = d.coeff;
        int idx = 0;
        for (int a = 0; a < v; ++a)
            for (int b = a + 1; b < v; ++b) {
                int e = d.exps[idx++];
                if (e != 0) term *= pow_int(corr.at(a, b), e);
            }
        total += term;
    }
    return total;
}

std::int64_t diagram_count(const std::vector<int>& degrees) {
    return static_cast<std::int64_t>(diagrams_for(degrees).size());
}

double oracle_moment(const ChaosSumSpec& spec, int order, double vn) {
    if (spec.n > 6)
        throw std::invalid_argument("oracle_moment: n capped at 6");
    if (order < 1 || order > 4)
        throw std::invalid_argument("oracle_moment: order capped at 4");
    if (spec.q > 6)
        throw std::invalid_argument("oracle_moment: q capped at 6");
    if (!(vn > 0.0))
        throw std::invalid_argument("oracle_moment: vn must be positive");

    const int n = static_cast<int>(spec.n);
    const int m = order;
    std::vector<int> degrees(m, spec.q);
    CorrelationMatrix corr = CorrelationMatrix::identity(m);

    std::vector<int> tuple(m, 0);
    double total = 0.0;
    for (;;) {
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                double r = spec.model.rho(tuple[a] - tuple[b]);
                corr.at(a, b) = r;
                corr.at(b, a) = r;
            }
        total += hermite_product_moment(degrees, corr);
        int pos = m - 1;
        while (pos >= 0 && tuple[pos] == n - 1) tuple[pos--] = 0;
        if (pos < 0) break;
        ++tuple[pos];
    }
    double scale = std::pow(static_cast<double>(n) * vn, -0.5 * m);
    return scale * total;
}

double oracle_variance_vn(const ChaosSumSpec& spec) {
    const int n = static_cast<int>(spec.n);
    if (spec.n > 6)
        throw std::invalid_argument("oracle_variance_vn: n capped at 6");
    std::vector<int> degrees(2, spec.q);
    CorrelationMatrix corr = CorrelationMatrix::identity(2);
    double total = 0.0;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            double r = spec.model.rho(k - l);
            corr.at(0, 1) = r;
            corr.at(1, 0) = r;
            total += hermite_product_moment(degrees, corr);
        }
    return total / static_cast<double>(n);
}

Cumulants4 cumulants_from_moments(double m1, double m2, double m3, double m4) {
    Cumulants4 c;
    c.k1 = m1;
    c.k2 = m2 - m1 * m1;
    c.k3 = m3 - 3.0 * m2 * m1 + 2.0 * m1 * m1 * m1;
    c.k4 = m4 - 3.0 * m2 * m2 - 4.0 * m1 * m3 + 12.0 * m1 * m1 * m2 -
           6.0 * m1 * m1 * m1 * m1;
    return c;
}

std::array<double, 4> moments_from_cumulants(const Cumulants4& c) {
    // E[F^{m+1}] = sum_s binom(m, s) kappa_{s+1} E[F^{m-s}], E[F^0] = 1.
    const double kappa[4] = {c.k1, c.k2, c.k3, c.k4};
    std::array<double, 5> mom{};  // mom[j] = E[F^j]
    mom[0] = 1.0;
    for (int m = 0; m < 4; ++m) {
        double acc = 0.0;
        double binom = 1.0;
        for (int s = 0; s <= m; ++s) {
            acc += binom * kappa[s] * mom[m - s];
            binom = binom * (m - s) / (s + 1.0);
        }
        mom[m + 1] = acc;
    }
    return {mom[1], mom[2], mom[3], mom[4]};
}

}  // namespace bmrates
