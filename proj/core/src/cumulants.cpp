#include "bmrates/cumulants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmrates/fft.hpp"
#include "bmrates/hermite.hpp"
#include "bmrates/parallel.hpp"

namespace bmrates {

namespace {

using i64 = std::int64_t;

double pow_int(double x, int e) {
    double acc = 1.0, base = x;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// rho(k)^e for k in (-n, n), stored with offset n-1.
std::vector<double> rho_pow_table(const CovarianceModel& model, i64 n, int e) {
    std::vector<double> t(2 * n - 1);
    const i64 off = n - 1;
    t[off] = 1.0;
    for (i64 k = 1; k < n; ++k) {
        double v = pow_int(model.rho(k), e);
        t[off + k] = v;
        t[off - k] = v;
    }
    return t;
}

std::vector<double> rho_column(const CovarianceModel& model, i64 n, int e) {
    std::vector<double> c(n);
    for (i64 k = 0; k < n; ++k) c[k] = pow_int(model.rho(k), e);
    return c;
}

constexpr i64 kDenseTraceCutoff = 512;

// trace((A B)^2) with A, B dense symmetric Toeplitz, fixed evaluation order.
double trace_abab_dense(const std::vector<double>& ta, const std::vector<double>& tb,
                        i64 n) {
    const i64 off = n - 1;
    std::vector<double> a(n * n), b(n * n), c(n * n, 0.0);
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j) {
            a[i * n + j] = ta[off + i - j];
            b[i * n + j] = tb[off + i - j];
        }
    for (i64 i = 0; i < n; ++i)
        for (i64 k = 0; k < n; ++k) {
            const double aik = a[i * n + k];
            const double* brow = &b[k * n];
            double* crow = &c[i * n];
            for (i64 j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    double tr = 0.0;
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j) tr += c[i * n + j] * c[j * n + i];
    return tr;
}

// trace((A B)^2) = sum_j <A B e_j, B A e_j>, columns in pairs through one
// complex transform. O(n^2 log n).
double trace_abab_fft(const std::vector<double>& acol, const std::vector<double>& bcol,
                      i64 n, unsigned workers) {
    ToeplitzOperator A(acol), B(bcol);
    const std::size_t pairs = static_cast<std::size_t>((n + 1) / 2);

    auto column = [n](const std::vector<double>& col, i64 j, double* out) {
        for (i64 t = 0; t < n; ++t) {
            i64 d = t - j;
            out[t] = col[d < 0 ? -d : d];
        }
    };

    return parallel_chunk_sum(pairs, 8, workers, [&](std::size_t cb, std::size_t ce) {
        ToeplitzOperator::Workspace work = A.make_workspace();
        std::vector<double> x0(n), x1(n), y0(n), y1(n), u0(n), u1(n), w0(n), w1(n);
        double acc = 0.0;
        for (std::size_t p = cb; p < ce; ++p) {
            i64 j0 = static_cast<i64>(2 * p);
            i64 j1 = j0 + 1 < n ? j0 + 1 : j0;  // duplicate last odd column
            column(bcol, j0, x0.data());
            column(bcol, j1, x1.data());
            A.apply_pair(x0.data(), x1.data(), u0.data(), u1.data(), work);
            column(acol, j0, y0.data());
            column(acol, j1, y1.data());
            B.apply_pair(y0.data(), y1.data(), w0.data(), w1.data(), work);
            double dot0 = 0.0, dot1 = 0.0;
            for (i64 t = 0; t < n; ++t) dot0 += u0[t] * w0[t];
            if (j1 != j0)
                for (i64 t = 0; t < n; ++t) dot1 += u1[t] * w1[t];
            acc += dot0 + dot1;
        }
        return acc;
    });
}

void require_r(const ChaosSumSpec& spec, int r) {
    if (r < 1 || r >= spec.q)
        throw std::invalid_argument("contraction order r must lie in [1, q-1]");
}

// w(gamma) is piecewise linear in gamma with breakpoints at lo2 = min(a,b,0)
// and hi2 = max(a,b,0); the three segments are accumulated with the
// (sum, gamma*sum) trick so the inner loops stay branch-free.
template <typename Term>
double weighted_gamma_sum(i64 n, i64 lo2, i64 hi2, Term&& term) {
    double acc = 0.0;
    // gamma in [hi2-n+1, lo2]: count = n - hi2 + gamma
    {
        double s0 = 0.0, s1 = 0.0;
        for (i64 g = hi2 - n + 1; g <= lo2; ++g) {
            double t = term(g);
            s0 += t;
            s1 += static_cast<double>(g) * t;
        }
        acc += static_cast<double>(n - hi2) * s0 + s1;
    }
    // gamma in (lo2, hi2): count = n - hi2 + lo2
    {
        double s0 = 0.0;
        for (i64 g = lo2 + 1; g < hi2; ++g) s0 += term(g);
        acc += static_cast<double>(n - hi2 + lo2) * s0;
    }
    // gamma in [max(hi2, lo2+1), n-1+lo2]: count = n - gamma + lo2. The max
    // keeps gamma = lo2 = hi2 from being visited by both outer segments.
    {
        double s0 = 0.0, s1 = 0.0;
        for (i64 g = std::max(hi2, lo2 + 1); g <= n - 1 + lo2; ++g) {
            double t = term(g);
            s0 += t;
            s1 += static_cast<double>(g) * t;
        }
        acc += static_cast<double>(n + lo2) * s0 - s1;
    }
    return acc;
}

// sum over (alpha, beta, gamma) of count * pr[a] pr[g-b] pu[b] ps[g] ps[b-a]
// pu[g-a], the leg-matching split with s legs crossed; pu is rho^{a-s},
// ps is rho^s. count is the number of admissible base points (n * weight).
double leg_split_sum(i64 n, const std::vector<double>& pr, const std::vector<double>& pu,
                     const std::vector<double>& ps, unsigned workers) {
    const i64 off = n - 1;
    const std::size_t total = static_cast<std::size_t>(2 * n - 1);
    return parallel_chunk_sum(total, 4, workers, [&](std::size_t cb, std::size_t ce) {
        double acc = 0.0;
        for (std::size_t ia = cb; ia < ce; ++ia) {
            const i64 alpha = static_cast<i64>(ia) - off;
            const double pra = pr[off + alpha];
            if (pra == 0.0) continue;
            for (i64 beta = -(n - 1); beta <= n - 1; ++beta) {
                if (beta - alpha <= -n || beta - alpha >= n) continue;
                const double c0 = pra * pu[off + beta] * ps[off + beta - alpha];
                if (c0 == 0.0) continue;
                const i64 lo2 = std::min({alpha, beta, i64{0}});
                const i64 hi2 = std::max({alpha, beta, i64{0}});
                const double* prg = pr.data() + off - beta;
                const double* psg = ps.data() + off;
                const double* pug = pu.data() + off - alpha;
                double inner = weighted_gamma_sum(n, lo2, hi2, [&](i64 g) {
                    return prg[g] * psg[g] * pug[g];
                });
                acc += c0 * inner;
            }
        }
        return acc;
    });
}

double hurst_or_default(const CovarianceModel& model) {
    switch (model.kind()) {
        case CovarianceModel::Kind::Fgn:
            return model.hurst();
        case CovarianceModel::Kind::WhiteNoise:
            return 0.5;
        case CovarianceModel::Kind::Table:
            return std::numeric_limits<double>::quiet_NaN();
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

ChaosSumSpec::ChaosSumSpec(int q_, std::int64_t n_, CovarianceModel model_)
    : q(q_), n(n_), model(std::move(model_)) {
    if (q < 2 || q > kMaxHermiteOrder)
        throw std::invalid_argument("ChaosSumSpec: q must lie in [2, 12]");
    if (n < 1 || n > kMaxChaosLength)
        throw std::invalid_argument("ChaosSumSpec: n must lie in [1, 2^14]");
}

double factorial(int n) {
    static const auto table = [] {
        std::array<double, 25> t{};
        unsigned __int128 acc = 1;
        t[0] = 1.0;
        for (int i = 1; i < 25; ++i) {
            acc *= static_cast<unsigned>(i);
            t[i] = static_cast<double>(acc);
        }
        return t;
    }();
    if (n < 0 || n >= 25) throw std::invalid_argument("factorial: out of range");
    return table[n];
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc = acc * (n - i) / (i + 1);
    return std::round(acc);
}

double kappa3_prefactor(int q) {
    if (q % 2 != 0) throw std::invalid_argument("kappa3_prefactor: q must be even");
    double b = binomial(q - 1, q / 2 - 1);
    return 2.0 * q * factorial(q) * factorial(q / 2 - 1) * b * b;
}

double variance_vn(const ChaosSumSpec& spec) {
    const i64 n = spec.n;
    double acc = 1.0;  // j = 0
    for (i64 j = 1; j < n; ++j) {
        double w = 1.0 - static_cast<double>(j) / static_cast<double>(n);
        acc += 2.0 * w * pow_int(spec.model.rho(j), spec.q);
    }
    double vn = factorial(spec.q) * acc;
    if (!(vn > 0.0))
        throw std::logic_error("variance_vn: non-positive variance; covariance model "
                               "violates positive definiteness");
    return vn;
}

double kappa3(const ChaosSumSpec& spec, unsigned workers) {
    if (spec.q % 2 != 0) return 0.0;
    const i64 n = spec.n;
    const i64 off = n - 1;
    const auto t = rho_pow_table(spec.model, n, spec.q / 2);

    const std::size_t total = static_cast<std::size_t>(2 * n - 1);
    double sum_counts =
        parallel_chunk_sum(total, 32, workers, [&](std::size_t cb, std::size_t ce) {
            double acc = 0.0;
            for (std::size_t ik = cb; ik < ce; ++ik) {
                const i64 k = static_cast<i64>(ik) - off;
                const double tk = t[off + k];
                if (tk == 0.0) continue;
                const i64 lo2 = std::min(k, i64{0});
                const i64 hi2 = std::max(k, i64{0});
                const double* tkl = t.data() + off + k;  // t[k - l] at index -l
                const double* tl = t.data() + off;
                double inner = weighted_gamma_sum(n, lo2, hi2, [&](i64 l) {
                    return tkl[-l] * tl[l];
                });
                acc += tk * inner;
            }
            return acc;
        });

    const double vn = variance_vn(spec);
    const double s = sum_counts / static_cast<double>(n);  // counts -> weights
    return kappa3_prefactor(spec.q) / (std::pow(vn, 1.5) * std::sqrt(static_cast<double>(n))) * s;
}

double kappa3_direct(const ChaosSumSpec& spec) {
    if (spec.q % 2 != 0) return 0.0;
    const i64 n = spec.n;
    if (n > 128)
        throw std::invalid_argument("kappa3_direct: reference route capped at n = 128");
    const auto t = rho_pow_table(spec.model, n, spec.q / 2);
    const i64 off = n - 1;
    double s = 0.0;
    for (i64 j = 0; j < n; ++j)
        for (i64 k = 0; k < n; ++k)
            for (i64 l = 0; l < n; ++l)
                s += t[off + k - l] * t[off + k - j] * t[off + l - j];
    const double vn = variance_vn(spec);
    return kappa3_prefactor(spec.q) /
           (std::pow(vn, 1.5) * static_cast<double>(n) * std::sqrt(static_cast<double>(n))) * s;
}

double contraction_norm(const ChaosSumSpec& spec, int r, unsigned workers,
                        TraceRoute route) {
    require_r(spec, r);
    const i64 n = spec.n;
    if (route == TraceRoute::Auto)
        route = n <= kDenseTraceCutoff ? TraceRoute::Dense : TraceRoute::Fft;
    double trace;
    if (route == TraceRoute::Dense) {
        trace = trace_abab_dense(rho_pow_table(spec.model, n, r),
                                 rho_pow_table(spec.model, n, spec.q - r), n);
    } else {
        trace = trace_abab_fft(rho_column(spec.model, n, r),
                               rho_column(spec.model, n, spec.q - r), n, workers);
    }
    const double vn = variance_vn(spec);
    return trace / (vn * vn * static_cast<double>(n) * static_cast<double>(n));
}

double contraction_norm_lag_sum(const ChaosSumSpec& spec, int r) {
    require_r(spec, r);
    const i64 n = spec.n;
    if (n > 128)
        throw std::invalid_argument("contraction_norm_lag_sum: reference route capped at n = 128");
    const auto ta = rho_pow_table(spec.model, n, r);
    const auto tb = rho_pow_table(spec.model, n, spec.q - r);
    const i64 off = n - 1;
    double s = 0.0;
    for (i64 alpha = -(n - 1); alpha <= n - 1; ++alpha)
        for (i64 beta = -(n - 1); beta <= n - 1; ++beta) {
            if (beta - alpha <= -n || beta - alpha >= n) continue;
            double c0 = ta[off + alpha] * tb[off + beta - alpha];
            if (c0 == 0.0) continue;
            for (i64 gamma = -(n - 1); gamma <= n - 1; ++gamma) {
                if (gamma - beta <= -n || gamma - beta >= n) continue;
                double w = trapezoid_weight(n, alpha, beta, gamma);
                if (w == 0.0) continue;
                s += w * c0 * ta[off + gamma - beta] * tb[off + gamma];
            }
        }
    const double vn = variance_vn(spec);
    return s / (vn * vn * static_cast<double>(n));
}

double sym_contraction_norm(const ChaosSumSpec& spec, int r, std::int64_t n_exact,
                            unsigned workers) {
    require_r(spec, r);
    if (spec.q == 2) return contraction_norm(spec, 1, workers);
    if (spec.n > n_exact)
        throw std::domain_error(
            "sym_contraction_norm: n = " + std::to_string(spec.n) +
            " exceeds the exact cutoff " + std::to_string(n_exact) +
            "; only the kappa4 bracket is available in this regime");

    const int a = spec.q - r;
    const i64 n = spec.n;
    const double nonsym = contraction_norm(spec, r, workers);

    // sum_s binom(a,s)^2 T_s with T_s = T_{a-s}; T_0 = T_a is the plain norm.
    const double vn = variance_vn(spec);
    const double scale = vn * vn * static_cast<double>(n) * static_cast<double>(n);
    const auto pr = rho_pow_table(spec.model, n, r);

    double acc = 2.0 * nonsym;  // s = 0 and s = a
    for (int s = 1; 2 * s <= a; ++s) {
        const auto pu = rho_pow_table(spec.model, n, a - s);
        const auto ps = rho_pow_table(spec.model, n, s);
        double ts = leg_split_sum(n, pr, pu, ps, workers) / scale;
        double b = binomial(a, s);
        acc += (2 * s == a ? 1.0 : 2.0) * b * b * ts;
    }
    return factorial(a) * factorial(a) / factorial(2 * a) * acc;
}

namespace {

Kappa4 kappa4_from_norms(const ChaosSumSpec& spec, const std::vector<double>& nonsym,
                         const std::vector<double>* sym) {
    const int q = spec.q;
    const double qfac2 = factorial(q) * factorial(q);
    double lower = 0.0, upper = 0.0, exact_val = 0.0;
    for (int r = 1; r <= q - 1; ++r) {
        double b = binomial(q, r);
        double core = qfac2 * b * b;
        double mix = binomial(2 * q - 2 * r, q - r);
        lower += core * nonsym[r - 1];
        upper += core * (1.0 + mix) * nonsym[r - 1];
        if (sym) exact_val += core * (nonsym[r - 1] + mix * (*sym)[r - 1]);
    }
    if (sym) return {exact_val, exact_val, true};
    return {lower, upper, false};
}

}  // namespace

Kappa4 kappa4_bracket(const ChaosSumSpec& spec, unsigned workers) {
    std::vector<double> nonsym(spec.q - 1);
    for (int r = 1; r <= spec.q - 1; ++r) nonsym[r - 1] = contraction_norm(spec, r, workers);
    return kappa4_from_norms(spec, nonsym, nullptr);
}

Kappa4 kappa4(const ChaosSumSpec& spec, std::int64_t n_exact, unsigned workers) {
    const bool exact = spec.q == 2 || spec.n <= n_exact;
    std::vector<double> nonsym(spec.q - 1);
    for (int r = 1; r <= spec.q - 1; ++r) nonsym[r - 1] = contraction_norm(spec, r, workers);
    if (!exact) return kappa4_from_norms(spec, nonsym, nullptr);
    std::vector<double> sym(spec.q - 1);
    for (int r = 1; r <= spec.q - 1; ++r)
        sym[r - 1] = sym_contraction_norm(spec, r, n_exact, workers);
    return kappa4_from_norms(spec, nonsym, &sym);
}

double gamma1_variance(const ChaosSumSpec& spec, std::int64_t n_exact, unsigned workers) {
    const int q = spec.q;
    double var = 0.0;
    for (int r = 1; r <= q - 1; ++r) {
        double b = binomial(q - 1, r - 1);
        double c = q * factorial(r - 1) * b * b;
        var += c * c * factorial(2 * q - 2 * r) *
               sym_contraction_norm(spec, r, n_exact, workers);
    }
    return var;
}

double kappa3_upper_bound(const ChaosSumSpec& spec) {
    if (spec.q % 2 != 0) return 0.0;
    const double vn = variance_vn(spec);
    const double partial = lp_partial_norm(spec.model, 0.75 * spec.q, spec.n);
    return kappa3_prefactor(spec.q) /
           (std::pow(vn, 1.5) * std::sqrt(static_cast<double>(spec.n))) * partial * partial;
}

double kappa4_structural(const ChaosSumSpec& spec) {
    const double vn = variance_vn(spec);
    const double scale = vn * vn * static_cast<double>(spec.n);
    if (spec.q <= 3) {
        double p = lp_partial_norm(spec.model, 2.0 * spec.q / 3.0, spec.n);
        return p * p * p / scale;
    }
    double p1 = lp_partial_norm(spec.model, spec.q - 1.0, spec.n);
    double p2 = lp_partial_norm(spec.model, 2.0, spec.n);
    return p1 * p1 * p2 / scale;
}

CumulantReport cumulant_report(const ChaosSumSpec& spec, std::int64_t n_exact,
                               unsigned workers) {
    CumulantReport rep;
    rep.q = spec.q;
    rep.n = spec.n;
    rep.model_label = spec.model.label();
    rep.hurst = hurst_or_default(spec.model);
    rep.v_n = variance_vn(spec);
    rep.kappa3 = kappa3(spec, workers);

    const bool exact = spec.q == 2 || spec.n <= n_exact;
    std::vector<double> nonsym(spec.q - 1);
    for (int r = 1; r <= spec.q - 1; ++r) nonsym[r - 1] = contraction_norm(spec, r, workers);
    std::vector<double> sym;
    if (exact) {
        sym.resize(spec.q - 1);
        for (int r = 1; r <= spec.q - 1; ++r)
            sym[r - 1] = sym_contraction_norm(spec, r, n_exact, workers);
    }

    Kappa4 k4 = kappa4_from_norms(spec, nonsym, exact ? &sym : nullptr);
    rep.kappa4_lower = k4.lower;
    rep.kappa4_upper = k4.upper;
    rep.kappa4_exact = k4.exact;
    rep.kappa4_method = k4.exact ? "exact-lag-sum" : "bracket";

    rep.contractions.resize(spec.q - 1);
    for (int r = 1; r <= spec.q - 1; ++r) {
        rep.contractions[r - 1].r = r;
        rep.contractions[r - 1].nonsym = nonsym[r - 1];
        if (exact) rep.contractions[r - 1].sym = sym[r - 1];
    }

    if (exact) {
        double var = 0.0;
        for (int r = 1; r <= spec.q - 1; ++r) {
            double b = binomial(spec.q - 1, r - 1);
            double c = spec.q * factorial(r - 1) * b * b;
            var += c * c * factorial(2 * spec.q - 2 * r) * sym[r - 1];
        }
        rep.gamma1_variance = var;
    }

    rep.kappa3_upper_bound = kappa3_upper_bound(spec);
    rep.kappa4_structural = kappa4_structural(spec);
    rep.dtv_upper = 2.0 * std::sqrt((spec.q - 1.0) / (3.0 * spec.q) * rep.kappa4_upper);
    return rep;
}

}  // namespace bmrates
