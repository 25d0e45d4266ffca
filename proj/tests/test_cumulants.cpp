#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bmrates/cumulants.hpp"
#include "bmrates/wick.hpp"

using namespace bmrates;

namespace {

ChaosSumSpec fgn_spec(int q, std::int64_t n, double hurst) {
    return ChaosSumSpec(q, n, CovarianceModel::fgn(hurst));
}

ChaosSumSpec white_spec(int q, std::int64_t n) {
    return ChaosSumSpec(q, n, CovarianceModel::white_noise());
}

Cumulants4 oracle_cumulants(const ChaosSumSpec& spec, double vn) {
    return cumulants_from_moments(
        oracle_moment(spec, 1, vn), oracle_moment(spec, 2, vn),
        oracle_moment(spec, 3, vn), oracle_moment(spec, 4, vn));
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("white-noise variance is q!") {
    for (std::int64_t n : {1, 3, 17, 256}) {
        CHECK(variance_vn(white_spec(2, n)) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(variance_vn(white_spec(3, n)) == doctest::Approx(6.0).epsilon(1e-15));
    }
}

TEST_CASE("engine variance matches the diagram oracle") {
    for (int q : {2, 3, 4}) {
        for (double hurst : {0.3, 0.5, 0.7}) {
            for (std::int64_t n : {2, 4, 6}) {
                ChaosSumSpec spec = fgn_spec(q, n, hurst);
                CHECK(close_rel(variance_vn(spec), oracle_variance_vn(spec), 1e-12));
            }
        }
    }
}

TEST_CASE("kappa3 vanishes identically for odd q") {
    CHECK(kappa3(fgn_spec(3, 50, 0.7)) == 0.0);
    CHECK(kappa3(fgn_spec(5, 12, 0.4)) == 0.0);
}

TEST_CASE("white-noise kappa3 closed form 2 sqrt(2) / sqrt(n)") {
    for (std::int64_t n : {1, 4, 64, 1024}) {
        double expected = 2.0 * std::sqrt(2.0) / std::sqrt(static_cast<double>(n));
        CHECK(close_rel(kappa3(white_spec(2, n)), expected, 1e-13));
    }
}

TEST_CASE("window-sum kappa3 equals the direct triple sum") {
    for (int q : {2, 4}) {
        for (double hurst : {0.3, 0.7}) {
            for (std::int64_t n : {1, 2, 3, 5, 9, 16, 33, 64}) {
                ChaosSumSpec spec = fgn_spec(q, n, hurst);
                CHECK(close_rel(kappa3(spec), kappa3_direct(spec), 1e-12));
            }
        }
    }
}

TEST_CASE("kappa3 matches the oracle third moment") {
    ChaosSumSpec spec = fgn_spec(4, 3, 0.7);
    double vn = variance_vn(spec);
    CHECK(close_rel(kappa3(spec), oracle_moment(spec, 3, vn), 1e-10));
}

TEST_CASE("white-noise contraction norm is 1/(4n)") {
    for (std::int64_t n : {1, 2, 16, 100}) {
        CHECK(close_rel(contraction_norm(white_spec(2, n), 1), 0.25 / static_cast<double>(n),
                        1e-13));
    }
}

TEST_CASE("trace and lag-window contraction routes agree") {
    for (int q : {2, 3, 4}) {
        for (double hurst : {0.3, 0.6}) {
            for (std::int64_t n : {1, 4, 7, 16, 64}) {
                ChaosSumSpec spec = fgn_spec(q, n, hurst);
                for (int r = 1; r < q; ++r) {
                    CHECK(close_rel(contraction_norm(spec, r),
                                    contraction_norm_lag_sum(spec, r), 1e-12));
                }
            }
        }
    }
}

TEST_CASE("dense and FFT trace routes agree away from the cutoff") {
    for (double hurst : {0.3, 0.7}) {
        for (std::int64_t n : {5, 32, 100, 129}) {
            ChaosSumSpec spec = fgn_spec(3, n, hurst);
            for (int r = 1; r < 3; ++r) {
                double dense = contraction_norm(spec, r, 0, TraceRoute::Dense);
                double fft = contraction_norm(spec, r, 0, TraceRoute::Fft);
                CHECK(close_rel(dense, fft, 1e-11));
            }
        }
    }
}

TEST_CASE("contraction norms are bit-identical across worker counts") {
    ChaosSumSpec spec = fgn_spec(4, 700, 0.7);
    double one = contraction_norm(spec, 2, 1);
    double three = contraction_norm(spec, 2, 3);
    CHECK(one == three);
    double k3_one = kappa3(spec, 1);
    double k3_three = kappa3(spec, 3);
    CHECK(k3_one == k3_three);
}

TEST_CASE("q = 2 symmetrized contraction equals the plain one at any n") {
    for (std::int64_t n : {3, 50, 700, 2000}) {
        ChaosSumSpec spec = fgn_spec(2, n, 0.7);
        CHECK(sym_contraction_norm(spec, 1) == contraction_norm(spec, 1));
    }
}

TEST_CASE("symmetrized contraction never exceeds the plain one") {
    for (int q : {3, 4, 5, 6}) {
        for (double hurst : {0.3, 0.55, 0.7}) {
            ChaosSumSpec spec = fgn_spec(q, 24, hurst);
            for (int r = 1; r < q; ++r) {
                double sym = sym_contraction_norm(spec, r);
                double nonsym = contraction_norm(spec, r);
                CHECK(sym <= nonsym + 1e-12);
                CHECK(sym >= 0.0);
            }
        }
    }
}

TEST_CASE("symmetrized norms above the cutoff are refused") {
    ChaosSumSpec spec = fgn_spec(3, 1024, 0.5);
    CHECK_THROWS_AS(sym_contraction_norm(spec, 1), std::domain_error);
    CHECK_THROWS_AS(gamma1_variance(spec), std::domain_error);
}

TEST_CASE("oracle gate: engine kappa3 and kappa4 on small specs") {
    for (int q : {2, 3, 4}) {
        for (double hurst : {0.3, 0.5, 0.7}) {
            for (std::int64_t n : {2, 4, 6}) {
                ChaosSumSpec spec = fgn_spec(q, n, hurst);
                double vn = variance_vn(spec);
                Cumulants4 oc = oracle_cumulants(spec, vn);
                CHECK(close_rel(kappa3(spec), oc.k3, 1e-10));
                Kappa4 k4 = kappa4(spec);
                REQUIRE(k4.exact);
                CHECK(close_rel(k4.lower, oc.k4, 1e-10));
            }
        }
    }
}

TEST_CASE("white-noise kappa4 closed form 12/n") {
    for (std::int64_t n : {1, 4, 64, 1024}) {
        Kappa4 k4 = kappa4(white_spec(2, n));
        REQUIRE(k4.exact);
        CHECK(close_rel(k4.lower, 12.0 / static_cast<double>(n), 1e-13));
    }
    Kappa4 at_one = kappa4(fgn_spec(2, 1, 0.5));
    CHECK(close_rel(at_one.lower, 12.0, 1e-13));
}

TEST_CASE("kappa4 exact mode matches the oracle at q = 3") {
    ChaosSumSpec spec = fgn_spec(3, 5, 0.6);
    double vn = variance_vn(spec);
    Cumulants4 oc = oracle_cumulants(spec, vn);
    Kappa4 k4 = kappa4(spec);
    REQUIRE(k4.exact);
    CHECK(close_rel(k4.lower, oc.k4, 1e-10));
}

TEST_CASE("bracket encloses the exact value") {
    for (int q : {3, 4, 6}) {
        for (double hurst : {0.3, 0.7}) {
            ChaosSumSpec spec = fgn_spec(q, 48, hurst);
            Kappa4 exact = kappa4(spec);
            Kappa4 bracket = kappa4_bracket(spec);
            REQUIRE(exact.exact);
            CHECK(bracket.lower <= exact.lower + 1e-12);
            CHECK(exact.upper <= bracket.upper + 1e-12);
            CHECK(bracket.lower <= bracket.upper);
            CHECK(bracket.lower > 0.0);
        }
    }
}

TEST_CASE("white-noise Gamma_1 variance is 2/n and the sandwich is tight") {
    for (std::int64_t n : {1, 8, 100}) {
        ChaosSumSpec spec = white_spec(2, n);
        double var = gamma1_variance(spec);
        CHECK(close_rel(var, 2.0 / static_cast<double>(n), 1e-13));
        Kappa4 k4 = kappa4(spec);
        CHECK(close_rel(var, (2.0 - 1.0) / (3.0 * 2.0) * k4.lower, 1e-13));
    }
}

TEST_CASE("variance sandwich holds for every exact report") {
    for (int q : {2, 3, 4, 6}) {
        for (double hurst : {0.3, 0.55, 0.7}) {
            ChaosSumSpec spec = fgn_spec(q, 32, hurst);
            double var = gamma1_variance(spec);
            Kappa4 k4 = kappa4(spec);
            REQUIRE(k4.exact);
            double mid = (q - 1.0) / (3.0 * q) * k4.lower;
            CHECK(var <= mid + 1e-12);
            CHECK(mid <= (q - 1.0) * var + 1e-12);
            CHECK(var >= 0.0);
        }
    }
}

TEST_CASE("max contraction norm is controlled by kappa4") {
    for (int q : {2, 3, 4, 6}) {
        for (double hurst : {0.3, 0.7}) {
            ChaosSumSpec spec = fgn_spec(q, 40, hurst);
            Kappa4 k4 = kappa4(spec);
            double qf = factorial(q);
            for (int r = 1; r < q; ++r) {
                CHECK(contraction_norm(spec, r) <=
                      k4.lower / (qf * qf * q * q) + 1e-12);
            }
        }
    }
}

TEST_CASE("kappa3 upper bound dominates and is tight for white noise") {
    for (std::int64_t n : {1, 16, 256}) {
        ChaosSumSpec spec = white_spec(2, n);
        CHECK(close_rel(kappa3_upper_bound(spec), kappa3(spec), 1e-13));
    }
    for (int q : {2, 4, 6}) {
        for (double hurst : {0.3, 0.55, 0.7}) {
            for (std::int64_t n : {16, 64, 256}) {
                ChaosSumSpec spec = fgn_spec(q, n, hurst);
                CHECK(kappa3(spec) <= kappa3_upper_bound(spec) + 1e-12);
            }
        }
    }
}

TEST_CASE("kappa4 to structural-bound ratio stays bounded along a grid") {
    for (int q : {2, 3, 4}) {
        double lo = 1e300, hi = 0.0;
        for (std::int64_t n : {16, 32, 64, 128, 256}) {
            ChaosSumSpec spec = fgn_spec(q, n, 0.6);
            double ratio = kappa4(spec).lower / kappa4_structural(spec);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        // The constant in front of the structural quantity is unknown, so
        // only the order comparison is meaningful.
        CHECK(hi / lo < 10.0);
    }
}

TEST_CASE("cumulant report carries methods, bounds and signs") {
    ChaosSumSpec spec = fgn_spec(4, 32, 0.7);
    CumulantReport rep = cumulant_report(spec);
    CHECK(rep.kappa4_exact);
    CHECK(rep.kappa4_method == "exact-lag-sum");
    CHECK(rep.kappa3 > 0.0);
    CHECK(rep.kappa4_lower > 0.0);
    CHECK(rep.gamma1_variance.has_value());
    CHECK(rep.contractions.size() == 3);
    for (const auto& c : rep.contractions) {
        CHECK(c.sym.has_value());
        CHECK(*c.sym <= c.nonsym + 1e-15);
    }
    CHECK(rep.dtv_upper ==
          doctest::Approx(2.0 * std::sqrt(0.25 * rep.kappa4_upper)).epsilon(1e-12));

    CumulantReport bracket = cumulant_report(fgn_spec(4, 600, 0.7));
    CHECK_FALSE(bracket.kappa4_exact);
    CHECK(bracket.kappa4_method == "bracket");
    CHECK_FALSE(bracket.gamma1_variance.has_value());
    CHECK(bracket.kappa4_lower <= bracket.kappa4_upper);

    CumulantReport odd = cumulant_report(fgn_spec(3, 16, 0.5));
    CHECK(odd.kappa3 == 0.0);
}

TEST_CASE("spec caps are validated") {
    CHECK_THROWS_AS(ChaosSumSpec(1, 4, CovarianceModel::white_noise()),
                    std::invalid_argument);
    CHECK_THROWS_AS(ChaosSumSpec(13, 4, CovarianceModel::white_noise()),
                    std::invalid_argument);
    CHECK_THROWS_AS(ChaosSumSpec(2, 0, CovarianceModel::white_noise()),
                    std::invalid_argument);
    CHECK_THROWS_AS(ChaosSumSpec(2, (std::int64_t{1} << 14) + 1,
                                 CovarianceModel::white_noise()),
                    std::invalid_argument);
    ChaosSumSpec ok(2, 8, CovarianceModel::white_noise());
    CHECK_THROWS_AS(contraction_norm(ok, 0), std::invalid_argument);
    CHECK_THROWS_AS(contraction_norm(ok, 2), std::invalid_argument);
}
