#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bmrates/rng.hpp"
#include "bmrates/wick.hpp"

using namespace bmrates;

namespace {

// Plain Isserlis moment E[prod_i X_{labels[i]}] by recursive pairing; an
// independent route used to validate the diagram formula on small cases.
double isserlis(std::vector<int> labels, const CorrelationMatrix& corr) {
    if (labels.empty()) return 1.0;
    if (labels.size() % 2 == 1) return 0.0;
    int first = labels.front();
    double acc = 0.0;
    for (std::size_t i = 1; i < labels.size(); ++i) {
        std::vector<int> rest;
        rest.reserve(labels.size() - 2);
        for (std::size_t j = 1; j < labels.size(); ++j)
            if (j != i) rest.push_back(labels[j]);
        acc += corr.at(first, labels[i]) * isserlis(std::move(rest), corr);
    }
    return acc;
}

// E[prod_a H_2(X_a)] over three variables, expanded into monomials and fed
// to the Isserlis recursion.
double h2_product_by_isserlis(const CorrelationMatrix& corr) {
    double acc = 0.0;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<int> labels;
        int bits = 0;
        for (int a = 0; a < 3; ++a) {
            if (mask & (1 << a)) {
                labels.push_back(a);
                labels.push_back(a);
                ++bits;
            }
        }
        double sign = (3 - bits) % 2 == 0 ? 1.0 : -1.0;
        acc += sign * isserlis(labels, corr);
    }
    return acc;
}

CorrelationMatrix corr3(double r01, double r02, double r12) {
    CorrelationMatrix c = CorrelationMatrix::identity(3);
    c.at(0, 1) = c.at(1, 0) = r01;
    c.at(0, 2) = c.at(2, 0) = r02;
    c.at(1, 2) = c.at(2, 1) = r12;
    return c;
}

}  // namespace

TEST_CASE("pair moments are q! rho^q and the diagram is unique") {
    for (int q = 1; q <= 6; ++q) {
        CHECK(diagram_count({q, q}) == 1);
        for (double rho : {-0.3, 0.5, 1.0}) {
            CorrelationMatrix c = CorrelationMatrix::identity(2);
            c.at(0, 1) = c.at(1, 0) = rho;
            double fact = 1.0;
            for (int i = 2; i <= q; ++i) fact *= i;
            CHECK(hermite_product_moment({q, q}, c) ==
                  doctest::Approx(fact * std::pow(rho, q)).epsilon(1e-13));
        }
    }
}

TEST_CASE("triple H_2 moment equals 8 rho12 rho13 rho23") {
    CounterRng rng(11, 0);
    for (int i = 0; i < 20; ++i) {
        double a = rng.next_unit() - 0.5, b = rng.next_unit() - 0.5,
               c = rng.next_unit() - 0.5;
        CorrelationMatrix m = corr3(a, b, c);
        double diagram = hermite_product_moment({2, 2, 2}, m);
        CHECK(diagram == doctest::Approx(8.0 * a * b * c).epsilon(1e-12));
        CHECK(diagram == doctest::Approx(h2_product_by_isserlis(m)).epsilon(1e-12));
    }
}

TEST_CASE("mismatched degrees cannot pair") {
    CorrelationMatrix c = CorrelationMatrix::identity(2);
    c.at(0, 1) = c.at(1, 0) = 0.7;
    CHECK(hermite_product_moment({1, 3}, c) == 0.0);
    CHECK(diagram_count({1, 3}) == 0);
}

TEST_CASE("size guards reject runaway enumerations") {
    CHECK_THROWS_AS(hermite_product_moment(std::vector<int>(9, 2),
                                           CorrelationMatrix::identity(9)),
                    std::invalid_argument);
    CHECK_THROWS_AS(hermite_product_moment({13, 13}, CorrelationMatrix::identity(2)),
                    std::invalid_argument);
}

TEST_CASE("second moment of F_n is one under the oracle's own normalization") {
    for (int q : {2, 3, 4}) {
        for (double hurst : {0.3, 0.7}) {
            for (std::int64_t n : {2, 4, 6}) {
                ChaosSumSpec spec(q, n, CovarianceModel::fgn(hurst));
                double vn = oracle_variance_vn(spec);
                CHECK(oracle_moment(spec, 2, vn) == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("odd-q third moments vanish") {
    ChaosSumSpec spec(3, 4, CovarianceModel::fgn(0.7));
    double vn = oracle_variance_vn(spec);
    CHECK(oracle_moment(spec, 3, vn) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chi-square fourth moment at n = 1") {
    ChaosSumSpec spec(2, 1, CovarianceModel::white_noise());
    double vn = oracle_variance_vn(spec);
    CHECK(vn == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(oracle_moment(spec, 4, vn) == doctest::Approx(15.0).epsilon(1e-12));
}

TEST_CASE("oracle fourth cumulant is positive for chaotic specs") {
    for (int q : {2, 3, 4}) {
        for (double hurst : {0.3, 0.5, 0.7}) {
            ChaosSumSpec spec(q, 4, CovarianceModel::fgn(hurst));
            double vn = oracle_variance_vn(spec);
            Cumulants4 c = cumulants_from_moments(
                oracle_moment(spec, 1, vn), oracle_moment(spec, 2, vn),
                oracle_moment(spec, 3, vn), oracle_moment(spec, 4, vn));
            CHECK(c.k4 > 0.0);
        }
    }
}

TEST_CASE("cumulants from moments: Gaussian and chi-square cases") {
    Cumulants4 g = cumulants_from_moments(0.0, 1.0, 0.0, 3.0);
    CHECK(g.k1 == 0.0);
    CHECK(g.k2 == 1.0);
    CHECK(g.k3 == 0.0);
    CHECK(g.k4 == doctest::Approx(0.0).epsilon(1e-15));
    Cumulants4 c = cumulants_from_moments(0.0, 1.0, 0.0, 15.0);
    CHECK(c.k4 == doctest::Approx(12.0).epsilon(1e-14));
}

TEST_CASE("moment-cumulant recursion round-trips") {
    CounterRng rng(5, 2);
    for (int i = 0; i < 50; ++i) {
        Cumulants4 in{2.0 * rng.next_unit() - 1.0, 0.5 + rng.next_unit(),
                      2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0};
        auto m = moments_from_cumulants(in);
        Cumulants4 out = cumulants_from_moments(m[0], m[1], m[2], m[3]);
        CHECK(out.k1 == doctest::Approx(in.k1).epsilon(1e-12));
        CHECK(out.k2 == doctest::Approx(in.k2).epsilon(1e-12));
        CHECK(out.k3 == doctest::Approx(in.k3).epsilon(1e-12));
        CHECK(out.k4 == doctest::Approx(in.k4).epsilon(1e-12));
    }
}

TEST_CASE("oracle preconditions") {
    ChaosSumSpec ok(2, 4, CovarianceModel::white_noise());
    CHECK_THROWS_AS(oracle_moment(ChaosSumSpec(2, 7, CovarianceModel::white_noise()), 2, 2.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle_moment(ok, 5, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(oracle_moment(ChaosSumSpec(7, 4, CovarianceModel::white_noise()), 2, 1.0),
                    std::invalid_argument);
}
