#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bmrates/hermite.hpp"
#include "bmrates/rng.hpp"

using namespace bmrates;

TEST_CASE("low-order Hermite values") {
    CHECK(hermite_eval(2, 2.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(hermite_eval(3, 1.0) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(hermite_eval(4, 0.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(hermite_eval(0, 7.5) == 1.0);
    CHECK(hermite_eval(1, 7.5) == 7.5);
}

TEST_CASE("order cap is enforced with an explicit message") {
    CHECK_THROWS_WITH_AS(hermite_eval(13, 0.0),
                         doctest::Contains("exceeds cap 12"), std::invalid_argument);
    CHECK_THROWS_AS(hermite_eval(-1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hermite_eval(3, std::nan("")), std::invalid_argument);
    CHECK_NOTHROW(hermite_eval(12, 1.0));
}

TEST_CASE("recurrence agrees with explicit coefficients at random points") {
    CounterRng rng(2024, 0);
    for (int i = 0; i < 100; ++i) {
        double x = 10.0 * (2.0 * rng.next_unit() - 1.0);
        double h2 = x * x - 1.0;
        double h3 = x * x * x - 3.0 * x;
        double h4 = x * x * x * x - 6.0 * x * x + 3.0;
        CHECK(hermite_eval(2, x) == doctest::Approx(h2).epsilon(1e-10));
        CHECK(hermite_eval(3, x) == doctest::Approx(h3).epsilon(1e-10));
        CHECK(hermite_eval(4, x) == doctest::Approx(h4).epsilon(1e-10));
    }
}

TEST_CASE("parity H_q(-x) = (-1)^q H_q(x)") {
    CounterRng rng(7, 1);
    for (int q = 0; q <= 12; ++q) {
        for (int i = 0; i < 25; ++i) {
            double x = 8.0 * (2.0 * rng.next_unit() - 1.0);
            double sign = q % 2 == 0 ? 1.0 : -1.0;
            CHECK(hermite_eval(q, -x) ==
                  doctest::Approx(sign * hermite_eval(q, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("quadrature weights sum to one") {
    for (int m : {2, 3, 10, 40, 128}) {
        auto rule = gauss_hermite_nodes(m);
        double sum = 0.0;
        for (auto node : rule) sum += node.w;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(gauss_hermite_nodes(1), std::invalid_argument);
    CHECK_THROWS_AS(gauss_hermite_nodes(0), std::invalid_argument);
}

TEST_CASE("two nodes integrate cubics exactly") {
    auto rule = gauss_hermite_nodes(2);
    double second = gauss_expectation([](double x) { return x * x; }, rule);
    double third = gauss_expectation([](double x) { return x * x * x; }, rule);
    CHECK(second == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(third == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("ten nodes reproduce E[H_3^2] = 6") {
    auto rule = gauss_hermite_nodes(10);
    double v = gauss_expectation(
        [](double x) { return hermite_eval(3, x) * hermite_eval(3, x); }, rule);
    CHECK(v == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("forty nodes reproduce E[cos N] = exp(-1/2)") {
    auto rule = gauss_hermite_nodes(40);
    double v = gauss_expectation([](double x) { return std::cos(x); }, rule);
    CHECK(v == doctest::Approx(std::exp(-0.5)).epsilon(1e-13));
}

TEST_CASE("orthogonality E[H_p H_q] = q! 1{p=q} up to order 8") {
    auto rule = gauss_hermite_nodes(20);
    for (int p = 0; p <= 8; ++p) {
        for (int q = 0; q <= 8; ++q) {
            double v = gauss_expectation(
                [&](double x) { return hermite_eval(p, x) * hermite_eval(q, x); }, rule);
            double expected = 0.0;
            if (p == q) {
                expected = 1.0;
                for (int i = 2; i <= q; ++i) expected *= i;
            }
            CHECK(v == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}
