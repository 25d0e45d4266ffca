#include "bmrates/stein.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bmrates/hermite.hpp"

namespace bmrates {

namespace {

constexpr double kFunctionalTol = 1e-10;
constexpr int kInitialNodes = 64;
constexpr int kMaxNodes = 4096;

// Doubles the Gauss-Hermite node count until two successive values agree.
template <typename F>
double adaptive_gauss_expectation(F&& f) {
    double prev = gauss_expectation(f, gauss_hermite_nodes(kInitialNodes));
    for (int m = 2 * kInitialNodes; m <= kMaxNodes; m *= 2) {
        double cur = gauss_expectation(f, gauss_hermite_nodes(m));
        if (std::abs(cur - prev) <= kFunctionalTol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    std::ostringstream msg;
    msg << "gaussian functional did not converge under node doubling (last value "
        << prev << ")";
    throw std::runtime_error(msg.str());
}

// 20-point Gauss-Legendre rule on [-1, 1].
const std::vector<QuadratureNode>& legendre_rule() {
    static const std::vector<QuadratureNode> rule = [] {
        const int m = 20;
        std::vector<QuadratureNode> r(m);
        for (int i = 0; i < (m + 1) / 2; ++i) {
            double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p1 = 1.0, p2 = 0.0;
                for (int j = 0; j < m; ++j) {
                    double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
                }
                pp = m * (z * p1 - p2) / (z * z - 1.0);
                double z1 = z;
                z = z1 - p1 / pp;
                if (std::abs(z - z1) < 1e-15) break;
            }
            double w = 2.0 / ((1.0 - z * z) * pp * pp);
            r[i] = {-z, w};
            r[m - 1 - i] = {z, w};
        }
        return r;
    }();
    return rule;
}

// Composite Gauss-Legendre integral of f over [0, b] with the given panel
// count.
template <typename F>
double panel_integral(F&& f, double b, int panels) {
    const auto& rule = legendre_rule();
    const double h = b / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        double mid = (p + 0.5) * h;
        double half = 0.5 * h;
        double local = 0.0;
        for (const auto& node : rule) local += node.w * f(mid + half * node.x);
        acc += half * local;
    }
    return acc;
}

constexpr double kTailLength = 13.0;  // exp(-13^2/2) ~ 2e-37

}  // namespace

TestFunction::TestFunction(std::string name, Fn h, Fn dh, Fn d2h,
                           bool certify_unit_second_derivative)
    : name_(std::move(name)),
      h_(std::move(h)),
      dh_(std::move(dh)),
      d2h_(std::move(d2h)),
      certified_(certify_unit_second_derivative) {
    if (certified_) {
        for (double x = -10.0; x <= 10.0; x += 1.0 / 128.0) {
            if (std::abs(d2h_(x)) > 1.0 + 1e-9)
                throw std::invalid_argument(
                    "TestFunction " + name_ +
                    ": |h''| exceeds 1, cannot certify the smooth-distance class");
        }
    }
    mean_h_ = adaptive_gauss_expectation([this](double x) { return h_(x); });
    f2_mean_ = -1.0 / 3.0 *
               adaptive_gauss_expectation(
                   [this](double x) { return h_(x) * hermite_eval(3, x); });
    f3_mean_ = -1.0 / 4.0 *
               adaptive_gauss_expectation(
                   [this](double x) { return h_(x) * hermite_eval(4, x); });
}

double stein_solve(const TestFunction& tf, double x) {
    const double eh = tf.mean_h();
    // Left form for x <= 0, right form for x > 0; both integrands carry
    // exp(-u^2/2 - |x| u) after the substitution, so nothing overflows.
    auto integrand = [&](double u) {
        if (x <= 0.0) return (tf.h(x - u) - eh) * std::exp(-0.5 * u * u + x * u);
        return -(tf.h(x + u) - eh) * std::exp(-0.5 * u * u - x * u);
    };
    double coarse = panel_integral(integrand, kTailLength, 26);
    double fine = panel_integral(integrand, kTailLength, 52);
    double residual = std::abs(fine - coarse);
    if (residual > 1e-8 * (1.0 + std::abs(fine))) {
        std::ostringstream msg;
        msg << "stein_solve: quadrature did not converge at x = " << x
            << " (residual estimate " << residual << ")";
        throw std::runtime_error(msg.str());
    }
    return fine;
}

double gaussian_functional(const TestFunction& tf, GaussianFunctional which) {
    switch (which) {
        case GaussianFunctional::MeanH:
            return tf.mean_h();
        case GaussianFunctional::SteinF2:
            return tf.stein_f2_mean();
        case GaussianFunctional::SteinF3:
            return tf.stein_f3_mean();
    }
    throw std::invalid_argument("gaussian_functional: unknown selector");
}

std::pair<TestFunction, TestFunction> test_pair() {
    const double se = std::sqrt(std::numbers::e);
    TestFunction g("sine", [](double x) { return std::sin(x); },
                   [](double x) { return std::cos(x); },
                   [](double x) { return -std::sin(x); }, true);
    const double c = 1.0 / (1.0 + se);
    TestFunction h(
        "cosine-quadratic",
        [c, se](double x) { return c * (se * std::cos(x) - 1.0 + 0.5 * (x * x - 1.0)); },
        [c, se](double x) { return c * (-se * std::sin(x) + x); },
        [c, se](double x) { return c * (1.0 - se * std::cos(x)); }, true);
    return {std::move(g), std::move(h)};
}

double edgeworth_prediction(double kappa3, double kappa4, const TestFunction& h) {
    return 0.5 * kappa3 * h.stein_f2_mean() + kappa4 / 6.0 * h.stein_f3_mean();
}

bool daly_bound_check(const TestFunction& tf, int k) {
    if (k != 0 && k != 1)
        throw std::invalid_argument("daly_bound_check: only k in {0, 1} supported");
    const double eh = tf.mean_h();
    double sup_f = 0.0, sup_h = 0.0;
    for (double x = -8.0; x <= 8.0; x += 1.0 / 64.0) {
        double f = stein_solve(tf, x);
        double f1 = x * f + tf.h(x) - eh;
        double f2 = f + x * f1 + tf.dh(x);
        double hk = k == 0 ? tf.dh(x) : tf.d2h(x);
        double fk = k == 0 ? f2 : 2.0 * f1 + x * f2 + tf.d2h(x);
        sup_f = std::max(sup_f, std::abs(fk));
        sup_h = std::max(sup_h, std::abs(hk));
    }
    return sup_f <= 2.0 * sup_h + 1e-6;
}

}  // namespace bmrates
