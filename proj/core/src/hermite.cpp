#include "bmrates/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bmrates {

double hermite_eval(int q, double x) {
    if (q < 0)
        throw std::invalid_argument("hermite_eval: order must be nonnegative");
    if (q > kMaxHermiteOrder)
        throw std::invalid_argument("hermite_eval: order " + std::to_string(q) +
                                    " exceeds cap " + std::to_string(kMaxHermiteOrder));
    if (!std::isfinite(x))
        throw std::invalid_argument("hermite_eval: x must be finite");
    if (q == 0) return 1.0;
    double prev = 1.0;   // H_0
    double cur = x;      // H_1
    for (int k = 1; k < q; ++k) {
        double next = x * cur - static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

// Nodes and weights of the physicists' rule (weight e^{-x^2}) by Newton
// iteration on the scaled recurrence; the classic initial guesses converge
// in a handful of steps for any practical m.
void gauss_hermite_physicists(int n, std::vector<double>& x, std::vector<double>& w) {
    constexpr double kEps = 1.0e-15;
    constexpr int kMaxIter = 100;
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);

    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x[1];
        } else {
            z = 2.0 * z - x[i - 2];
        }
        double pp = 0.0;
        for (int it = 0; it < kMaxIter; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kEps) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
}

}  // namespace

std::vector<QuadratureNode> gauss_hermite_nodes(int m) {
    if (m < 2)
        throw std::invalid_argument("gauss_hermite_nodes: need at least 2 nodes");
    std::vector<double> x, w;
    gauss_hermite_physicists(m, x, w);
    // Change of variables to the N(0,1) weight: x -> sqrt(2) x, w -> w / sqrt(pi).
    const double sqrt2 = std::numbers::sqrt2;
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    std::vector<QuadratureNode> rule(m);
    for (int i = 0; i < m; ++i) rule[i] = {sqrt2 * x[i], inv_sqrt_pi * w[i]};
    return rule;
}

}  // namespace bmrates
