#pragma once

#include <vector>

namespace bmrates {

// Probabilists' Hermite polynomials H_q: H_0 = 1, H_1 = x,
// H_{q+1}(x) = x H_q(x) - q H_{q-1}(x). Orthogonal against the standard
// normal density with E[H_p(N) H_q(N)] = q! 1{p=q}.
//
// Orders are capped at 12 so that every factorial coefficient the library
// forms from them (q!^2, binomials) stays exactly representable.
inline constexpr int kMaxHermiteOrder = 12;

// Evaluates H_q(x) by the three-term recurrence. Throws std::invalid_argument
// for q < 0, q > kMaxHermiteOrder, or non-finite x.
double hermite_eval(int q, double x);

struct QuadratureNode {
    double x;
    double w;
};

// Gauss-Hermite rule adapted to the standard normal weight: for m nodes,
// sum_i w_i f(x_i) integrates polynomials of degree <= 2m-1 exactly against
// the N(0,1) density, and sum_i w_i = 1. Requires m >= 2.
std::vector<QuadratureNode> gauss_hermite_nodes(int m);

// Quadrature value of E[f(N)] with an m-node rule.
template <typename F>
double gauss_expectation(F&& f, const std::vector<QuadratureNode>& rule) {
    double acc = 0.0;
    for (const auto& node : rule) acc += node.w * f(node.x);
    return acc;
}

}  // namespace bmrates
