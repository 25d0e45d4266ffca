#pragma once

#include <functional>
#include <string>
#include <utility>

namespace bmrates {

// A twice-differentiable test function h together with the Gaussian
// functionals the Edgeworth-type predictions consume. Instances are
// immutable; all evaluators are pure.
class TestFunction {
public:
    using Fn = std::function<double(double)>;

    // certify_unit_second_derivative marks membership in the smooth-distance
    // class (||h''||_inf <= 1); the claim is validated on a dense grid at
    // construction and rejected if violated.
    TestFunction(std::string name, Fn h, Fn dh, Fn d2h,
                 bool certify_unit_second_derivative);

    const std::string& name() const { return name_; }
    double h(double x) const { return h_(x); }
    double dh(double x) const { return dh_(x); }
    double d2h(double x) const { return d2h_(x); }
    bool unit_second_derivative() const { return certified_; }

    double mean_h() const { return mean_h_; }          // E[h(N)]
    double stein_f2_mean() const { return f2_mean_; }  // E[f_h''(N)]
    double stein_f3_mean() const { return f3_mean_; }  // E[f_h'''(N)]

private:
    std::string name_;
    Fn h_, dh_, d2h_;
    bool certified_;
    double mean_h_, f2_mean_, f3_mean_;
};

// The solution f_h of f'(x) - x f(x) = h(x) - E[h(N)] with
// f_h(x) e^{-x^2/2} -> 0 at both infinities. Evaluated by quadrature of the
// left-tail integral for x <= 0 and of the equal right-tail integral for
// x > 0, which keeps the integrand bounded at every x.
double stein_solve(const TestFunction& h, double x);

enum class GaussianFunctional { MeanH, SteinF2, SteinF3 };

// E[h(N)] by adaptive Gauss-Hermite quadrature;
// E[f_h''(N)]  = -(1/3) E[h(N) H_3(N)];
// E[f_h'''(N)] = -(1/4) E[h(N) H_4(N)].
double gaussian_functional(const TestFunction& h, GaussianFunctional which);

// The pair (g, h) with E[f_g''(N)] = 1/(3 sqrt(e)), E[f_g'''(N)] = 0,
// E[f_h''(N)] = 0, E[f_h'''(N)] = -1/(4 + 4 sqrt(e)): g(x) = sin x and
// h(x) = (sqrt(e) cos x - 1 + H_2(x)/2) / (1 + sqrt(e)). Both certified.
std::pair<TestFunction, TestFunction> test_pair();

// First-order prediction for E[h(N)] - E[h(F)]:
//   kappa3/2 * E[f_h''(N)] + kappa4/6 * E[f_h'''(N)].
double edgeworth_prediction(double kappa3, double kappa4, const TestFunction& h);

// Grid check of ||f_h^{(k+2)}||_inf <= 2 ||h^{(k+1)}||_inf (k in {0, 1}),
// with the Stein derivatives obtained by differentiating the equation.
// Diagnostic only.
bool daly_bound_check(const TestFunction& h, int k);

}  // namespace bmrates
