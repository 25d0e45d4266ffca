#include "bmrates/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bmrates {

std::size_t Fft::next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("Fft: size must be a power of two");
    bitrev_.resize(n);
    std::size_t lg = 0;
    while ((std::size_t{1} << lg) < n) ++lg;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < lg; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (lg - 1 - b);
        bitrev_[i] = r;
    }
    twiddle_.resize(n / 2);
    twiddle_inv_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        twiddle_[k] = {std::cos(ang), std::sin(ang)};
        twiddle_inv_[k] = std::conj(twiddle_[k]);
    }
}

void Fft::transform(std::complex<double>* a, bool invert) const {
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i)
        if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);
    const auto& tw = invert ? twiddle_inv_ : twiddle_;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + half] * tw[j * step];
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
}

void Fft::forward(std::complex<double>* data) const { transform(data, false); }

void Fft::inverse(std::complex<double>* data) const {
    transform(data, true);
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) data[i] *= inv;
}

ToeplitzOperator::ToeplitzOperator(const std::vector<double>& col)
    : n_(col.size()), m_(Fft::next_pow2(2 * col.size())), fft_(m_) {
    if (n_ == 0) throw std::invalid_argument("ToeplitzOperator: empty column");
    // Circulant first row: col(0), col(1), ..., col(n-1), 0..0, col(n-1), ..., col(1)
    std::vector<std::complex<double>> c(m_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) c[j] = col[j];
    for (std::size_t j = 1; j < n_; ++j) c[m_ - j] = col[j];
    fft_.forward(c.data());
    symbol_ = std::move(c);
}

void ToeplitzOperator::apply(const double* x, double* y, Workspace& w) const {
    w.resize(m_);
    for (std::size_t i = 0; i < n_; ++i) w[i] = x[i];
    for (std::size_t i = n_; i < m_; ++i) w[i] = 0.0;
    fft_.forward(w.data());
    for (std::size_t i = 0; i < m_; ++i) w[i] *= symbol_[i];
    fft_.inverse(w.data());
    for (std::size_t i = 0; i < n_; ++i) y[i] = w[i].real();
}

void ToeplitzOperator::apply_pair(const double* x_re, const double* x_im,
                                  double* y_re, double* y_im, Workspace& w) const {
    w.resize(m_);
    for (std::size_t i = 0; i < n_; ++i) w[i] = {x_re[i], x_im[i]};
    for (std::size_t i = n_; i < m_; ++i) w[i] = 0.0;
    fft_.forward(w.data());
    for (std::size_t i = 0; i < m_; ++i) w[i] *= symbol_[i];
    fft_.inverse(w.data());
    for (std::size_t i = 0; i < n_; ++i) {
        y_re[i] = w[i].real();
        y_im[i] = w[i].imag();
    }
}

}  // namespace bmrates
