#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bmrates {

// In-place iterative radix-2 FFT, power-of-two sizes only. Unnormalized
// forward transform; the inverse divides by the length. Twiddle factors are
// precomputed per size so repeated transforms of the same length are cheap
// and bit-reproducible.
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;

    static std::size_t next_pow2(std::size_t n);

private:
    void transform(std::complex<double>* data, bool invert) const;

    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    std::vector<std::complex<double>> twiddle_;      // forward, per stage
    std::vector<std::complex<double>> twiddle_inv_;  // conjugates
};

// Symmetric Toeplitz matrix-vector products through a circulant embedding.
// The matrix is n x n with entries T[i][j] = col(|i-j|). Workers pass their
// own scratch buffer, so a single operator can be shared across threads.
class ToeplitzOperator {
public:
    using Workspace = std::vector<std::complex<double>>;

    explicit ToeplitzOperator(const std::vector<double>& first_column);

    std::size_t dim() const { return n_; }
    Workspace make_workspace() const { return Workspace(m_); }

    // y = T x
    void apply(const double* x, double* y, Workspace& work) const;

    // Applies T to two vectors at once by packing them into the real and
    // imaginary parts of a single complex transform.
    void apply_pair(const double* x_re, const double* x_im,
                    double* y_re, double* y_im, Workspace& work) const;

private:
    std::size_t n_, m_;
    Fft fft_;
    std::vector<std::complex<double>> symbol_;  // FFT of the embedded circulant
};

}  // namespace bmrates
