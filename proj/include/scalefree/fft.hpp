#pragma once

// Self-contained iterative radix-2 Cooley-Tukey transform for power-of-two
// lengths. Enough for the periodogram and the spectral synthesis here; no
// external FFT dependency needed.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scalefree {

inline bool is_power_of_two(std::size_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0;
}

namespace detail {

inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("fft: length must be a power of two");
    }
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double pi = 3.14159265358979323846264338327950288;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= scale;
    }
}

}  // namespace detail

/// In-place forward DFT, X_m = sum_i x_i exp(-2 pi i m i / n).
inline void fft(std::vector<std::complex<double>>& a) { detail::fft_radix2(a, false); }

/// In-place inverse DFT with 1/n normalization.
inline void ifft(std::vector<std::complex<double>>& a) { detail::fft_radix2(a, true); }

}  // namespace scalefree
