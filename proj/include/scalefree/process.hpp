#pragma once

// Stochastic fractal-time sample paths and their statistics: the cascade
// process with random-sign epochs, a calibrated power-law-spectrum
// generator, the sign-averaged expectation, and gamma fitting.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "scalefree/fft.hpp"
#include "scalefree/phi.hpp"
#include "scalefree/rng.hpp"

namespace scalefree {

/// A simulated path on a uniform grid. Epoch bookkeeping records which
/// stretch of the grid was generated under which sign.
struct SamplePath {
    std::size_t n = 0;
    double dt = 1.0;
    std::vector<double> values;
    std::vector<std::size_t> epochs;  ///< epoch start indices, begins at 0
    std::vector<int> signs;           ///< +-1 per epoch
    std::uint64_t seed = 0;
};

/// Method-of-moments gamma fit plus the Kolmogorov-Smirnov sup-distance of
/// the sample against the fitted distribution.
struct GammaFit {
    double shape = 0.0;
    double scale = 0.0;
    double ks_stat = 0.0;
};

/// Regularized lower incomplete gamma P(a, x); series expansion for
/// x < a + 1, modified Lentz continued fraction otherwise.
inline double gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) {
        throw std::domain_error("gamma_p: need a > 0 and x >= 0");
    }
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a;
        double term = 1.0 / a;
        double sum = term;
        for (int i = 0; i < 2000; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 2000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

/// Fractal-time cascade on the grid t_i = 1 + i (unit step). Epochs start at
/// t = lambda^j; epoch j carries the sign epoch_sign(p.seed, j). Within its
/// epoch a sample realizes
///   x(t_i) = exp(mu_ij * ln t_i) - 1,
///   mu_ij  = s_j * k * phi(t_i / lambda^j) / max(ln t_i, 1),
/// the per-epoch exponent with the log floored at 1 to dodge the t -> 1
/// divergence. Epoch boundaries that collide on the grid are merged into the
/// epoch that owns the samples.
inline SamplePath cascade_path(const Params& p, std::size_t n, double lambda) {
    p.validate();
    if (n < 256) {
        throw std::out_of_range("cascade_path: n must be >= 256");
    }
    if (!std::isfinite(lambda) || lambda <= 1.0) {
        throw std::domain_error("cascade_path: lambda must be > 1");
    }
    SamplePath path;
    path.n = n;
    path.dt = 1.0;
    path.seed = p.seed;
    path.values.resize(n);

    std::uint64_t j = 0;      // current epoch index
    double t_epoch = 1.0;     // lambda^j
    double t_next = lambda;   // lambda^(j+1)
    path.epochs.push_back(0);
    path.signs.push_back(epoch_sign(p.seed, 0));
    int sign = path.signs.back();

    for (std::size_t i = 0; i < n; ++i) {
        const double t = 1.0 + static_cast<double>(i);
        while (t >= t_next) {
            ++j;
            t_epoch = t_next;
            t_next *= lambda;
            sign = epoch_sign(p.seed, j);
            if (path.epochs.back() == i) {  // merged boundary, same start
                path.epochs.back() = i;
                path.signs.back() = sign;
            } else {
                path.epochs.push_back(i);
                path.signs.push_back(sign);
            }
        }
        if (p.k == 0.0) {
            path.values[i] = 0.0;
            continue;
        }
        const double log_t = std::log(t);
        const double mu = sign * p.k * eval_phi(t / t_epoch, p).value /
                          std::max(log_t, 1.0);
        path.values[i] = std::expm1(mu * log_t);
    }
    return path;
}

/// Synthesizes a real path whose expected periodogram follows f^(-alpha):
/// each positive frequency bin m gets amplitude (m/n)^(-alpha/2) and an
/// independent uniform phase from the seeded stream, the Nyquist bin a
/// random sign, conjugate symmetry is enforced and the result inverse
/// transformed. The zero bin stays empty, so the output is zero-mean.
inline SamplePath spectral_path(double alpha, std::size_t n, std::uint64_t seed) {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 3.0) {
        throw std::domain_error("spectral_path: alpha must be in [0, 3]");
    }
    if (!is_power_of_two(n) || n < (1u << 10) || n > (1u << 20)) {
        throw std::out_of_range("spectral_path: n must be a power of two in [2^10, 2^20]");
    }
    const double two_pi = 6.283185307179586476925286766559;
    SplitMix64 rng(seed);
    std::vector<std::complex<double>> spec(n, {0.0, 0.0});
    const std::size_t half = n / 2;
    for (std::size_t m = 1; m <= half; ++m) {
        const double f = static_cast<double>(m) / static_cast<double>(n);
        const double amp = std::pow(f, -0.5 * alpha);
        const double u = rng.uniform01();
        if (m == half) {
            spec[m] = {u < 0.5 ? amp : -amp, 0.0};
        } else {
            const double theta = two_pi * u;
            spec[m] = {amp * std::cos(theta), amp * std::sin(theta)};
            spec[n - m] = std::conj(spec[m]);
        }
    }
    ifft(spec);

    SamplePath path;
    path.n = n;
    path.dt = 1.0;
    path.seed = seed;
    path.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) path.values[i] = spec[i].real();
    path.epochs.push_back(0);
    path.signs.push_back(1);
    return path;
}

/// Expectation of the sign-randomized scale-free time,
///   <t_f> = t * (1 + k_eff * phi(t1)),  t1 = phi(t),
/// with k_eff = (2 p_plus - 1) k the sign-averaged coupling. Symmetric signs
/// (p_plus = 1/2) return t exactly.
inline double expected_tf(double t, const Params& p, double p_plus) {
    if (!std::isfinite(t) || t <= 1.0) {
        throw std::domain_error("expected_tf: t must be > 1");
    }
    if (!std::isfinite(p_plus) || p_plus < 0.0 || p_plus > 1.0) {
        throw std::domain_error("expected_tf: p_plus must be in [0, 1]");
    }
    const double k_eff = (2.0 * p_plus - 1.0) * p.k;
    const double t1 = eval_phi(t, p).value;
    return t * (1.0 + k_eff * eval_phi(t1, p).value);
}

/// Method-of-moments gamma fit: shape = mean^2/var, scale = var/mean, with
/// the unbiased sample variance. ks_stat is the sup-distance between the
/// empirical CDF and the fitted gamma CDF.
inline GammaFit fit_gamma(std::span<const double> samples) {
    if (samples.size() < 100) {
        throw std::out_of_range("fit_gamma: need at least 100 samples");
    }
    const std::size_t n = samples.size();
    double mean = 0.0;
    for (double x : samples) {
        if (!std::isfinite(x) || x <= 0.0) {
            throw std::domain_error("fit_gamma: samples must be positive");
        }
        mean += x;
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples) {
        const double d = x - mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(n - 1);
    if (var == 0.0) {
        throw std::invalid_argument("fit_gamma: degenerate input, zero variance");
    }

    GammaFit fit;
    fit.scale = var / mean;
    fit.shape = mean / fit.scale;

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double cdf = gamma_p(fit.shape, sorted[i] / fit.scale);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
        const double lo = static_cast<double>(i) / static_cast<double>(n);
        ks = std::max(ks, std::max(hi - cdf, cdf - lo));
    }
    fit.ks_stat = ks;
    return fit;
}

}  // namespace scalefree
