#pragma once

// Measurement side: autocorrelation, segment-averaged tapered periodogram,
// and log-log power-law exponent fits.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "scalefree/fft.hpp"
#include "scalefree/process.hpp"

namespace scalefree {

enum class Window { hann, boxcar };

/// Averaged one-sided periodogram with an optional power-law fit.
///
/// Normalization: each segment of length L contributes
///   P_m = |sum_i w_i (x_i - mu_w) exp(-2 pi i m i / L)|^2 / L^2,
/// m = 1 .. L/2, where w is the taper and mu_w the taper-weighted segment
/// mean. Subtracting the weighted mean zeroes the DC bin exactly, so
/// dropping it loses nothing and Parseval holds over the reported bins.
struct SpectrumEstimate {
    std::vector<double> freqs;   ///< cycles per grid step, m/L
    std::vector<double> powers;
    int segments = 1;
    double exponent = std::numeric_limits<double>::quiet_NaN();
    double exponent_se = 0.0;    ///< OLS standard error of the exponent
    double fit_lo = 0.0;
    double fit_hi = 0.0;
    int excluded_bins = 0;       ///< zero-power bins dropped from the fit
};

/// Default fit band for a segment length L: [8/L, 1/16] cycles/step, which
/// keeps clear of DC leakage and of the Nyquist rolloff.
inline std::pair<double, double> default_band(std::size_t segment_length) {
    return {8.0 / static_cast<double>(segment_length), 1.0 / 16.0};
}

/// Biased-normalized sample autocorrelation, r_0 = 1.
inline std::vector<double> autocorrelation(const SamplePath& path, std::size_t max_lag) {
    const std::size_t n = path.values.size();
    if (n == 0 || max_lag >= n / 4) {
        throw std::out_of_range("autocorrelation: require max_lag < n/4");
    }
    double mean = 0.0;
    for (double x : path.values) mean += x;
    mean /= static_cast<double>(n);

    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = path.values[i] - mean;

    double c0 = 0.0;
    for (double v : y) c0 += v * v;
    c0 /= static_cast<double>(n);
    if (c0 == 0.0) {
        throw std::invalid_argument("autocorrelation: degenerate zero-variance path");
    }

    std::vector<double> r(max_lag + 1);
    r[0] = 1.0;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        double c = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) c += y[i] * y[i + lag];
        c /= static_cast<double>(n);
        r[lag] = c / c0;
    }
    return r;
}

namespace detail {

/// Pairwise sum of per-segment spectra over [lo, hi), bin by bin; the
/// reduction tree makes the average independent of evaluation order.
inline std::vector<double> pairwise_average(
    const std::vector<std::vector<double>>& spectra, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return spectra[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    std::vector<double> left = pairwise_average(spectra, lo, mid);
    const std::vector<double> right = pairwise_average(spectra, mid, hi);
    for (std::size_t i = 0; i < left.size(); ++i) left[i] += right[i];
    return left;
}

}  // namespace detail

/// Segment-averaged tapered periodogram; the zero bin is dropped and the
/// exponent left unfitted. Segments must tile the path exactly and each
/// segment length must be a power of two >= 256.
inline SpectrumEstimate periodogram(const SamplePath& path, int segments,
                                    Window window = Window::hann) {
    const std::size_t n = path.values.size();
    if (segments < 1 || n % static_cast<std::size_t>(segments) != 0) {
        throw std::out_of_range("periodogram: segments must divide the path length");
    }
    const std::size_t len = n / static_cast<std::size_t>(segments);
    if (!is_power_of_two(len) || len < 256) {
        throw std::out_of_range("periodogram: segment length must be a power of two >= 256");
    }
    const double two_pi = 6.283185307179586476925286766559;

    std::vector<double> w(len, 1.0);
    if (window == Window::hann) {
        for (std::size_t i = 0; i < len; ++i) {
            w[i] = 0.5 - 0.5 * std::cos(two_pi * static_cast<double>(i) /
                                        static_cast<double>(len));
        }
    }
    double w_sum = 0.0;
    for (double v : w) w_sum += v;

    std::vector<std::vector<double>> spectra(static_cast<std::size_t>(segments));
    std::vector<std::complex<double>> buf(len);
    for (int s = 0; s < segments; ++s) {
        const double* x = path.values.data() + static_cast<std::size_t>(s) * len;
        double mu_w = 0.0;
        for (std::size_t i = 0; i < len; ++i) mu_w += w[i] * x[i];
        mu_w /= w_sum;
        for (std::size_t i = 0; i < len; ++i) buf[i] = {w[i] * (x[i] - mu_w), 0.0};
        fft(buf);
        std::vector<double>& p = spectra[static_cast<std::size_t>(s)];
        p.resize(len / 2);
        const double norm = 1.0 / (static_cast<double>(len) * static_cast<double>(len));
        for (std::size_t m = 1; m <= len / 2; ++m) {
            p[m - 1] = std::norm(buf[m]) * norm;
        }
    }

    SpectrumEstimate est;
    est.segments = segments;
    est.powers = detail::pairwise_average(spectra, 0, spectra.size());
    const double inv_segments = 1.0 / static_cast<double>(segments);
    for (double& p : est.powers) p *= inv_segments;
    est.freqs.resize(len / 2);
    for (std::size_t m = 1; m <= len / 2; ++m) {
        est.freqs[m - 1] = static_cast<double>(m) / static_cast<double>(len);
    }
    return est;
}

/// Ordinary least squares of log power on log frequency over [f_lo, f_hi];
/// exponent = -slope. Zero-power bins inside the band are excluded and
/// counted. The band must contain at least 10 bins.
inline SpectrumEstimate fit_exponent(const SpectrumEstimate& est, double f_lo, double f_hi) {
    if (!(f_lo > 0.0) || !(f_hi > f_lo)) {
        throw std::domain_error("fit_exponent: need 0 < f_lo < f_hi");
    }
    std::size_t in_band = 0;
    for (std::size_t i = 0; i < est.freqs.size(); ++i) {
        if (est.freqs[i] >= f_lo && est.freqs[i] <= f_hi) ++in_band;
    }
    if (in_band < 10) {
        throw std::out_of_range("fit_exponent: band must contain at least 10 bins");
    }

    std::vector<double> lx, ly;
    lx.reserve(in_band);
    ly.reserve(in_band);
    int excluded = 0;
    for (std::size_t i = 0; i < est.freqs.size(); ++i) {
        if (est.freqs[i] < f_lo || est.freqs[i] > f_hi) continue;
        if (!(est.powers[i] > 0.0)) {
            ++excluded;
            continue;
        }
        lx.push_back(std::log(est.freqs[i]));
        ly.push_back(std::log(est.powers[i]));
    }
    const std::size_t m = lx.size();
    if (m < 2) {
        throw std::out_of_range("fit_exponent: fewer than 2 usable bins in band");
    }

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double resid = ly[i] - my - slope * (lx[i] - mx);
        ssr += resid * resid;
    }
    const double s2 = (m > 2) ? ssr / static_cast<double>(m - 2) : 0.0;

    SpectrumEstimate out = est;
    out.exponent = -slope;
    out.exponent_se = std::sqrt(s2 / sxx);
    out.fit_lo = f_lo;
    out.fit_hi = f_hi;
    out.excluded_bins = excluded;
    return out;
}

/// Least-squares slope of log C versus log lag over [lag_lo, lag_hi]; the
/// estimate of the correlation growth exponent. All correlations in the
/// band must be positive and the band must span at least 8 lags.
inline double fit_correlation_exponent(std::span<const double> acf,
                                       std::size_t lag_lo, std::size_t lag_hi) {
    if (lag_lo < 1 || lag_hi < lag_lo || lag_hi - lag_lo + 1 < 8) {
        throw std::out_of_range("fit_correlation_exponent: band must span >= 8 lags");
    }
    if (lag_hi >= acf.size()) {
        throw std::out_of_range("fit_correlation_exponent: band exceeds acf length");
    }
    const std::size_t m = lag_hi - lag_lo + 1;
    double mx = 0.0, my = 0.0;
    std::vector<double> lx(m), ly(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double c = acf[lag_lo + i];
        if (!(c > 0.0)) {
            throw std::domain_error(
                "fit_correlation_exponent: nonpositive correlation in band");
        }
        lx[i] = std::log(static_cast<double>(lag_lo + i));
        ly[i] = std::log(c);
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    return sxy / sxx;
}

}  // namespace scalefree
