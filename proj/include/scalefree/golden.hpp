#pragma once

// Golden-mean arithmetic: the constant itself, Fibonacci-ratio convergents
// with exact gap signs, the fixed-point pair of the inversion relation, and
// the Mobius-map realization of a near-identity translation.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace scalefree {

/// (sqrt(5) - 1) / 2, the positive root of x^2 + x = 1.
inline double golden_mean() noexcept {
    static const double nu = (std::sqrt(5.0) - 1.0) / 2.0;
    return nu;
}

/// Ratio of consecutive Fibonacci numbers F_n / F_{n+1} with its signed
/// distance from the golden mean.
struct Convergent {
    int n = 0;               ///< index, 1-based
    std::int64_t p = 0;      ///< numerator F_n
    std::int64_t q = 0;      ///< denominator F_{n+1}
    double value = 0.0;      ///< p / q
    double gap = 0.0;        ///< value - golden_mean(), sign exact
};

/// n-th golden-mean convergent, F_1 = F_2 = 1. Valid for 1 <= n <= 90
/// (64-bit Fibonacci range).
///
/// The gap is evaluated through the Binet-form identity
///   F_n - nu * F_{n+1} = (-1)^{n+1} * nu^n * (1 + nu^2) / sqrt(5),
/// which avoids the catastrophic cancellation of the naive subtraction and
/// keeps the alternating sign exact for all n in range.
inline Convergent convergent(int n) {
    if (n < 1 || n > 90) {
        throw std::out_of_range("convergent: n must be in [1, 90]");
    }
    std::int64_t a = 1;  // F_1
    std::int64_t b = 1;  // F_2
    for (int i = 1; i < n; ++i) {
        const std::int64_t next = a + b;
        a = b;
        b = next;
    }
    const double nu = golden_mean();
    Convergent c;
    c.n = n;
    c.p = a;
    c.q = b;
    c.value = static_cast<double>(a) / static_cast<double>(b);
    const double mag = std::pow(nu, n) * (1.0 + nu * nu) /
                       (std::sqrt(5.0) * static_cast<double>(b));
    c.gap = (n % 2 == 1) ? mag : -mag;
    return c;
}

/// Fixed points of x = 1 + 1/x restricted to the positive branch and its
/// inverse: (1 + nu, nu). Their product and difference are both 1.
inline std::pair<double, double> fixed_points() noexcept {
    const double nu = golden_mean();
    return {1.0 + nu, nu};
}

/// Fractional-linear map t -> (a + b t) / (c + d t).
struct MobiusMap {
    double a = 0.0;
    double b = 1.0;
    double c = 1.0;
    double d = 0.0;

    double determinant() const noexcept { return b * c - a * d; }

    double apply(double t) const {
        const double den = c + d * t;
        if (den == 0.0) {
            throw std::domain_error("MobiusMap: argument at pole");
        }
        return (a + b * t) / den;
    }
};

/// Mobius realization of the translation 1 -> 1 + eta:
///   x -> (nu^2 * eta + x) / (1 - nu * eta * x).
inline MobiusMap golden_translation(double eta) {
    const double nu = golden_mean();
    return MobiusMap{nu * nu * eta, 1.0, 1.0, -nu * eta};
}

/// Applies the golden translation map for step eta to `apply_to`.
/// Requires |eta| < 1/nu so the pole stays outside the unit neighbourhood.
inline double golden_map(double eta, double apply_to) {
    const double nu = golden_mean();
    if (!std::isfinite(eta) || std::abs(eta) >= 1.0 / nu) {
        throw std::domain_error("golden_map: |eta| must be < 1/nu");
    }
    return golden_translation(eta).apply(apply_to);
}

/// |golden_map(eta, 1) - (1 + eta)|; decays as nu * eta^2 for small eta.
inline double golden_map_error(double eta) {
    return std::abs(golden_map(eta, 1.0) - (1.0 + eta));
}

}  // namespace scalefree
