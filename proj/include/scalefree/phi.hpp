#pragma once

// Truncated evaluation of the scale-free fluctuation factor phi and the
// solution family built on it: phi(t) = 1 + k * phi(ln t), grounded at the
// constant solution when the depth budget runs out, with reciprocal
// arguments handled through the exact inversion phi(1/t) = 1/phi(t).

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "scalefree/golden.hpp"
#include "scalefree/params.hpp"

namespace scalefree {

enum class Side { plus, minus };

/// One-sided derivative probe of the solution around t = 1.
struct LocalDerivativeReport {
    double d1_left = 0.0;
    double d1_right = 0.0;
    double d2_left = 0.0;
    double d2_right = 0.0;
    double antisymmetry_residual = 0.0;
};

/// Evaluates phi(t) with the depth budget in p.
///
/// Evaluation convention (one step, argument x, remaining depth d):
///   d == 0            -> 1                        (constant base solution)
///   x < 1 - eps_one   -> 1 / eval(1/x, d)         (inversion, free of depth)
///   |x - 1| <= eps    -> 1 + nu                   (limit value at the band)
///   otherwise         -> 1 + k * eval(ln x, d-1)  (one log step)
///
/// Inversion always hands an argument > 1 + eps_one to the next step, and
/// every log step strictly shrinks arguments above the band, so the walk
/// terminates after at most `depth` log steps. k = 0 collapses the whole
/// recursion to the constant 1, including inside the band.
inline PhiValue eval_phi(double t, const Params& p) {
    p.validate();
    if (!std::isfinite(t) || t <= 0.0) {
        throw std::domain_error("eval_phi: t must be positive and finite");
    }
    const double nu = golden_mean();
    const double abs_k = std::abs(p.k);
    PhiValue out;
    out.bound = std::pow(abs_k, p.depth + 1) * (1.0 + nu) / (1.0 - abs_k);
    if (p.k == 0.0) {
        out.value = 1.0;
        out.depth_used = 0;
        return out;
    }

    enum : unsigned char { invert, log_step };
    std::vector<unsigned char> ops;
    ops.reserve(static_cast<std::size_t>(2 * p.depth + 2));

    double x = t;
    int d = p.depth;
    double terminal = 1.0;
    while (true) {
        if (d == 0) {
            terminal = 1.0;
            break;
        }
        if (x < 1.0 - p.eps_one) {
            ops.push_back(invert);
            x = 1.0 / x;
            continue;
        }
        if (std::abs(x - 1.0) <= p.eps_one) {
            terminal = 1.0 + nu;
            break;
        }
        ops.push_back(log_step);
        x = std::log(x);
        --d;
    }
    out.depth_used = p.depth - d;

    double value = terminal;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        value = (*it == invert) ? 1.0 / value : 1.0 + p.k * value;
    }
    out.value = value;
    return out;
}

/// ln T(t) = t + k * phi(|t|). Defined on t != 0; negative arguments keep
/// the additive fluctuation term evaluated at |t|.
inline double eval_lnT(double t, const Params& p) {
    if (!std::isfinite(t) || t == 0.0) {
        throw std::domain_error("eval_lnT: t must be nonzero and finite");
    }
    return t + p.k * eval_phi(std::abs(t), p).value;
}

/// tau(t) = t * phi(t); satisfies tau(1/t) * tau(t) = 1 through the
/// inversion identity.
inline double eval_tau(double t, const Params& p) {
    return t * eval_phi(t, p).value;
}

/// One-sided finite differences of g at t = 1, where
///   g(1 + eta) = 1 + k * phi(eta),   g(1 - eta) = 1 - k * phi(eta),
/// using the stencil points {1 +- eta, 1 +- 2 eta} and the centre value
/// g(1) = 1 fixed by the antisymmetric construction.
inline LocalDerivativeReport local_derivative_report(double eta, const Params& p) {
    p.validate();
    if (!std::isfinite(eta) || eta <= 0.0 || eta >= 0.5) {
        throw std::domain_error("local_derivative_report: need 0 < eta << 1");
    }
    if (eta < 1e3 * std::numeric_limits<double>::epsilon()) {
        throw std::domain_error(
            "local_derivative_report: eta below the stencil precision floor");
    }
    if (eta <= p.eps_one) {
        throw std::domain_error(
            "local_derivative_report: eta must exceed eps_one");
    }
    const double phi1 = eval_phi(eta, p).value;
    const double phi2 = eval_phi(2.0 * eta, p).value;
    const double gp1 = 1.0 + p.k * phi1;
    const double gp2 = 1.0 + p.k * phi2;
    const double gm1 = 1.0 - p.k * phi1;
    const double gm2 = 1.0 - p.k * phi2;

    LocalDerivativeReport r;
    r.d1_right = (-3.0 + 4.0 * gp1 - gp2) / (2.0 * eta);
    r.d1_left = (3.0 - 4.0 * gm1 + gm2) / (2.0 * eta);
    r.d2_right = (1.0 - 2.0 * gp1 + gp2) / (eta * eta);
    r.d2_left = (1.0 - 2.0 * gm1 + gm2) / (eta * eta);
    r.antisymmetry_residual = (gp1 + gm1) - 2.0;
    return r;
}

/// Measured residual of the first-order inversion relation
/// phi(1/t) = 1 + (k/t) * phi(t). This is a diagnostic, not an identity:
/// the implemented inversion convention satisfies phi(1/t) = 1/phi(t)
/// exactly instead, and the two agree only to leading order in k.
inline double residual_eq12(double t, const Params& p) {
    if (!std::isfinite(t) || t <= 1.0) {
        throw std::domain_error("residual_eq12: t must be > 1");
    }
    const double lhs = eval_phi(1.0 / t, p).value;
    const double rhs = 1.0 + (p.k / t) * eval_phi(t, p).value;
    return std::abs(lhs - rhs);
}

/// Late-time fluctuation exponent mu = k * phi(t) / ln t + mu_d, with mu_d a
/// caller-supplied model-dependent offset. Requires t >= 1.1 so that ln t is
/// bounded away from zero.
inline double fluctuation_exponent(double t, const Params& p, double mu_d) {
    if (!std::isfinite(t) || !(t >= 1.1)) {
        throw std::domain_error("fluctuation_exponent: t must be >= 1.1");
    }
    if (!std::isfinite(mu_d)) {
        throw std::domain_error("fluctuation_exponent: mu_d must be finite");
    }
    return p.k * eval_phi(t, p).value / std::log(t) + mu_d;
}

/// Membership of the approximate evaluation r in the fuzzy "1":
/// m = phi(r * t1^(+-1)) with t1 = phi(1); the result is folded into (0, 1]
/// as min(m, 1/m) and equals 1 exactly at k = 0.
inline double membership(double r, const Params& p, Side side) {
    if (!std::isfinite(r) || r <= 0.0) {
        throw std::domain_error("membership: r must be positive and finite");
    }
    const double t1 = eval_phi(1.0, p).value;
    const double arg = (side == Side::plus) ? r * t1 : r / t1;
    const double m = eval_phi(arg, p).value;
    return (m <= 1.0) ? m : 1.0 / m;
}

}  // namespace scalefree
