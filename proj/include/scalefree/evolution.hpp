#pragma once

// Convergent-evolution iteration: successive refinements nu_n obtained by
// dividing out fluctuation factors evaluated along a geometric scale
// schedule t_n = k^(n/2).

#include <cmath>
#include <stdexcept>
#include <vector>

#include "scalefree/phi.hpp"

namespace scalefree {

/// Iterates nu_n = nu_{n-1} / Phi_n from nu_0 = 1, where
/// Phi_n = eval_phi(1/t_n, p) and t_n = k^(n/2). Returns the whole sequence
/// nu_0 .. nu_{n_max}. k = 0 yields the constant sequence of ones.
/// Requires 0 <= k <= 0.2 and n_max <= 50.
inline std::vector<double> convergent_evolution(const Params& p, int n_max) {
    p.validate();
    if (p.k < 0.0 || p.k > 0.2) {
        throw std::domain_error("convergent_evolution: k must be in [0, 0.2]");
    }
    if (n_max < 0 || n_max > 50) {
        throw std::out_of_range("convergent_evolution: n_max must be in [0, 50]");
    }
    std::vector<double> seq;
    seq.reserve(static_cast<std::size_t>(n_max) + 1);
    seq.push_back(1.0);
    if (p.k == 0.0) {
        seq.assign(static_cast<std::size_t>(n_max) + 1, 1.0);
        return seq;
    }
    for (int n = 1; n <= n_max; ++n) {
        const double t_n = std::pow(p.k, 0.5 * n);
        const double big_phi = eval_phi(1.0 / t_n, p).value;
        seq.push_back(seq.back() / big_phi);
    }
    return seq;
}

}  // namespace scalefree
