#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace scalefree {

/// Evaluation parameters shared by every operation: the scaling constant k,
/// the recursion depth budget, the half-width of the band treated as "at 1",
/// and the master seed used by stochastic callers.
struct Params {
    double k = 0.1;
    int depth = 8;
    double eps_one = 1e-12;
    std::uint64_t seed = 0;

    /// Throws std::domain_error unless |k| < 1, depth >= 0 and eps_one > 0.
    void validate() const {
        if (!std::isfinite(k) || std::abs(k) >= 1.0) {
            throw std::domain_error("Params: |k| must be < 1");
        }
        if (depth < 0) {
            throw std::domain_error("Params: depth must be >= 0");
        }
        if (!std::isfinite(eps_one) || eps_one <= 0.0) {
            throw std::domain_error("Params: eps_one must be > 0");
        }
    }
};

/// Result of a truncated fluctuation-factor evaluation.
struct PhiValue {
    double value = 1.0;   ///< phi evaluated at the requested depth
    int depth_used = 0;   ///< log-recursion steps actually consumed
    double bound = 0.0;   ///< geometric tail estimate |k|^(depth+1)(1+nu)/(1-|k|)
};

}  // namespace scalefree
