#pragma once

// Invariant suite behind the `verify` subcommand: one row per check,
// [PASS]/[FAIL] on stdout, everything deterministic and fast enough to run
// on every build.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "scalefree/scalefree.hpp"

namespace scalefree_cli {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

class VerifySuite {
  public:
    explicit VerifySuite(std::ostream& os) : os_(os) {}

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        results_.push_back({name, pass, detail});
        os_ << (pass ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) os_ << "  (" << detail << ")";
        os_ << '\n';
    }

    const std::vector<CheckResult>& results() const { return results_; }

    int failures() const {
        int n = 0;
        for (const auto& r : results_) n += r.pass ? 0 : 1;
        return n;
    }

  private:
    std::ostream& os_;
    std::vector<CheckResult> results_;
};

inline double ulps(double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    const double u = std::nextafter(m, std::numeric_limits<double>::infinity()) - m;
    return std::abs(a - b) / u;
}

inline std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] =
            lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    }
    return g;
}

inline int run_verify(std::ostream& os, std::vector<CheckResult>* out_results = nullptr) {
    using namespace scalefree;
    VerifySuite v(os);
    const double nu = golden_mean();
    const double eps = std::numeric_limits<double>::epsilon();

    {
        const bool ok = nu == 0.6180339887498949 && ulps(nu * nu + nu, 1.0) <= 2.0 &&
                        ulps(1.0 / (1.0 + nu), nu) <= 2.0;
        v.check("golden mean identities", ok);
    }
    {
        const auto [hi, lo] = fixed_points();
        v.check("fixed points product and difference",
                ulps(hi * lo, 1.0) <= 2.0 && ulps(hi - lo, 1.0) <= 2.0);
    }
    {
        bool ok = true;
        std::int64_t fa = 1, fb = 1;  // F_n, F_{n+1}
        double prev_gap = 0.0;
        for (int n = 1; n <= 89 && ok; ++n) {
            const Convergent c = convergent(n);
            const std::int64_t fc = fa + fb;
            if (n <= 88) {
                const double bound =
                    1.0 / (static_cast<double>(fb) * static_cast<double>(fc));
                ok = ok && std::abs(c.gap) < bound;
            }
            if (n > 1) ok = ok && c.gap * prev_gap < 0.0;
            prev_gap = c.gap;
            fa = fb;
            fb = fc;
        }
        ok = ok && std::abs(convergent(20).gap) < 5.2e-9;
        v.check("convergent gaps alternate inside the CF bound", ok);
    }
    {
        bool ok = true;
        for (const double eta : {1e-2, 1e-3, 1e-4}) {
            const double r = golden_map_error(eta) / (eta * eta);
            ok = ok && r >= 0.95 * nu && r <= 1.05 * nu;
        }
        v.check("golden map error is quadratic with coefficient nu", ok);
    }

    const std::vector<double> grid = geometric_grid(1.1, 1e6, 40);
    {
        bool ok = true;
        Params p;
        p.k = 0.0;
        for (const double t : grid) {
            ok = ok && eval_phi(t, p).value == 1.0 && eval_lnT(t, p) == t;
        }
        v.check("zero coupling recovers the standard solution exactly", ok);
    }
    {
        bool ok = true;
        for (const double k : {-0.2, -0.1, -0.05, 0.05, 0.1, 0.2}) {
            Params p;
            p.k = k;
            p.depth = 8;
            for (const double t : grid) {
                const double prod = eval_phi(t, p).value * eval_phi(1.0 / t, p).value;
                ok = ok && ulps(prod, 1.0) <= 4.0;
            }
        }
        v.check("inversion identity phi(1/t) phi(t) = 1 within 4 ulps", ok);
    }
    {
        bool ok = true;
        for (const double k : {0.05, 0.1, 0.2}) {
            for (int depth = 1; depth <= 8; ++depth) {
                Params lo_p, hi_p;
                lo_p.k = hi_p.k = k;
                lo_p.depth = depth;
                hi_p.depth = depth + 1;
                const double tail = std::pow(k, depth + 1) * (1.0 + nu) / (1.0 - k);
                for (const double t : grid) {
                    const double diff =
                        std::abs(eval_phi(t, lo_p).value - eval_phi(t, hi_p).value);
                    ok = ok && diff <= tail;
                }
            }
        }
        v.check("truncation differences inside the geometric tail (k > 0)", ok);
    }
    {
        bool ok = true;
        for (const double k : {-0.2, -0.1, -0.05}) {
            const double ak = std::abs(k);
            const double floor_value = 1.0 - ak * (1.0 + nu);
            for (int depth = 1; depth <= 8; ++depth) {
                Params lo_p, hi_p;
                lo_p.k = hi_p.k = k;
                lo_p.depth = depth;
                hi_p.depth = depth + 1;
                const double envelope = std::pow(ak, depth + 1) * (1.0 + nu) /
                                        (1.0 - ak) /
                                        std::pow(floor_value, 2.0 * (depth + 1));
                for (const double t : grid) {
                    const double diff =
                        std::abs(eval_phi(t, lo_p).value - eval_phi(t, hi_p).value);
                    ok = ok && diff <= envelope;
                }
            }
        }
        v.check("truncation differences decay geometrically (k < 0)", ok);
    }
    {
        Params p;
        p.k = 0.1;
        p.depth = 6;
        bool ok = true;
        for (double eta = 1e-10; eta <= 0.1; eta *= 10.0) {
            const LocalDerivativeReport r = local_derivative_report(eta, p);
            ok = ok && std::abs(r.antisymmetry_residual) <= 4.0 * eps;
        }
        const LocalDerivativeReport r = local_derivative_report(1e-3, p);
        ok = ok && std::abs(r.d1_left - r.d1_right) <=
                       1e-9 * std::max(1.0, std::abs(r.d1_right));
        ok = ok && r.d2_left * r.d2_right < 0.0 && std::abs(r.d2_right) > 1e3;
        v.check("local inversion: d1 continuous, d2 sign-flipped, antisymmetric", ok);
    }
    {
        Params p;
        p.k = 0.1;
        p.depth = 6;
        bool ok = true;
        for (const double t : grid) {
            ok = ok && ulps(eval_tau(t, p) * eval_tau(1.0 / t, p), 1.0) <= 4.0;
        }
        v.check("tau reciprocal identity", ok);
    }
    {
        Params p;
        p.k = 0.15;
        p.depth = 5;
        bool ok = true;
        SplitMix64 rng(41);
        for (int i = 0; i < 100; ++i) {
            const double r = std::exp((rng.uniform01() - 0.5) * 8.0);
            const double m = membership(r, p, i % 2 ? Side::plus : Side::minus);
            ok = ok && m > 0.0 && m <= 1.0;
        }
        v.check("membership values stay in (0, 1]", ok);
    }
    {
        Params p;
        p.k = 0.1;
        p.depth = 4;
        bool ok = true;
        for (const double t : {1.5, 5.0, 77.0}) ok = ok && expected_tf(t, p, 0.5) == t;
        v.check("expected_tf is exact at p_plus = 1/2", ok);
    }
    {
        Params p;
        p.k = 0.0;
        p.depth = 4;
        p.seed = 9;
        const SamplePath path = cascade_path(p, 512, 10.0);
        bool ok = true;
        for (const double x : path.values) ok = ok && x == 0.0;
        p.k = 0.1;
        const SamplePath a = cascade_path(p, 512, 10.0);
        const SamplePath b = cascade_path(p, 512, 10.0);
        ok = ok && a.values == b.values;
        v.check("cascade path: zero at k = 0 and seed-deterministic", ok);
    }
    {
        const SamplePath a = spectral_path(1.2, 1 << 12, 5);
        const SamplePath b = spectral_path(1.2, 1 << 12, 5);
        double mean = 0.0, rms = 0.0;
        for (const double x : a.values) {
            mean += x;
            rms += x * x;
        }
        mean /= static_cast<double>(a.n);
        rms = std::sqrt(rms / static_cast<double>(a.n));
        v.check("spectral path: zero-mean and seed-deterministic",
                a.values == b.values && std::abs(mean) <= 1e-10 * rms);
    }
    {
        bool ok = true;
        for (const double alpha : {0.0, 2.0}) {
            const SamplePath path = spectral_path(alpha, 1 << 14, 13);
            const auto [lo, hi] = default_band((1 << 14) / 8);
            const SpectrumEstimate est = fit_exponent(periodogram(path, 8), lo, hi);
            ok = ok && std::abs(est.exponent - alpha) <= 0.2;
        }
        v.check("estimator quick round trip at alpha = 0 and 2", ok);
    }
    {
        SplitMix64 rng(11);
        std::vector<double> samples(20000);
        for (double& x : samples) {
            x = -std::log(1.0 - rng.uniform01()) - std::log(1.0 - rng.uniform01());
        }
        const GammaFit fit = fit_gamma(samples);
        v.check("gamma fit recovers seeded gamma(2, 1)",
                std::abs(fit.shape - 2.0) <= 0.15 && fit.ks_stat < 0.02);
    }
    {
        SplitMix64 rng(3);
        bool ok = true;
        for (int i = 0; i < 200; ++i) {
            const double x = (rng.uniform01() - 0.5) * std::exp(rng.uniform01() * 200.0);
            ok = ok && parse_double(fmt17(x)) == x;
        }
        v.check("csv doubles round-trip bit-exactly", ok);
    }

    os << (v.failures() == 0 ? "verify: all checks passed"
                             : "verify: FAILURES present")
       << " (" << (v.results().size() - static_cast<std::size_t>(v.failures()))
       << "/" << v.results().size() << ")\n";
    if (out_results != nullptr) *out_results = v.results();
    return v.failures();
}

}  // namespace scalefree_cli
