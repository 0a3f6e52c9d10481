#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "scalefree/phi.hpp"
#include "scalefree/rng.hpp"
#include "test_oracles.hpp"

using namespace scalefree;
using oracles::phi_reference;
using oracles::ulp_distance;

namespace {

Params params(double k, int depth) {
    Params p;
    p.k = k;
    p.depth = depth;
    return p;
}

const double nu = golden_mean();

}  // namespace

TEST_CASE("eval_phi zero coupling collapses to 1 everywhere") {
    const Params p = params(0.0, 8);
    for (const double t : {1e-8, 0.3, 0.99, 1.0, 1.5, 7.0, 1e6}) {
        CAPTURE(t);
        const PhiValue v = eval_phi(t, p);
        CHECK(v.value == 1.0);
        CHECK(v.depth_used == 0);
        CHECK(v.bound == 0.0);
        CHECK(eval_lnT(t, p) == t);
    }
}

TEST_CASE("eval_phi hand-unrolled examples") {
    // two clean log steps, base value 1
    const PhiValue a = eval_phi(std::exp(std::exp(1.0)), params(0.1, 2));
    CHECK(a.value == 1.0 + 0.1 * (1.0 + 0.1 * 1.0));
    CHECK(a.depth_used == 2);

    // one log step lands in the eps_one band, which holds 1 + nu
    const PhiValue b = eval_phi(std::exp(1.0), params(0.1, 2));
    CHECK(b.value == 1.0 + 0.1 * (1.0 + nu));
    CHECK(b.depth_used == 1);

    // reciprocal argument inverts the previous value exactly
    const PhiValue c = eval_phi(1.0 / std::exp(1.0), params(0.1, 2));
    CHECK(c.value == 1.0 / (1.0 + 0.1 * (1.0 + nu)));

    // inside the band directly
    const PhiValue d = eval_phi(1.0, params(0.1, 5));
    CHECK(d.value == 1.0 + nu);
    CHECK(d.depth_used == 0);
}

TEST_CASE("eval_phi agrees with the recursive reference over a sweep") {
    SplitMix64 rng(2024);
    for (int i = 0; i < 300; ++i) {
        const double t = std::exp((rng.uniform01() - 0.5) * 28.0);  // ~[1e-6, 1e6]
        for (const double k : {-0.2, -0.05, 0.1, 0.2}) {
            for (const int depth : {0, 1, 3, 8}) {
                CAPTURE(t, k, depth);
                const PhiValue v = eval_phi(t, params(k, depth));
                CHECK(v.value == phi_reference(t, k, depth));
                CHECK(v.depth_used <= depth);
            }
        }
    }
}

TEST_CASE("eval_phi bound field follows the documented formula") {
    const PhiValue v = eval_phi(3.0, params(0.1, 4));
    CHECK(v.bound == std::pow(0.1, 5) * (1.0 + nu) / 0.9);
    const PhiValue w = eval_phi(3.0, params(-0.2, 6));
    CHECK(w.bound == std::pow(0.2, 7) * (1.0 + nu) / 0.8);
}

TEST_CASE("eval_phi rejects bad arguments and bad params") {
    const Params p = params(0.1, 4);
    CHECK_THROWS_AS(eval_phi(0.0, p), std::domain_error);
    CHECK_THROWS_AS(eval_phi(-1.0, p), std::domain_error);
    CHECK_THROWS_AS(eval_phi(std::nan(""), p), std::domain_error);
    CHECK_THROWS_AS(eval_phi(std::numeric_limits<double>::infinity(), p),
                    std::domain_error);

    Params bad = p;
    bad.k = 1.0;
    CHECK_THROWS_AS(eval_phi(2.0, bad), std::domain_error);
    bad = p;
    bad.depth = -1;
    CHECK_THROWS_AS(eval_phi(2.0, bad), std::domain_error);
    bad = p;
    bad.eps_one = 0.0;
    CHECK_THROWS_AS(eval_phi(2.0, bad), std::domain_error);
}

TEST_CASE("inversion identity phi(1/t) phi(t) = 1") {
    SplitMix64 rng(99);
    for (int i = 0; i < 200; ++i) {
        const double t = std::exp(rng.uniform01() * 14.0);  // [1, ~1e6]
        for (const double k : {-0.2, -0.1, -0.05, 0.05, 0.1, 0.2}) {
            CAPTURE(t, k);
            const Params p = params(k, 8);
            const double prod = eval_phi(t, p).value * eval_phi(1.0 / t, p).value;
            CHECK(ulp_distance(prod, 1.0) <= 4.0);
        }
    }
}

TEST_CASE("eval_phi stays positive for |k| <= 0.2") {
    SplitMix64 rng(7);
    for (int i = 0; i < 400; ++i) {
        const double t = std::exp((rng.uniform01() - 0.5) * 28.0);
        for (const double k : {-0.2, -0.1, 0.1, 0.2}) {
            CAPTURE(t, k);
            CHECK(eval_phi(t, params(k, 8)).value > 0.0);
        }
    }
}

TEST_CASE("truncation differences: stated bound for k > 0, amplified envelope in general") {
    // Depth-D vs depth-(D+1) differences decay geometrically. For positive k
    // they sit inside the plain tail bound |k|^(D+1)(1+nu)/(1-|k|). Inversion
    // nodes divide by phi(t)*phi'(t), which exceeds 1 only when phi < 1, so
    // for negative k the same bound needs the amplification allowance
    // (1 - |k|(1+nu))^(-2(D+1)); each of the at most D+1 inversions along a
    // chain contributes at most one such factor.
    std::vector<double> grid;
    for (int i = 0; i < 60; ++i) {
        grid.push_back(1.1 * std::pow(1e6 / 1.1, i / 59.0));
    }
    for (const double k : {0.05, 0.1, 0.2, -0.05, -0.1, -0.2}) {
        const double ak = std::abs(k);
        const double floor_value = 1.0 - ak * (1.0 + nu);
        for (int depth = 1; depth <= 8; ++depth) {
            const double tail = std::pow(ak, depth + 1) * (1.0 + nu) / (1.0 - ak);
            const double envelope =
                tail / std::pow(floor_value, 2.0 * (depth + 1));
            for (const double t : grid) {
                CAPTURE(k, depth, t);
                const double diff = std::abs(eval_phi(t, params(k, depth)).value -
                                             eval_phi(t, params(k, depth + 1)).value);
                if (k > 0.0) CHECK(diff <= tail);
                CHECK(diff <= envelope);
            }
        }
    }
}

TEST_CASE("eval_lnT standard solution and composition") {
    CHECK(eval_lnT(2.0, params(0.0, 8)) == 2.0);

    const double e = std::exp(1.0);
    const Params p = params(0.1, 2);
    CHECK(eval_lnT(e, p) == e + 0.1 * (1.0 + 0.1 * (1.0 + nu)));
    CHECK(eval_lnT(1.0, p) == 1.0 + 0.1 * (1.0 + nu));

    // negative arguments keep the additive term at |t|
    CHECK(eval_lnT(-e, p) == -e + 0.1 * (1.0 + 0.1 * (1.0 + nu)));

    CHECK_THROWS_AS(eval_lnT(0.0, p), std::domain_error);
    CHECK_THROWS_AS(eval_lnT(std::nan(""), p), std::domain_error);
}

TEST_CASE("eval_tau values and reciprocal identity") {
    CHECK(eval_tau(1.0, params(0.0, 8)) == 1.0);

    const double e = std::exp(1.0);
    const Params p = params(0.1, 2);
    CHECK(eval_tau(e, p) == e * (1.0 + 0.1 * (1.0 + nu)));
    CHECK(eval_tau(1.0 / e, p) ==
          Catch::Approx(1.0 / eval_tau(e, p)).epsilon(1e-15));

    SplitMix64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const double t = std::exp(rng.uniform01() * 10.0);
        CAPTURE(t);
        const double prod = eval_tau(t, p) * eval_tau(1.0 / t, p);
        CHECK(ulp_distance(prod, 1.0) <= 4.0);
    }
}

TEST_CASE("local derivatives vanish at zero coupling") {
    const LocalDerivativeReport r = local_derivative_report(1e-3, params(0.0, 6));
    CHECK(r.d1_left == 0.0);
    CHECK(r.d1_right == 0.0);
    CHECK(r.d2_left == 0.0);
    CHECK(r.d2_right == 0.0);
    CHECK(r.antisymmetry_residual == 0.0);
}

TEST_CASE("local derivatives: first matches, second flips sign") {
    const Params p = params(0.1, 6);
    const LocalDerivativeReport r = local_derivative_report(1e-3, p);

    // reference stencil through the recursive oracle
    const double eta = 1e-3;
    const double gp1 = 1.0 + 0.1 * phi_reference(eta, 0.1, 6);
    const double gp2 = 1.0 + 0.1 * phi_reference(2.0 * eta, 0.1, 6);
    const double d1_ref = (-3.0 + 4.0 * gp1 - gp2) / (2.0 * eta);
    const double d2_ref = (1.0 - 2.0 * gp1 + gp2) / (eta * eta);

    CHECK(r.d1_right == Catch::Approx(d1_ref).epsilon(1e-12));
    CHECK(r.d1_left == Catch::Approx(r.d1_right).epsilon(1e-9));
    CHECK(r.d2_right == Catch::Approx(d2_ref).epsilon(1e-9));
    CHECK(r.d2_left == Catch::Approx(-r.d2_right).epsilon(1e-9));
    CHECK(std::abs(r.d2_left) > 1e3);  // far above the stencil noise floor
    CHECK(r.d2_left * r.d2_right < 0.0);
    CHECK(std::abs(r.antisymmetry_residual) <= 4.0 * 2.2204460492503131e-16);
}

TEST_CASE("antisymmetry residual stays at rounding level across eta") {
    const Params p = params(0.1, 6);
    for (double eta = 1e-10; eta <= 0.1; eta *= 10.0) {
        CAPTURE(eta);
        const LocalDerivativeReport r = local_derivative_report(eta, p);
        CHECK(std::abs(r.antisymmetry_residual) <= 4.0 * 2.2204460492503131e-16);
    }
}

TEST_CASE("local_derivative_report input validation") {
    const Params p = params(0.1, 6);
    CHECK_THROWS_AS(local_derivative_report(0.0, p), std::domain_error);
    CHECK_THROWS_AS(local_derivative_report(-1e-3, p), std::domain_error);
    CHECK_THROWS_AS(local_derivative_report(1e-14, p), std::domain_error);  // precision floor
    CHECK_THROWS_AS(local_derivative_report(1e-12, p), std::domain_error);  // inside eps_one
    CHECK_THROWS_AS(local_derivative_report(0.5, p), std::domain_error);
}

TEST_CASE("residual_eq12 diagnostic") {
    CHECK(residual_eq12(10.0, params(0.0, 4)) == 0.0);

    const double e = std::exp(1.0);
    const Params p = params(0.1, 2);
    const double expected =
        std::abs(1.0 / (1.0 + 0.1 * (1.0 + nu)) -
                 (1.0 + (0.1 / e) * (1.0 + 0.1 * (1.0 + nu))));
    CHECK(residual_eq12(e, p) == Catch::Approx(expected).epsilon(1e-15));
    CHECK(residual_eq12(e, p) == Catch::Approx(0.18200953179272816).epsilon(1e-12));

    // coarse envelope at small coupling
    CHECK(residual_eq12(100.0, params(0.01, 4)) <= 0.02);

    CHECK_THROWS_AS(residual_eq12(1.0, p), std::domain_error);
    CHECK_THROWS_AS(residual_eq12(0.5, p), std::domain_error);
}

TEST_CASE("fluctuation_exponent composition and offset") {
    const double t = std::exp(10.0);
    CHECK(fluctuation_exponent(t, params(0.0, 4), 0.0) == 0.0);

    const Params p = params(0.1, 4);
    const double mu = fluctuation_exponent(t, p, 0.0);
    CHECK(mu == Catch::Approx(0.1 * phi_reference(t, 0.1, 4) / std::log(t))
                    .epsilon(1e-15));
    CHECK(mu == Catch::Approx(0.011109090909090909).epsilon(1e-12));
    CHECK(fluctuation_exponent(t, p, 0.05) == mu + 0.05);

    CHECK_THROWS_AS(fluctuation_exponent(1.05, p, 0.0), std::domain_error);
    CHECK_THROWS_AS(fluctuation_exponent(1.0, p, 0.0), std::domain_error);
    CHECK_THROWS_AS(fluctuation_exponent(t, p, std::nan("")), std::domain_error);
}

TEST_CASE("membership folds into (0, 1] and is crisp at k = 0") {
    CHECK(membership(1.0, params(0.0, 3), Side::plus) == 1.0);
    CHECK(membership(0.37, params(0.0, 3), Side::minus) == 1.0);

    const Params p = params(0.1, 3);
    const double below = membership(0.5, p, Side::plus);
    CHECK(below == Catch::Approx(0.9173553719008265).epsilon(1e-12));
    CHECK(below > 0.0);
    CHECK(below < 1.0);

    // r > 1 lands on the reciprocal branch
    const double above = membership(2.0, p, Side::plus);
    const double m_raw = eval_phi(2.0 * eval_phi(1.0, p).value, p).value;
    CHECK(m_raw > 1.0);
    CHECK(above == 1.0 / m_raw);
    CHECK(above == Catch::Approx(0.9016393442622951).epsilon(1e-12));

    SplitMix64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const double r = std::exp((rng.uniform01() - 0.5) * 10.0);
        const Side side = rng.uniform01() < 0.5 ? Side::plus : Side::minus;
        const double v = membership(r, p, side);
        CAPTURE(r);
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }

    CHECK_THROWS_AS(membership(0.0, p, Side::plus), std::domain_error);
    CHECK_THROWS_AS(membership(-2.0, p, Side::minus), std::domain_error);
}

TEST_CASE("evaluations are deterministic") {
    const Params p = params(0.13, 7);
    for (const double t : {0.2, 1.7, 31.0, 4096.5}) {
        const PhiValue a = eval_phi(t, p);
        const PhiValue b = eval_phi(t, p);
        CHECK(a.value == b.value);
        CHECK(a.depth_used == b.depth_used);
        CHECK(a.bound == b.bound);
    }
}
