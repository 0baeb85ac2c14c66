#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsi/imag_bessel.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace dsi;

namespace {

// Frozen reference values computed in 40-digit arithmetic, spanning the
// supported (nu, x) envelope. Third column is e^x K_{i nu}(x).
struct KRef {
    double nu, x, kscaled;
};
constexpr KRef k_ref[] = {
    {0.1, 2.1220944327251456e-05, 8.785079639875458633849},
    {0.1, 10.157079632679491, 0.3884777332763995064156},
    {0.3, 0.026457513110645908, 2.887646353453000092941},
    {0.5, 4.6066196204214104e-06, -0.06056518378103980106135},
    {0.5, 5.7853981633974483, 0.5006194292529982672773},
    {1.0, 0.0057433683027264129, -0.3505874412266409516751},
    {1.0, 700.00000000000011, 0.04732857537429496574306},
    {2.0, 2.1415926535897931, 0.3622982227974033786488},
    {3.0, 0.00027064621697117007, 0.006205375227013350181533},
    {3.0, 19.824666174515496, 0.2240784765332159550536},
    {5.0, 0.12187969900305815, -0.0004248967710813290848881},
    {8.0, 2.7685661329723244e-06, -2.746183300858120460186e-06},
    {8.0, 7.1606258338614417, 0.004403077874962931688015},
    {10.0, 0.00027064621697117007, 8.497917018981546802885e-08},
    {10.0, 20.707963267948966, 0.02477186893075178292703},
    {12.0, 0.026457513110645908, 4.756933495742160096444e-09},
    {12.0, 420.69813719573938, 0.05148751471986067353374},
    {15.0, 2.586402307166062, -3.122722790250603341061e-10},
    {20.0, 3.5309547905520166e-05, 1.170228751421240089819e-14},
    {20.0, 30.415926535897931, 0.0002739289433249874137002},
    {25.0, 0.0034517490659800808, 4.410601958974228423343e-18},
    {25.0, 54.88589936824561, 0.0005415129918512479280346},
    {28.0, 0.33743200695672754, 1.687267431083358771447e-20},
    {30.0, 4.6066196204214104e-06, -6.662082442530226155587e-22},
    {30.0, 32.986279460762475, 9.889280925958579679869e-08},
};

// Frozen H^(1)_{i nu}(x) samples (real, imaginary), same provenance.
struct HRef {
    double nu, x, re, im;
};
constexpr HRef h_ref[] = {
    {0.1, 0.019129311827723885, 1.069732154769174124042, -2.964920454192369482502},
    {0.3, 0.092514360401062506, 1.120236681533337968413, -2.417711920325464048636},
    {0.5, 0.44742366884381896, 1.703879397551119276577, -1.366427614184547605061},
    {1.0, 2.1638580061929984, 1.095486953315670616543, 2.224512042593935374785},
    {2.0, 10.464983855380179, -5.646081628978435469393, -0.3009817363114946812775},
    {3.0, 50.611401847963805, 10.75709714986676062683, -6.314565179226903701761},
    {5.0, 244.76999032341342, 58.26719402083964197713, -117.7277594928788954639},
    {10.0, 0.0001, 1618178.895942885715244, 429685.6809179502563485},
    {12.0, 0.00048362618182104457, 23207827.42520003459219, 26688484.98814730165455},
    {15.0, 0.0023389428374280203, -1481224429.011582988899, -3194734818.062025927468},
    {18.0, 0.011311739939629936, -237045525699.4914982235, -268067346787.6171811205},
    {20.0, 0.054706535967558395, 7163001208254.989968473, 3225563652541.136580839},
};

// Accuracy degrades gracefully above the certified order window: the
// uniform asymptotics lose digits as nu grows past ~12.
double hankel_tolerance(double nu) {
    if (nu <= 12.0) return 1e-9;
    if (nu <= 15.0) return 1e-7;
    return 2e-4;
}

}  // namespace

TEST_CASE("scaled K matches frozen high-precision references") {
    for (const auto& r : k_ref) {
        double v = bessel_k_imag_scaled(r.nu, r.x);
        CHECK(std::fabs((v - r.kscaled) / r.kscaled) < 1e-10);
    }
}

TEST_CASE("unscaled K is the scaled value damped by e^{-x}") {
    for (const auto& r : k_ref) {
        if (r.x > 700.0) continue;  // unscaled form underflows there
        double u = bessel_k_imag(r.nu, r.x);
        double want = r.kscaled * std::exp(-r.x);
        CHECK(std::fabs(u - want) <= 1e-12 * std::fabs(want));
    }
}

TEST_CASE("hankel values match frozen references within order-tiered bounds") {
    for (const auto& r : h_ref) {
        auto v = hankel_imag(1, r.nu, r.x);
        std::complex<double> ref(r.re, r.im);
        CHECK(std::abs(v - ref) / std::abs(ref) < hankel_tolerance(r.nu));
    }
}

TEST_CASE("gamma modulus identity |Gamma(1 + i nu)|^2 = pi nu / sinh(pi nu)") {
    for (double nu : {0.05, 0.3, 1.0, 2.5, 6.0, 12.0, 25.0}) {
        auto lg = log_gamma_one_plus_i(nu);
        double mod2 = std::exp(2.0 * lg.real());
        // sinh overflows past nu ~ 227; compare in log space instead.
        double want_log = std::log(std::numbers::pi * nu) -
                          std::log1p(-std::exp(-2.0 * std::numbers::pi * nu)) -
                          std::numbers::pi * nu + std::numbers::ln2;
        CHECK(std::fabs(std::log(mod2) - want_log) <
              1e-15 * (1.0 + std::fabs(want_log)));
    }
}

TEST_CASE("vanishing order reduces K to the real Bessel K_0") {
    // At nu = 1e-7 the order correction is O(nu^2) ~ 1e-14, invisible at
    // the comparison tolerance.
    for (double x : {0.1, 1.0, 5.0, 20.0, 100.0, 200.0}) {
        double mine = bessel_k_imag(1e-7, x);
        double ref = std::cyl_bessel_k(0.0, x);
        CHECK(std::fabs(mine - ref) <= 1e-10 * std::fabs(ref));
    }
}

TEST_CASE("hankel pair satisfies the Wronskian H1 H2' - H1' H2 = -4i/(pi x)") {
    for (double nu : {0.3, 1.0, 3.0, 8.0, 12.0}) {
        for (double x : {0.5, 2.0, 5.0, 15.0, 30.0, 80.0, 300.0, 700.0}) {
            auto h1 = hankel_imag(1, nu, x);
            auto h2 = hankel_imag(2, nu, x);
            auto d1 = hankel_imag_deriv(1, nu, x);
            auto d2 = hankel_imag_deriv(2, nu, x);
            std::complex<double> w = h1 * d2 - d1 * h2;
            std::complex<double> want(0.0, -4.0 / (std::numbers::pi * x));
            CHECK(std::abs(w - want) / std::abs(want) < 1e-9);
        }
    }
}

TEST_CASE("hankel kinds are reflections of each other") {
    // For imaginary order on the real axis, conj(H1) = e^{nu pi} H2.
    for (double nu : {0.5, 2.0, 6.0}) {
        for (double x : {1.0, 10.0, 60.0}) {
            auto h1 = hankel_imag(1, nu, x);
            auto h2 = hankel_imag(2, nu, x);
            auto lhs = std::conj(h1);
            auto rhs = std::exp(nu * std::numbers::pi) * h2;
            CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-11);
        }
    }
}

TEST_CASE("large-argument decay follows the known envelope") {
    // e^x K ~ sqrt(pi/(2x)) (1 - (4 nu^2 + 1)/(8x) + ...); check the
    // leading correction is actually resolved rather than noise.
    double ratio = bessel_k_imag_scaled(1.0, 50.0) /
                   std::sqrt(std::numbers::pi / 100.0);
    double correction = -(4.0 + 1.0) / (8.0 * 50.0);
    CHECK(std::fabs(ratio - 1.0 - correction) < 2e-4);

    double far = bessel_k_imag_scaled(1.0, 5000.0) /
                 std::sqrt(std::numbers::pi / 10000.0);
    CHECK(std::fabs(far - 1.0) < 2e-4);
}

TEST_CASE("domain limits are enforced") {
    CHECK_THROWS_AS(bessel_k_imag(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_imag(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_imag(31.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_imag(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_imag(1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_imag(1.0, 701.0), std::range_error);
    CHECK_THROWS_AS(hankel_imag(3, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(hankel_imag(1, 25.0, 1.0), std::domain_error);
    // The scaled form has no underflow cliff and takes huge arguments.
    CHECK(std::isfinite(bessel_k_imag_scaled(1.0, 1e6)));
}
