#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsi/angular.hpp"
#include "dsi/imag_bessel.hpp"
#include "dsi/radial.hpp"
#include "dsi/sweep.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>
#include <vector>

using namespace dsi;

namespace {

template <typename T>
bool same_bits(const std::vector<T>& a, const std::vector<T>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

}  // namespace

TEST_CASE("phase grid is bit-identical between parallel and serial runs") {
    PhaseGridResult par = phase_grid(-2.0, 2.0, -2.0, 2.0, 21, 4);
    PhaseGridResult ser = phase_grid_serial(-2.0, 2.0, -2.0, 2.0, 21);
    CHECK(par.resolution == 21);
    CHECK(ser.resolution == 21);
    CHECK(same_bits(par.g1, ser.g1));
    CHECK(same_bits(par.g2, ser.g2));
    CHECK(same_bits(par.region, ser.region));
    CHECK(same_bits(par.lambda0, ser.lambda0));
    CHECK(same_bits(par.lambda1, ser.lambda1));
    CHECK(same_bits(par.nu0, ser.nu0));
    CHECK(same_bits(par.nu1, ser.nu1));
}

TEST_CASE("phase grid cells carry the right verdicts") {
    PhaseGridResult g = phase_grid_serial(-2.0, 2.0, -2.0, 2.0, 21);

    // Cell (g1, g2) = (-1, -1) sits at i = j = 5 on the 21-grid.
    int idx = 5 * 21 + 5;
    CHECK(std::fabs(g.g1[idx] + 1.0) < 1e-15);
    CHECK(std::fabs(g.g2[idx] + 1.0) < 1e-15);
    CHECK(g.region[idx] == static_cast<int>(PhaseRegion::D0Only));
    CHECK(g.lambda0[idx] < -2.2);
    CHECK(g.lambda0[idx] > -2.4);
    CHECK(std::isnan(g.lambda1[idx]));
    CHECK(std::isnan(g.nu1[idx]));
    CHECK(std::fabs(g.nu0[idx] - std::sqrt(-g.lambda0[idx])) < 1e-15);

    // Cell (2, 2): repulsive, unbroken, no channel data.
    idx = 20 * 21 + 20;
    CHECK(g.region[idx] == static_cast<int>(PhaseRegion::Unbroken));
    CHECK(std::isnan(g.lambda0[idx]));
    CHECK(std::isnan(g.nu0[idx]));
}

TEST_CASE("S-matrix trace is bit-identical and unimodular") {
    ChannelParams p = ChannelParams::from_nu(3, 1.0, 0.7);
    SmatrixTrace tp = smatrix_trace(p, 8.0, 1001, 4);
    SmatrixTrace ts = smatrix_trace_serial(p, 8.0, 1001);
    CHECK(same_bits(tp.k, ts.k));
    REQUIRE(tp.s.size() == ts.s.size());
    CHECK(std::memcmp(tp.s.data(), ts.s.data(),
                      tp.s.size() * sizeof(std::complex<double>)) == 0);

    // Odd point count puts the midpoint exactly on the tower scale.
    CHECK(tp.k[500] == 0.7);
    CHECK(tp.s[500] == std::complex<double>(0.0, 1.0));

    double worst = 0.0;
    for (const auto& s : tp.s)
        worst = std::max(worst, std::fabs(std::abs(s) - 1.0));
    CHECK(worst < 1e-12);
    CHECK(std::fabs(tp.k.front() - 0.7e-4) < 1e-18);
    CHECK(std::fabs(tp.k.back() - 0.7e4) < 1e-8);
}

TEST_CASE("bessel grid is bit-identical and matches direct evaluation") {
    std::vector<double> nus = {0.3, 1.0, 3.0};
    std::vector<double> xs = {0.1, 1.0, 10.0, 300.0};
    std::vector<double> gp = bessel_grid(nus, xs, 4);
    std::vector<double> gs = bessel_grid_serial(nus, xs);
    CHECK(same_bits(gp, gs));
    for (std::size_t i = 0; i < nus.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            CHECK(gp[i * xs.size() + j] == bessel_k_imag(nus[i], xs[j]));
}

TEST_CASE("sweep kernels validate input and propagate exceptions") {
    ChannelParams p = ChannelParams::from_nu(3, 1.0, 0.7);
    CHECK_THROWS_AS(phase_grid(-2.0, 2.0, -2.0, 2.0, 1, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(smatrix_trace(p, -1.0, 100, 2), std::invalid_argument);
    CHECK_THROWS_AS(smatrix_trace(p, 4.0, 1, 2), std::invalid_argument);

    // A throw from inside the parallel region must cross it intact.
    std::vector<double> nus = {0.3, 1.0, 3.0};
    std::vector<double> bad_x = {0.5, 800.0};
    CHECK_THROWS_AS(bessel_grid(nus, bad_x, 4), std::range_error);
    CHECK_THROWS_AS(bessel_grid_serial({}, bad_x), std::invalid_argument);
}
