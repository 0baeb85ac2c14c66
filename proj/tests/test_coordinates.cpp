#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsi/coordinates.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace dsi;

namespace {

// All permutations of {0,..,n-1} with parities, built by adjacent swaps.
struct Perm {
    std::vector<int> order;
    int sign;
};

std::vector<Perm> all_perms(int n) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::vector<Perm> out;
    std::sort(idx.begin(), idx.end());
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (idx[i] > idx[j]) ++inversions;
        out.push_back({idx, inversions % 2 == 0 ? 1 : -1});
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

}  // namespace

TEST_CASE("jacobi transform is orthogonal and splits off the center of mass") {
    for (int n = 2; n <= 10; ++n) {
        // Feed in unit vectors; the images' Gram matrix must be the identity.
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < n; ++i) {
            std::vector<double> e(n, 0.0);
            e[i] = 1.0;
            rows.push_back(jacobi_transform(ParticleConfig(e)));
        }
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                double dot = 0.0;
                for (int k = 0; k < n; ++k) dot += rows[a][k] * rows[b][k];
                CHECK(std::fabs(dot - (a == b ? 1.0 : 0.0)) < 1e-14);
            }
        }
        // Last coordinate is the symmetric combination.
        std::vector<double> ones(n, 1.0);
        auto xi = jacobi_transform(ParticleConfig(ones));
        CHECK(std::fabs(xi[n - 1] - std::sqrt(double(n))) < 1e-14);
        for (int j = 0; j + 1 < n; ++j) CHECK(std::fabs(xi[j]) < 1e-14);
    }
}

TEST_CASE("hyperradius matches the pair-separation formula") {
    std::vector<double> x = {1.7, 0.3, -0.9, 2.4, -3.1};
    ParticleConfig cfg(x);
    auto point = hyperspherical(jacobi_transform(cfg), cfg);  // cross-checked
    double sum = 0.0;
    for (size_t j = 0; j < x.size(); ++j)
        for (size_t k = j + 1; k < x.size(); ++k)
            sum += (x[j] - x[k]) * (x[j] - x[k]);
    CHECK(std::fabs(point.r * point.r - sum / x.size()) < 1e-12);
    CHECK(!point.theta.has_value());  // populated for three bodies only

    // Direction is unit length.
    double norm = 0.0;
    for (double c : point.hat_xi) norm += c * c;
    CHECK(std::fabs(norm - 1.0) < 1e-14);

    // Translating everybody moves xi_n only.
    std::vector<double> shifted = x;
    for (double& v : shifted) v += 5.0;
    ParticleConfig cfg2(shifted);
    auto point2 = hyperspherical(jacobi_transform(cfg2), cfg2);
    CHECK(std::fabs(point2.r - point.r) < 1e-12);
    CHECK(std::fabs(point2.xi_n - (point.xi_n + 5.0 * std::sqrt(5.0))) < 1e-12);
}

TEST_CASE("three-body hyperangle lands in the ordered wedge") {
    // Sorted configurations x1 > x2 > x3 map to theta in (0, pi/3).
    std::vector<std::vector<double>> wedge = {
        {2.0, 0.5, -1.0}, {1.0, 0.9, -3.0}, {0.1, 0.0, -0.05}};
    for (const auto& x : wedge) {
        ParticleConfig cfg(x);
        auto pt = hyperspherical(jacobi_transform(cfg), cfg);
        REQUIRE(pt.theta.has_value());
        CHECK(*pt.theta > 0.0);
        CHECK(*pt.theta < std::numbers::pi / 3.0);
    }
    // The boundaries are the coincidence lines: x1 = x2 gives theta -> 0.
    ParticleConfig near_12({1.0, 1.0 - 1e-9, -2.0});
    auto pt = hyperspherical(jacobi_transform(near_12), near_12);
    CHECK(*pt.theta < 1e-8);

    ParticleConfig near_23({3.0, 1e-9, 0.0});
    auto pt2 = hyperspherical(jacobi_transform(near_23), near_23);
    CHECK(std::fabs(*pt2.theta - std::numbers::pi / 3.0) < 1e-8);
}

TEST_CASE("sector map sorts, signs, and rejects coincidences") {
    auto dec = sector_map({0.3, 1.9, -0.7});
    CHECK(dec.sorted == std::vector<double>{1.9, 0.3, -0.7});
    // input[i] = sorted[permutation[i]]
    CHECK(dec.permutation == std::vector<int>{1, 0, 2});
    CHECK(dec.sign == -1);  // one transposition

    for (const auto& p : all_perms(4)) {
        std::vector<double> base = {4.0, 1.5, -0.5, -2.0};  // already sorted
        std::vector<double> shuffled(4);
        // place sorted[k] into the slot that p maps it to
        for (int i = 0; i < 4; ++i) shuffled[i] = base[p.order[i]];
        auto d = sector_map(shuffled);
        CHECK(d.sorted == base);
        CHECK(d.sign == p.sign);
        for (int i = 0; i < 4; ++i)
            CHECK(shuffled[i] == d.sorted[d.permutation[i]]);
    }

    CHECK_THROWS_AS(sector_map({1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("coincidence detection distinguishes exact from near hits") {
    CHECK(ParticleConfig({1.0, 1.0, 2.0}).on_coincidence_locus());
    CHECK(!ParticleConfig({1.0, 1.0 + 1e-13, 2.0}).on_coincidence_locus());
    CHECK(ParticleConfig({1.0, 1.0 + 1e-13, 2.0}).near_coincidence());
    CHECK(!ParticleConfig({1.0, 1.5, 2.0}).near_coincidence());
    CHECK(ParticleConfig({1.0, 1.4, 2.0}).near_coincidence(0.5));
}

TEST_CASE("coupling profile scales linearly with the hyperradius") {
    ParticleConfig cfg({2.0, 0.0, -2.0});
    auto pt = hyperspherical(jacobi_transform(cfg), cfg);
    for (double g : {-0.7, 0.0, 1.3}) {
        CHECK(std::fabs(coupling_profile(1, g, pt) - pt.r * g) < 1e-15);
    }

    ParticleConfig doubled({4.0, 0.0, -4.0});
    auto pt2 = hyperspherical(jacobi_transform(doubled), doubled);
    CHECK(std::fabs(coupling_profile(1, 0.9, pt2) -
                    2.0 * coupling_profile(1, 0.9, pt)) < 1e-14);
}

TEST_CASE("assembled wavefunctions carry the exchange statistics") {
    auto radial = [](double r) {
        return std::complex<double>(std::exp(-r), 0.3 * r);
    };
    auto angular = make_three_body_angular(
        [](double th) { return std::sin(3.0 * th) + 0.2; });

    std::vector<double> pts = {1.1, 0.4, -0.8};
    for (auto stats : {Statistics::Bose, Statistics::Fermi}) {
        std::complex<double> ref =
            assemble_wavefunction(ParticleConfig(pts), 0.6, radial, angular,
                                  stats);
        CHECK(std::abs(ref) > 0.0);
        for (const auto& p : all_perms(3)) {
            std::vector<double> perm(3);
            for (int i = 0; i < 3; ++i) perm[i] = pts[p.order[i]];
            std::complex<double> v = assemble_wavefunction(
                ParticleConfig(perm), 0.6, radial, angular, stats);
            double expect = stats == Statistics::Fermi ? p.sign : 1;
            CHECK(std::abs(v - double(expect) * ref) < 1e-12 * std::abs(ref));
        }
    }
}

TEST_CASE("four-body exchange signs follow permutation parity") {
    // n = 4 has no closed-form angular factor here; any symmetric function
    // of the sorted sector exercises the sign bookkeeping all the same.
    auto radial = [](double r) { return std::complex<double>(1.0 / (1.0 + r), 0.0); };
    auto angular = [](const HypersphericalPoint& pt) {
        double acc = 1.0;
        for (double c : pt.hat_xi) acc += 0.3 * c * c * c;
        return acc;
    };
    std::vector<double> pts = {2.2, 0.9, -0.4, -1.8};
    auto ref = assemble_wavefunction(ParticleConfig(pts), 0.0, radial, angular,
                                     Statistics::Fermi);
    auto refb = assemble_wavefunction(ParticleConfig(pts), 0.0, radial, angular,
                                      Statistics::Bose);
    int checked = 0;
    for (const auto& p : all_perms(4)) {
        std::vector<double> perm(4);
        for (int i = 0; i < 4; ++i) perm[i] = pts[p.order[i]];
        auto vf = assemble_wavefunction(ParticleConfig(perm), 0.0, radial,
                                        angular, Statistics::Fermi);
        auto vb = assemble_wavefunction(ParticleConfig(perm), 0.0, radial,
                                        angular, Statistics::Bose);
        CHECK(std::abs(vf - double(p.sign) * ref) < 1e-12 * std::abs(ref));
        CHECK(std::abs(vb - refb) < 1e-12 * std::abs(refb));
        ++checked;
    }
    CHECK(checked == 24);
}

TEST_CASE("assembly rejects configurations on the coincidence locus") {
    auto radial = [](double) { return std::complex<double>(1.0, 0.0); };
    auto angular = [](const HypersphericalPoint&) { return 1.0; };
    CHECK_THROWS_AS(assemble_wavefunction(ParticleConfig({1.0, 1.0, 0.0}), 0.0,
                                          radial, angular, Statistics::Bose),
                    std::invalid_argument);
}
