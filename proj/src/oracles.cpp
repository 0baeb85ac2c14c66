// Brute-force reference solvers. The two finite-difference oracles build the
// symmetric second-difference pencil directly from the differential operator
// and Richardson-extrapolate eigenvalues in h^2; the Bessel oracle runs
// adaptive tanh-sinh quadrature on the defining integral; the overlap oracle
// integrates on fixed Gauss-Legendre panels under a decaying window that is
// then extrapolated away. None of them touch the closed-form evaluation
// paths they exist to check.
#include "dsi/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dsi/numerics.hpp"

namespace dsi {
namespace {

constexpr double pi_d = std::numbers::pi;
constexpr double wedge = pi_d / 3.0;

void validate_grid(const GridSpec& grid) {
    if (grid.points < 16) {
        throw std::invalid_argument("grid needs at least 16 points");
    }
    if (grid.refinement_levels < 2) {
        throw std::invalid_argument("Richardson needs at least 2 refinement levels");
    }
}

// Richardson-extrapolate the k lowest pencil eigenvalues across doubling
// levels: per index, Neville in h^2 through the per-level values.
std::vector<double> extrapolate_levels(const std::vector<double>& hs2,
                                       const std::vector<std::vector<double>>& levels,
                                       int count) {
    std::vector<double> out(count);
    std::vector<double> y(levels.size());
    for (int k = 0; k < count; ++k) {
        for (std::size_t l = 0; l < levels.size(); ++l) y[l] = levels[l][k];
        out[k] = extrapolate_to_zero(hs2, y);
    }
    return out;
}

}  // namespace

std::vector<double> fd_angular_eigenvalues(const CouplingPair& c,
                                           const GridSpec& grid, int count) {
    validate_grid(grid);
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    if (std::abs(grid.lower) > 1e-12 || std::abs(grid.upper - wedge) > 1e-12) {
        throw std::invalid_argument("angular grid must span (0, pi/3)");
    }
    for (const double g : {c.g1, c.g2}) {
        if (std::isnan(g) || g == -std::numeric_limits<double>::infinity()) {
            throw std::invalid_argument("coupling must be a number or +inf");
        }
    }
    // Dirichlet ends (g = 0) drop their boundary node; Robin/Neumann ends
    // keep it, eliminating the ghost value through the one-sided condition
    // +Theta' - Theta/g1 = 0 (resp. -Theta' - Theta/g2 = 0) with a central
    // difference, which halves the boundary row's mass.
    const bool dir1 = c.g1 == 0.0;
    const bool dir2 = c.g2 == 0.0;
    const double c1 = dir1 || std::isinf(c.g1) ? 0.0 : 1.0 / c.g1;
    const double c2 = dir2 || std::isinf(c.g2) ? 0.0 : 1.0 / c.g2;

    std::vector<double> hs2;
    std::vector<std::vector<double>> levels;
    for (int lev = 0; lev < grid.refinement_levels; ++lev) {
        const int n_int = grid.points << lev;
        const double h = wedge / n_int;
        const int lo = dir1 ? 1 : 0;
        const int hi = dir2 ? n_int - 1 : n_int;
        const int m = hi - lo + 1;
        if (m < count) {
            throw std::invalid_argument("grid too coarse for the requested count");
        }
        const double inv_h2 = 1.0 / (h * h);
        std::vector<double> diag(m, 2.0 * inv_h2);
        std::vector<double> off(m - 1, -inv_h2);
        std::vector<double> mass(m, 1.0);
        if (!dir1) {
            diag.front() = (1.0 + h * c1) * inv_h2;
            mass.front() = 0.5;
        }
        if (!dir2) {
            diag.back() = (1.0 + h * c2) * inv_h2;
            mass.back() = 0.5;
        }
        const TridiagPencil pencil(std::move(diag), std::move(off), std::move(mass));
        levels.push_back(pencil.lowest(count));
        hs2.push_back(h * h);
    }
    return extrapolate_levels(hs2, levels, count);
}

std::vector<double> fd_inverse_square_spectrum(double strength, double r_min,
                                               double r_max, const GridSpec& grid,
                                               int count) {
    validate_grid(grid);
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    if (!std::isfinite(strength)) throw std::invalid_argument("strength must be finite");
    if (!(r_min > 0.0 && r_max > r_min && std::isfinite(r_max))) {
        throw std::invalid_argument("need 0 < r_min < r_max");
    }
    // substitute u = sqrt(r) w(log r): -w'' + (1/4 - strength) w = E e^{2y} w
    // on a uniform y grid with Dirichlet walls, so the pencil mass e^{2y}
    // carries the whole dynamic range and the tower keeps fixed
    // points-per-level across decades
    const double y0 = std::log(r_min);
    const double span = std::log(r_max) - y0;
    const double shift = 0.25 - strength;

    std::vector<double> hs2;
    std::vector<std::vector<double>> levels;
    for (int lev = 0; lev < grid.refinement_levels; ++lev) {
        const int n_int = grid.points << lev;
        const double h = span / n_int;
        const int m = n_int - 1;
        if (m < count) {
            throw std::invalid_argument("grid too coarse for the requested count");
        }
        const double inv_h2 = 1.0 / (h * h);
        std::vector<double> diag(m, 2.0 * inv_h2 + shift);
        std::vector<double> off(m - 1, -inv_h2);
        std::vector<double> mass(m);
        for (int j = 0; j < m; ++j) {
            mass[j] = std::exp(2.0 * (y0 + (j + 1) * h));
        }
        const TridiagPencil pencil(std::move(diag), std::move(off), std::move(mass));
        levels.push_back(pencil.lowest(count, 1e-12));
        hs2.push_back(h * h);
    }
    return extrapolate_levels(hs2, levels, count);
}

std::vector<double> fd_radial_spectrum(double nu, double r_min, double r_max,
                                       const GridSpec& grid, int count) {
    if (!(std::isfinite(nu) && nu > 0.0)) {
        throw std::invalid_argument("nu must be positive and finite");
    }
    std::vector<double> out =
        fd_inverse_square_spectrum(nu * nu + 0.25, r_min, r_max, grid, count);
    for (const double e : out) {
        if (!(e < 0.0)) {
            throw std::runtime_error(
                "window holds fewer bound levels than requested; widen r_min/r_max");
        }
    }
    return out;
}

QuadratureResult quadrature_bessel_k(double nu, double x) {
    if (!(std::isfinite(nu) && nu > 0.0)) {
        throw std::invalid_argument("nu must be positive and finite");
    }
    if (!(std::isfinite(x) && x > 0.0)) {
        throw std::invalid_argument("x must be positive and finite");
    }
    // For x well below nu the defining integrand cancels down to the
    // e^{-nu pi/2} scale of the result. Shifting the contour to
    // t + i theta with theta just under pi/2 removes the cancellation:
    // the vertical segment is purely imaginary (zero real part), and along
    // the horizontal leg the integrand is
    //   e^{-nu theta} e^{-x cos(theta) cosh t} cos(nu t - x sin(theta) sinh t),
    // whose magnitude already carries the small prefactor.
    const bool rotate = nu >= 2.0 && x < 2.0 * nu;
    const long double theta = rotate ? 0.5L * pi_d - 0.2L : 0.0L;
    const long double a = static_cast<long double>(x) * std::cos(theta);
    const long double b = static_cast<long double>(x) * std::sin(theta);
    const long double damp = std::exp(-static_cast<long double>(nu) * theta);
    const long double nu_l = static_cast<long double>(nu);
    const auto f = [&](long double t) -> long double {
        return damp * std::exp(-a * std::cosh(t)) *
               std::cos(nu_l * t - b * std::sinh(t));
    };
    // truncate where the decaying factor is e^{-48} below its t = 0 value
    const long double T = std::acosh(1.0L + 48.0L / a);
    const long double tail =
        damp * std::exp(-a * std::cosh(T)) / (a * std::sinh(T));

    boost::math::quadrature::tanh_sinh<long double> integrator(15);
    long double err = 0.0L, l1 = 0.0L;
    const long double value = integrator.integrate(f, 0.0L, T, 1e-15L, &err, &l1);
    // err is boost's absolute successive-level estimate; add the summation
    // floor (conditioning against the unsigned mass) and the analytic tail
    const long double eps = std::numeric_limits<long double>::epsilon();
    const long double estimate = err + tail + 32.0L * eps * (l1 + std::abs(value));
    if (!(estimate <= 1e-11L * std::abs(value))) {
        throw std::runtime_error(
            "quadrature cannot certify the requested accuracy at this (nu, x)");
    }
    return {static_cast<double>(value), static_cast<double>(estimate)};
}

double overlap_quadrature(const RadialEvaluator& f, const RadialEvaluator& g,
                          double r_max) {
    if (!f || !g) throw std::invalid_argument("evaluators must be callable");
    if (!(std::isfinite(r_max) && r_max > 0.0)) {
        throw std::invalid_argument("r_max must be positive and finite");
    }
    // log-spaced panels resolve the r -> 0 log-oscillation, linear panels
    // the outer region; the window e^{-eta r} makes oscillatory tails
    // summable and is removed by Neville extrapolation eta -> 0
    const double r_split = std::min(1.0, r_max);
    const double y_hi = std::log(r_split);
    const double y_lo = y_hi - 20.0;
    const int log_panels = 400;
    const int lin_panels =
        r_max > r_split ? static_cast<int>((r_max - r_split) / 0.25) + 1 : 0;

    // the conj(f) g product is window-independent: evaluate once on the
    // first pass, replay from the cache for the other windows (the panel
    // engine visits nodes in a fixed deterministic order)
    std::vector<std::complex<long double>> cache;
    bool filling = true;
    std::size_t cursor = 0;
    const auto product = [&](double r) -> std::complex<long double> {
        if (!filling) return cache[cursor++];
        const std::complex<double> v = std::conj(f(r)) * g(r);
        cache.emplace_back(v.real(), v.imag());
        return cache.back();
    };

    constexpr int n_windows = 5;
    std::vector<double> etas(n_windows), re_v(n_windows), im_v(n_windows);
    for (int j = 0; j < n_windows; ++j) {
        const double eta = (4.0 / r_max) * std::exp2(-j);
        cursor = 0;
        const auto h_log = [&](long double y) -> std::complex<long double> {
            const long double r = std::exp(y);
            const double rd = static_cast<double>(r);
            return product(rd) * r * std::exp(-static_cast<long double>(eta) * r);
        };
        const auto h_lin = [&](long double r) -> std::complex<long double> {
            const double rd = static_cast<double>(r);
            return product(rd) * std::exp(-static_cast<long double>(eta) * r);
        };
        std::complex<long double> acc = gl_composite(h_log, y_lo, y_hi, log_panels, 24);
        if (lin_panels > 0) {
            acc += gl_composite(h_lin, static_cast<long double>(r_split),
                                static_cast<long double>(r_max), lin_panels, 24);
        }
        filling = false;
        etas[j] = eta;
        re_v[j] = static_cast<double>(acc.real());
        im_v[j] = static_cast<double>(acc.imag());
    }
    const double re = extrapolate_to_zero(etas, re_v);
    const double im = extrapolate_to_zero(etas, im_v);
    return std::hypot(re, im);
}

}  // namespace dsi
